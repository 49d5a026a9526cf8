// Exact elements of a real quadratic field: a + b*sqrt(d).
//
// All construction/verification paths that involve irrational exponents or
// coefficients (1/sqrt(2), golden ratio, optimized gamma_2, ...) go through
// this type so that sign tests and comparisons never touch floating point.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "uniap/numbers.hpp"

namespace uniap {

class Surd {
  public:
    Surd() : a_(0), b_(0), d_(0) {}
    Surd(Rat rational) : a_(std::move(rational)), b_(0), d_(0) {}  // NOLINT(implicit)
    Surd(long v) : a_(Rat(v)), b_(0), d_(0) {}                     // NOLINT(implicit)

    // a + b*sqrt(d); d >= 0. Perfect-square radicands collapse to rationals.
    Surd(Rat a, Rat b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        if (d_ < 0) throw std::invalid_argument("Surd: negative radicand");
        normalize();
    }

    static Surd sqrt_of(BigInt d) { return Surd(Rat(0), Rat(1), std::move(d)); }

    const Rat& rational_part() const { return a_; }
    const Rat& root_coeff() const { return b_; }
    const BigInt& radicand() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    const Rat& as_rat() const {
        if (!is_rational()) throw std::domain_error("Surd: not rational");
        return a_;
    }

    int sign() const {
        if (b_ == 0) return sgn(a_);
        if (a_ == 0) return sgn(b_);
        const int sa = sgn(a_), sb = sgn(b_);
        if (sa == sb) return sa;
        // a and b*sqrt(d) have opposite signs: compare a^2 with b^2*d.
        // Equality is impossible (d is not a perfect square).
        const int c = cmp(a_ * a_, b_ * b_ * Rat(d_));
        return c > 0 ? sa : sb;
    }

    Surd operator-() const { return Surd(-a_, -b_, d_, nocheck{}); }

    friend Surd operator+(const Surd& x, const Surd& y) {
        const BigInt d = merge_radicand(x, y);
        return Surd(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
    friend Surd operator*(const Surd& x, const Surd& y) {
        const BigInt d = merge_radicand(x, y);
        return Surd(x.a_ * y.a_ + x.b_ * y.b_ * Rat(d), x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend Surd operator/(const Surd& x, const Surd& y) {
        if (y.sign() == 0) throw std::domain_error("Surd: division by zero");
        const BigInt d = merge_radicand(x, y);
        // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
        const Rat n = y.a_ * y.a_ - y.b_ * y.b_ * Rat(d);
        const Surd conj(y.a_ / n, -y.b_ / n, d);
        return x * conj;
    }

    friend bool operator==(const Surd& x, const Surd& y) { return (x - y).sign() == 0; }
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
    friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

    // Rational bounds lo <= value <= hi with hi - lo <= 2^-prec_bits.
    // Endpoints are exact (dyadic) and verified by integer comparisons.
    void bounds(long prec_bits, Rat& lo, Rat& hi) const;

    double to_double() const;

    std::string str() const {
        if (is_rational()) return a_.get_str();
        return a_.get_str() + " + " + b_.get_str() + "*sqrt(" + d_.get_str() + ")";
    }

  private:
    struct nocheck {};
    Surd(Rat a, Rat b, BigInt d, nocheck) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

    void normalize() {
        if (b_ == 0) {
            d_ = 0;
            return;
        }
        BigInt root;
        if (is_perfect_kth_power(d_, 2, root)) {
            a_ += b_ * Rat(root);
            b_ = 0;
            d_ = 0;
        }
    }

    static BigInt merge_radicand(const Surd& x, const Surd& y) {
        if (x.b_ == 0) return y.d_;
        if (y.b_ == 0) return x.d_;
        if (x.d_ != y.d_)
            throw std::invalid_argument("Surd: mixed radicands " + x.d_.get_str() + " vs " +
                                        y.d_.get_str());
        return x.d_;
    }

    Rat a_, b_;
    BigInt d_;
};

// Dyadic enclosure of sqrt(d) of width 2^-prec: s/2^p <= sqrt(d) <= (s+1)/2^p.
inline void sqrt_bounds(const BigInt& d, long prec_bits, Rat& lo, Rat& hi) {
    const BigInt scale = ipow(BigInt(2), static_cast<unsigned long>(prec_bits));
    const BigInt s = isqrt_floor(d * scale * scale);
    lo = make_rat(s, scale);
    hi = make_rat(s + 1, scale);
    if (lo * lo == Rat(d)) hi = lo;  // d was a perfect square (b_==0 path keeps this unused)
}

inline void Surd::bounds(long prec_bits, Rat& lo, Rat& hi) const {
    if (b_ == 0) {
        lo = hi = a_;
        return;
    }
    // pad so that |b| * width(sqrt enclosure) <= 2^-prec_bits
    long pad = 1;
    Rat babs = rat_abs(b_);
    while (Rat(ipow(BigInt(2), static_cast<unsigned long>(pad))) < babs) ++pad;
    Rat rlo, rhi;
    sqrt_bounds(d_, prec_bits + pad, rlo, rhi);
    if (b_ > 0) {
        lo = a_ + b_ * rlo;
        hi = a_ + b_ * rhi;
    } else {
        lo = a_ + b_ * rhi;
        hi = a_ + b_ * rlo;
    }
}

inline double Surd::to_double() const {
    Rat lo, hi;
    bounds(64, lo, hi);
    return Rat((lo + hi) / 2).get_d();
}

}  // namespace uniap
