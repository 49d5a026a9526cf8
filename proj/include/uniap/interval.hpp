// Rational-endpoint enclosures and the adaptive comparison engine.
//
// Every irrational quantity in the toolkit is handled as a pair of exact
// rational bounds that can be refined on demand. Comparisons refine until
// strictly decided or a bit budget is exhausted (then they throw rather
// than guess).
#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "uniap/numbers.hpp"
#include "uniap/surd.hpp"

namespace uniap {

struct Ival {
    Rat lo, hi;

    Ival() : lo(0), hi(0) {}
    explicit Ival(Rat point) : lo(point), hi(std::move(point)) {}
    Ival(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("Ival: lo > hi");
    }

    Rat width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    Rat mid() const { return (lo + hi) / 2; }

    friend Ival operator+(const Ival& x, const Ival& y) { return {x.lo + y.lo, x.hi + y.hi}; }
    friend Ival operator-(const Ival& x, const Ival& y) { return {x.lo - y.hi, x.hi - y.lo}; }
    friend Ival operator*(const Ival& x, const Ival& y) {
        Rat a = x.lo * y.lo, b = x.lo * y.hi, c = x.hi * y.lo, d = x.hi * y.hi;
        Rat lo = a, hi = a;
        for (const Rat& v : {b, c, d}) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        return {lo, hi};
    }
    friend Ival operator*(const Rat& s, const Ival& x) { return Ival(s) * x; }
    friend Ival operator/(const Ival& x, const Ival& y) {
        if (y.lo <= 0 && y.hi >= 0) throw std::domain_error("Ival: division by zero-straddling");
        return x * Ival(Rat(1) / y.hi, Rat(1) / y.lo);
    }

    Ival widened(const Rat& slack) const { return {lo - slack, hi + slack}; }
};

inline Ival ival_of(const Surd& s, long prec_bits) {
    Rat lo, hi;
    s.bounds(prec_bits, lo, hi);
    return {lo, hi};
}

// Enclosure of x^(1/k) for x >= 0, absolute width <= 2^-prec_bits.
// Exact (point interval) when x is a perfect k-th power of a rational.
inline Ival root_enclosure(const Rat& x, unsigned long k, long prec_bits) {
    if (x < 0) throw std::domain_error("root_enclosure: negative radicand");
    if (k == 0) throw std::domain_error("root_enclosure: k = 0");
    if (x == 0) return Ival(Rat(0));
    BigInt rn, rd;
    if (is_perfect_kth_power(num(x), k, rn) && is_perfect_kth_power(den(x), k, rd))
        return Ival(make_rat(rn, rd));
    const BigInt scale = ipow(BigInt(2), static_cast<unsigned long>(prec_bits));
    // R with R^k * den <= num * scale^k < (R+1)^k * den
    const BigInt target = num(x) * ipow(scale, k);
    BigInt r = iroot_floor(target / den(x), k);
    while (ipow(r + 1, k) * den(x) <= target) ++r;
    while (r > 0 && ipow(r, k) * den(x) > target) --r;
    return {make_rat(r, scale), make_rat(r + 1, scale)};
}

// Natural log enclosure, declared early for the pow route below.
inline Ival log_enclosure(const Rat& x, long prec_bits);

// Enclosure of e^x for rational x, width <= 2^-prec_bits (absolute).
// Argument reduction by ln 2, then the Taylor series with an exact
// geometric tail bound.
inline Ival exp_enclosure(const Rat& x, long prec_bits) {
    const long bits = prec_bits + 16;
    const Rat eps = make_rat(1, ipow(BigInt(2), static_cast<unsigned long>(bits)));

    // m = nearest integer to x / ln2 (any nearby integer works)
    const Ival ln2 = log_enclosure(Rat(2), 64);
    const BigInt m = floor_rat(Rat(x / ln2.mid() + Rat(1, 2)));
    const long mi = m.get_si();

    // error in ln2 is amplified by |m|: pad by its bit length
    const long pad = 8 + 2 * static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
    const Ival ln2p = log_enclosure(Rat(2), bits + pad);
    const Ival r = Ival(x) - Rat(m) * ln2p;  // |r| <= 0.7 or so

    // series at a rational endpoint, rounded outward
    auto series = [&](const Rat& a, bool upper) {
        Rat term(1), sum(1);
        unsigned long k = 1;
        while (true) {
            term = term * a / Rat(k);
            sum += term;
            const Rat ta = rat_abs(term);
            // |tail| <= |term| * |a| / (k+1) / (1 - |a|/(k+2))
            const Rat aa = rat_abs(a);
            const Rat tail = ta * aa / (Rat(k + 1) * (Rat(1) - aa / Rat(k + 2)));
            if (tail < eps) return upper ? Rat(sum + tail) : Rat(sum - tail);
            ++k;
        }
    };
    const Rat lo = series(r.lo, false);
    const Rat hi = series(r.hi, true);
    const Rat p2 = rat_pow(Rat(2), mi);
    return {lo * p2, hi * p2};
}

// Enclosure of base^e for rational base > 0 and rational exponent.
// Exact when base^e is rational and the exponent denominator is small;
// otherwise a rigorous exp(e * ln base) enclosure.
inline Ival pow_enclosure(const Rat& base, const Rat& e, long prec_bits) {
    if (base <= 0) throw std::domain_error("pow_enclosure: base <= 0");
    if (base == 1 || e == 0) return Ival(Rat(1));
    if (den(e) == 1 && rat_abs(e) < 100000) return Ival(rat_pow(base, num(e).get_si()));
    if (den(e) <= 64 && rat_abs(Rat(num(e))) < 100000) {
        const long p = num(e).get_si();
        const unsigned long q = den(e).get_ui();
        return root_enclosure(rat_pow(base, p), q, prec_bits);
    }
    for (long bits = prec_bits + 8;; bits *= 2) {
        const Ival ln_b = log_enclosure(base, bits);
        const Ival arg = Rat(e) * ln_b;
        const Ival out(exp_enclosure(arg.lo, bits).lo, exp_enclosure(arg.hi, bits).hi);
        if (out.width() <= make_rat(1, ipow(BigInt(2), static_cast<unsigned long>(prec_bits))))
            return out;
        if (bits > (1L << 20)) throw Undecidable("pow_enclosure: precision runaway");
    }
}

// Enclosure of base^e for surd exponent, width <= 2^-prec_bits.
inline Ival pow_enclosure(const Rat& base, const Surd& e, long prec_bits) {
    if (base <= 0) throw std::domain_error("pow_enclosure: base <= 0");
    if (e.is_rational()) return pow_enclosure(base, e.as_rat(), prec_bits);
    if (base == 1) return Ival(Rat(1));
    const Rat target = make_rat(1, ipow(BigInt(2), static_cast<unsigned long>(prec_bits)));
    for (long bits = prec_bits + 8;; bits *= 2) {
        Rat elo, ehi;
        e.bounds(bits, elo, ehi);
        const Ival ln_b = log_enclosure(base, bits);
        const Ival arg = Ival(elo, ehi) * ln_b;
        const Ival out(exp_enclosure(arg.lo, bits).lo, exp_enclosure(arg.hi, bits).hi);
        if (out.width() <= target) return out;
        if (bits > (1L << 20)) throw Undecidable("pow_enclosure: precision runaway");
    }
}

// Natural log enclosure for rational x > 0, width <= 2^-prec_bits.
// Argument reduction to [3/4, 3/2] plus the atanh series with an exact
// geometric tail bound.
inline Ival log_enclosure(const Rat& x, long prec_bits) {
    if (x <= 0) throw std::domain_error("log_enclosure: x <= 0");
    if (x == 1) return Ival(Rat(0));

    // 2*atanh(z) with rigorous tail, for |z| < 1/2.
    auto atanh2 = [](const Rat& z, long bits) {
        const Rat z2 = z * z;
        Rat term = z;  // z^(2k+1)
        Rat sum = 0;
        const Rat eps = make_rat(1, ipow(BigInt(2), static_cast<unsigned long>(bits)));
        unsigned long k = 0;
        while (true) {
            sum += term / Rat(2 * k + 1);
            term *= z2;
            // tail <= |term|/(2k+3) * 1/(1-z^2)
            const Rat tail = rat_abs(term) / (Rat(2 * k + 3) * (Rat(1) - z2));
            if (tail < eps) {
                Ival t = z >= 0 ? Ival(sum, sum + tail) : Ival(sum - tail, sum);
                return Ival(2 * t.lo, 2 * t.hi);
            }
            ++k;
        }
    };

    const long bits = prec_bits + 8;
    // x = 2^e * y with y in [3/4, 3/2)
    long e = 0;
    Rat y = x;
    while (y >= Rat(3, 2)) {
        y /= 2;
        ++e;
    }
    while (y < Rat(3, 4)) {
        y *= 2;
        --e;
    }
    Ival ln_y = atanh2((y - 1) / (y + 1), bits);
    if (e == 0) return ln_y;
    Ival ln2 = atanh2(Rat(1, 3), bits);
    return ln_y + Rat(e) * ln2;
}

// Adaptive comparison of two refinable quantities. Returns -1 or +1 once
// the refinements separate; throws Undecidable at the bit budget. Callers
// that can hit genuine equality must decide it algebraically first.
inline int compare_adaptive(const std::function<Ival(long)>& f, const std::function<Ival(long)>& g,
                            long start_bits = 64, long max_bits = 4096) {
    for (long bits = start_bits; bits <= max_bits; bits *= 2) {
        const Ival a = f(bits);
        const Ival b = g(bits);
        if (a.hi < b.lo) return -1;
        if (a.lo > b.hi) return +1;
        if (a.is_point() && b.is_point()) return cmp(a.lo, b.lo);
    }
    throw Undecidable("compare_adaptive: bit budget exhausted");
}

}  // namespace uniap
