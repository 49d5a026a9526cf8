// Exact arithmetic kernel: nearest-integer distance, lcm tables, continued
// fractions of rationals and quadratic surds, base-b digit streams.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "uniap/interval.hpp"
#include "uniap/numbers.hpp"
#include "uniap/surd.hpp"

namespace uniap::numkit {

// ||x||: distance to the nearest integer, exact, in [0, 1/2].
inline Rat dist_to_nearest_int(const Rat& x) {
    const Rat f = x - Rat(floor_rat(x));
    const Rat g = Rat(1) - f;
    return f <= g ? f : g;
}

// lcm(1, ..., b-1).
inline BigInt lcm_upto(long b) {
    if (b < 2) throw std::invalid_argument("lcm_upto: b < 2");
    BigInt l = 1;
    for (long k = 2; k <= b - 1; ++k) l = lcm(l, BigInt(k));
    return l;
}

inline BigInt surd_floor(const Surd& x) {
    Rat lo, hi;
    x.bounds(16, lo, hi);
    BigInt f = floor_rat(lo);
    while (Surd(Rat(f + 1)) <= x) ++f;
    while (Surd(Rat(f)) > x) --f;
    return f;
}

struct CFExpansion {
    std::vector<BigInt> quotients;
    std::vector<std::pair<BigInt, BigInt>> convergents;  // (numerator, denominator)
    bool exact = false;                                  // finite expansion fully produced
};

namespace detail {
inline void push_convergent(CFExpansion& cf, const BigInt& a) {
    // p_k = a_k p_{k-1} + p_{k-2}, seeds p_{-1} = 1, p_{-2} = 0
    // q_k = a_k q_{k-1} + q_{k-2}, seeds q_{-1} = 0, q_{-2} = 1
    const std::size_t k = cf.quotients.size();
    cf.quotients.push_back(a);
    const BigInt pm1 = k >= 1 ? cf.convergents[k - 1].first : BigInt(1);
    const BigInt pm2 = k >= 2 ? cf.convergents[k - 2].first : BigInt(k == 1 ? 1 : 0);
    const BigInt qm1 = k >= 1 ? cf.convergents[k - 1].second : BigInt(0);
    const BigInt qm2 = k >= 2 ? cf.convergents[k - 2].second : BigInt(k == 1 ? 0 : 1);
    cf.convergents.emplace_back(a * pm1 + pm2, a * qm1 + qm2);
}
}  // namespace detail

inline CFExpansion cf_expand(const Rat& x, std::size_t depth) {
    if (depth == 0) throw std::invalid_argument("cf_expand: depth = 0");
    CFExpansion cf;
    Rat t = x;
    while (cf.quotients.size() < depth) {
        const BigInt a = floor_rat(t);
        detail::push_convergent(cf, a);
        const Rat frac = t - Rat(a);
        if (frac == 0) {
            cf.exact = true;
            break;
        }
        t = Rat(1) / frac;
    }
    return cf;
}

// Continued fraction of an exact quadratic irrational; no floating point,
// every partial quotient comes from exact sign tests.
inline CFExpansion cf_expand(const Surd& x, std::size_t depth) {
    if (depth == 0) throw std::invalid_argument("cf_expand: depth = 0");
    if (x.is_rational())
        throw std::invalid_argument("cf_expand: radicand is a perfect square, use the rational overload");
    CFExpansion cf;
    Surd t = x;
    while (cf.quotients.size() < depth) {
        const BigInt a = surd_floor(t);
        detail::push_convergent(cf, a);
        t = Surd(Rat(1)) / (t - Surd(Rat(a)));
    }
    return cf;
}

struct UvCheckResult {
    bool reduced = false;
    BigInt numerator;
    BigInt denominator;
};

// Evaluates u/v + 1/(v^(m-1) L)^M = (u L^M v^((m-1)M-1) + 1) / (L^M v^((m-1)M))
// and reports whether the result is already in lowest terms.
inline UvCheckResult prop_uv_check(const BigInt& u, const BigInt& v, const BigInt& L, long M,
                                   long m) {
    if (v < 1 || L < 1 || M < 2 || m < 2) throw std::invalid_argument("prop_uv_check: parameter range");
    if (gcd(u, v) != 1) throw std::invalid_argument("prop_uv_check: gcd(u, v) != 1");
    const unsigned long uM = static_cast<unsigned long>(M);
    const unsigned long e = static_cast<unsigned long>((m - 1) * M);
    UvCheckResult r;
    r.numerator = u * ipow(L, uM) * ipow(v, e - 1) + 1;
    r.denominator = ipow(L, uM) * ipow(v, e);
    r.reduced = gcd(r.numerator, r.denominator) == 1;
    return r;
}

// Finite base-b digit window: position j (starting at `offset`) carries
// weight b^-j.
struct DigitStream {
    long base = 2;
    long offset = 1;
    std::vector<int> digits;

    Rat value() const {
        Rat v(0);
        Rat w = rat_pow(Rat(base), -offset);
        for (int d : digits) {
            v += Rat(d) * w;
            w /= base;
        }
        return v;
    }
};

// First `count` base-b digits of the fractional part of x >= 0.
inline DigitStream digits_of(const Rat& x, long base, std::size_t count) {
    if (base < 2) throw std::invalid_argument("digits_of: base < 2");
    if (x < 0) throw std::invalid_argument("digits_of: negative");
    DigitStream s;
    s.base = base;
    s.offset = 1;
    s.digits.reserve(count);
    BigInt n = num(x) % den(x);
    const BigInt& d = den(x);
    for (std::size_t i = 0; i < count; ++i) {
        n *= base;
        BigInt dig = n / d;
        n -= dig * d;
        s.digits.push_back(static_cast<int>(dig.get_si()));
    }
    return s;
}

}  // namespace uniap::numkit
