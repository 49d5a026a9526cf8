// Exact integer/rational base layer on top of GMP.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uniap {

using BigInt = mpz_class;
using Rat = mpq_class;

// Thrown when an adaptive enclosure comparison exhausts its bit budget
// without separating the operands.
struct Undecidable : std::runtime_error {
    explicit Undecidable(const std::string& what) : std::runtime_error(what) {}
};

inline Rat make_rat(BigInt num, BigInt den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline const BigInt& num(const Rat& q) { return q.get_num(); }
inline const BigInt& den(const Rat& q) { return q.get_den(); }

inline BigInt ipow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// base^e for integer e (negative allowed, base != 0).
inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw std::domain_error("rat_pow: 0 to negative power");
    const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r = make_rat(ipow(num(base), a), ipow(den(base), a));
    if (e < 0) r = make_rat(den(r) * (sgn(num(r)) < 0 ? -1 : 1), abs(num(r)));
    return r;
}

inline BigInt isqrt_floor(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt_floor: negative");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline BigInt iroot_floor(const BigInt& n, unsigned long k) {
    if (k == 0) throw std::domain_error("iroot_floor: k = 0");
    if (n < 0) throw std::domain_error("iroot_floor: negative");
    BigInt r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline bool is_perfect_square(const BigInt& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// True iff n = r^k for some integer r >= 0; r returned through root.
inline bool is_perfect_kth_power(const BigInt& n, unsigned long k, BigInt& root) {
    if (n < 0) return false;
    root = iroot_floor(n, k);
    return ipow(root, k) == n;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }

inline BigInt ceil_rat(const Rat& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), num(q).get_mpz_t(), den(q).get_mpz_t());
    return r;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline double to_double(const Rat& q) { return q.get_d(); }

// Parses "p/q", "123", "-4", "0.9", "1.25e-3"-free decimal forms.
inline Rat parse_rat(std::string_view s) {
    auto bad = [&] { throw std::invalid_argument("parse_rat: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    std::string str(s);
    const auto slash = str.find('/');
    if (slash != std::string::npos) {
        BigInt n, d;
        if (n.set_str(str.substr(0, slash), 10) != 0) bad();
        if (d.set_str(str.substr(slash + 1), 10) != 0) bad();
        if (d == 0) bad();
        return make_rat(n, d);
    }
    const auto dot = str.find('.');
    if (dot != std::string::npos) {
        std::string digits = str.substr(0, dot) + str.substr(dot + 1);
        const std::size_t frac_len = str.size() - dot - 1;
        if (frac_len == 0 || digits.empty() || digits == "-" || digits == "+") bad();
        BigInt n;
        if (n.set_str(digits, 10) != 0) bad();
        return make_rat(n, ipow(BigInt(10), frac_len));
    }
    BigInt n;
    if (n.set_str(str, 10) != 0) bad();
    return Rat(n);
}

// Fixed-point decimal with `digits` fractional digits, rounding half away
// from zero. Deterministic; used for CSV/JSON report fields.
inline std::string to_decimal_string(const Rat& q, int digits) {
    if (digits < 0) throw std::invalid_argument("to_decimal_string: digits < 0");
    const bool neg = q < 0;
    const Rat a = rat_abs(q);
    const BigInt scale = ipow(BigInt(10), static_cast<unsigned long>(digits));
    // round(a * scale) with ties away from zero
    BigInt scaled = floor_div(2 * num(a) * scale + den(a), 2 * den(a));
    BigInt ipart = scaled / scale;
    BigInt fpart = scaled % scale;
    std::string frac = fpart.get_str();
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    std::string out = (neg && scaled != 0 ? "-" : "") + ipart.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

}  // namespace uniap
