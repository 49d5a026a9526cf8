// ScalarExpr: exact positive scalar of the form factor * base^exp with a
// surd factor, rational base and surd exponent. Keeps compounded constants
// like c*(m+1)^(1/2+1/(2m)) or c*b^(-1/m) exact until a final enclosure.
#pragma once

#include <optional>
#include <string>

#include "uniap/interval.hpp"
#include "uniap/numbers.hpp"
#include "uniap/surd.hpp"

namespace uniap {

struct ScalarExpr {
    Surd factor = Surd(Rat(1));
    Rat pow_base = Rat(1);
    Surd pow_exp = Surd(Rat(0));

    static ScalarExpr rational(Rat v) {
        ScalarExpr s;
        s.factor = Surd(std::move(v));
        return s;
    }
    static ScalarExpr surd(Surd v) {
        ScalarExpr s;
        s.factor = std::move(v);
        return s;
    }
    static ScalarExpr power(Rat base, Surd exp, Surd factor = Surd(Rat(1))) {
        if (base <= 0) throw std::invalid_argument("ScalarExpr: base <= 0");
        ScalarExpr s;
        s.factor = std::move(factor);
        s.pow_base = std::move(base);
        s.pow_exp = std::move(exp);
        return s;
    }

    bool has_power() const { return !(pow_base == 1) && !(pow_exp == Surd(Rat(0))); }

    int sign() const { return factor.sign(); }

    // Exact rational value when one exists.
    std::optional<Rat> as_rational() const {
        if (!factor.is_rational()) return std::nullopt;
        if (!has_power()) return factor.as_rat();
        if (!pow_exp.is_rational()) return std::nullopt;
        const Rat& e = pow_exp.as_rat();
        const Rat v = rat_pow(pow_base, num(e).get_si());
        BigInt rn, rd;
        const unsigned long q = den(e).get_ui();
        if (!is_perfect_kth_power(num(v), q, rn) || !is_perfect_kth_power(den(v), q, rd))
            return std::nullopt;
        return factor.as_rat() * make_rat(rn, rd);
    }

    Ival enclose(long prec_bits) const {
        const Rat target = make_rat(1, ipow(BigInt(2), static_cast<unsigned long>(prec_bits)));
        for (long bits = prec_bits + 4;; bits *= 2) {
            Ival v = ival_of(factor, bits);
            if (has_power()) v = v * pow_enclosure(pow_base, pow_exp, bits);
            if (v.width() <= target) return v;
            if (bits > (1L << 22)) throw Undecidable("ScalarExpr::enclose: precision runaway");
        }
    }

    ScalarExpr scaled(const Surd& s) const {
        ScalarExpr out = *this;
        out.factor = out.factor * s;
        return out;
    }

    std::string str() const {
        std::string s = factor.str();
        if (has_power())
            s += " * (" + pow_base.get_str() + ")^(" + pow_exp.str() + ")";
        return s;
    }
};

// -1/0/+1 comparison. Exact where an algebraic route exists, otherwise
// adaptive enclosures (strict separation or Undecidable).
inline int scalar_compare(const ScalarExpr& x, const ScalarExpr& y, long max_bits = 4096) {
    const auto rx = x.as_rational();
    const auto ry = y.as_rational();
    if (rx && ry) return cmp(*rx, *ry);
    // same power part and comparable surd factors
    if (x.pow_base == y.pow_base && x.pow_exp == y.pow_exp && x.pow_base > 0) {
        const bool compatible = x.factor.is_rational() || y.factor.is_rational() ||
                                x.factor.radicand() == y.factor.radicand();
        if (compatible) return (x.factor - y.factor).sign();
    }
    return compare_adaptive([&](long b) { return x.enclose(b); },
                            [&](long b) { return y.enclose(b); }, 64, max_bits);
}

}  // namespace uniap
