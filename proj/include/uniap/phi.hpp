// Approximating functions Phi and their decay-property certificates, plus
// the two Diophantine pair solvers used by the Cantor-set constructions.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "uniap/interval.hpp"
#include "uniap/numbers.hpp"
#include "uniap/numkit.hpp"
#include "uniap/scalar.hpp"
#include "uniap/surd.hpp"

namespace uniap::phi {

// Phi(t) = coeff * t^-tau (power family), or a finite table of exact values.
struct ApproxFn {
    enum class Family { power, tabulated };

    Family family = Family::power;
    ScalarExpr coeff = ScalarExpr::rational(Rat(1));
    Surd tau = Surd(Rat(1));
    long t0 = 1;

    std::map<long, Rat> table;
    bool table_step_hold = false;  // value at t = value at largest tabulated t' <= t

    static ApproxFn power(ScalarExpr c, Surd tau_, long t0_ = 1) {
        ApproxFn f;
        f.family = Family::power;
        f.coeff = std::move(c);
        f.tau = std::move(tau_);
        f.t0 = t0_;
        if (f.coeff.sign() <= 0) throw std::invalid_argument("ApproxFn: coefficient <= 0");
        if (f.tau.sign() <= 0) throw std::invalid_argument("ApproxFn: tau <= 0");
        return f;
    }
    static ApproxFn power(Rat c, Surd tau_, long t0_ = 1) {
        return power(ScalarExpr::rational(std::move(c)), std::move(tau_), t0_);
    }
    static ApproxFn tabulated(std::map<long, Rat> values, bool step_hold = false) {
        ApproxFn f;
        f.family = Family::tabulated;
        f.table = std::move(values);
        f.table_step_hold = step_hold;
        if (f.table.empty()) throw std::invalid_argument("ApproxFn: empty table");
        f.t0 = f.table.begin()->first;
        return f;
    }

    std::string descriptor() const {
        std::ostringstream os;
        if (family == Family::power) {
            os << "power{c=" << coeff.str() << ",tau=" << tau.str() << ",t0=" << t0 << "}";
        } else {
            os << "tabulated{n=" << table.size() << ",hold=" << table_step_hold;
            for (const auto& [t, v] : table) os << "," << t << ":" << v.get_str();
            os << "}";
        }
        return os.str();
    }
};

// Rigorous enclosure of Phi(t), width <= 2^-prec_bits; point interval
// whenever the value is rational.
inline Ival phi_eval(const ApproxFn& fn, const BigInt& t, long prec_bits = 64) {
    if (t < 1) throw std::invalid_argument("phi_eval: t < 1");
    if (prec_bits < 8) throw std::invalid_argument("phi_eval: precision < 8 bits");
    if (fn.family == ApproxFn::Family::tabulated) {
        const long key = t.get_si();
        auto it = fn.table.find(key);
        if (it == fn.table.end() && fn.table_step_hold) {
            it = fn.table.upper_bound(key);
            if (it == fn.table.begin()) it = fn.table.end();
            else --it;
        }
        if (it == fn.table.end()) throw std::out_of_range("phi_eval: t outside table");
        return Ival(it->second);
    }
    const Rat target = make_rat(1, ipow(BigInt(2), static_cast<unsigned long>(prec_bits)));
    for (long bits = prec_bits + 4;; bits *= 2) {
        const Ival c = fn.coeff.enclose(bits);
        const Ival p = pow_enclosure(Rat(t), -fn.tau, bits);
        const Ival v = c * p;
        if (v.width() <= target || (v.is_point())) return v;
        if (bits > (1L << 22)) throw Undecidable("phi_eval: precision runaway");
    }
}

inline Ival phi_eval(const ApproxFn& fn, long t, long prec_bits = 64) {
    return phi_eval(fn, BigInt(t), prec_bits);
}

// ---------------------------------------------------------------------------
// Property certificates

enum class Property { d1, d2, d3, d3prime, d4, Db };

struct PropertyParams {
    long m = 2;
    // d3prime
    long b = 0;
    ScalarExpr R = ScalarExpr::rational(Rat(1));
    // d4
    Surd gamma = Surd(Rat(0));
};

enum class Verdict { analytic_pass, analytic_fail, sampled_pass, not_decidable };

struct PropertyCertificate {
    Property property;
    Verdict verdict = Verdict::not_decidable;
    std::string detail;
    // witness data
    long t0 = 0;                     // threshold where the defining inequality is in force
    std::optional<Rat> eta;          // d4 witness constant
    std::pair<long, long> sampled_range{0, 0};

    bool passed() const { return verdict == Verdict::analytic_pass || verdict == Verdict::sampled_pass; }
};

namespace detail {

// Compare C * t^-tau against t^-rho (rho rational) exactly where possible.
// Returns sign of Phi(t) - t^-rho.
inline int cmp_phi_power(const ApproxFn& fn, const BigInt& t, const Rat& rho) {
    // Phi(t) < t^-rho  <=>  C < t^(tau - rho)
    const Surd expo = fn.tau - Surd(rho);
    const ScalarExpr lhs = fn.coeff;
    const ScalarExpr rhs = ScalarExpr::power(Rat(t), expo);
    return scalar_compare(lhs, rhs);
}

// Smallest integer t >= 1 such that pred(t) holds, assuming pred is
// monotone (false ... false true ... true). pred must hold eventually.
template <typename Pred>
long monotone_threshold(Pred pred) {
    long hi = 1;
    while (!pred(hi)) {
        hi *= 2;
        if (hi > (1L << 40)) throw Undecidable("monotone_threshold: no threshold below 2^40");
    }
    long lo = hi / 2;  // pred(lo) false (or lo==0)
    while (lo + 1 < hi) {
        const long mid = lo + (hi - lo) / 2;
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace detail

inline PropertyCertificate certify_uncached(const ApproxFn& fn, Property prop,
                                            const PropertyParams& params) {
    const long m = params.m;
    if (m < 2) throw std::invalid_argument("certify: m < 2");
    PropertyCertificate cert;
    cert.property = prop;

    if (fn.family == ApproxFn::Family::tabulated) {
        // Sampled verdicts over the stored range only, never analytic.
        cert.sampled_range = {fn.table.begin()->first, fn.table.rbegin()->first};
        switch (prop) {
            case Property::d1: {
                for (const auto& [t, v] : fn.table) {
                    // v < t^-1/m  <=>  v^m * t < 1
                    if (!(rat_pow(v, m) * Rat(t) < 1)) {
                        cert.verdict = Verdict::not_decidable;
                        cert.detail = "d1 inequality fails at tabulated t=" + std::to_string(t);
                        return cert;
                    }
                }
                cert.verdict = Verdict::sampled_pass;
                cert.t0 = cert.sampled_range.first;
                return cert;
            }
            case Property::d2: {
                // proxy: t^(1/(m-1)) Phi(t) strictly increasing along the table
                std::optional<std::pair<long, Rat>> prev;
                for (const auto& [t, v] : fn.table) {
                    if (prev) {
                        // v_prev * t_prev^(1/(m-1)) < v * t^(1/(m-1))
                        // <=> v_prev^(m-1) * t_prev < v^(m-1) * t
                        if (!(rat_pow(prev->second, m - 1) * Rat(prev->first) <
                              rat_pow(v, m - 1) * Rat(t))) {
                            cert.verdict = Verdict::not_decidable;
                            cert.detail = "divergence proxy not monotone at t=" + std::to_string(t);
                            return cert;
                        }
                    }
                    prev = {t, v};
                }
                cert.verdict = Verdict::sampled_pass;
                return cert;
            }
            case Property::d3:
            case Property::Db:
                cert.verdict = Verdict::not_decidable;
                cert.detail = "asymptotic property, not decidable from a finite table";
                return cert;
            case Property::d3prime: {
                const Ival r = params.R.enclose(96);
                for (const auto& [t, v] : fn.table) {
                    auto bt = fn.table.find(t * params.b);
                    if (bt == fn.table.end()) continue;
                    if (!(Ival(bt->second).lo > (r * Ival(v)).hi)) {
                        cert.verdict = Verdict::not_decidable;
                        cert.detail = "d3' inequality not confirmed at t=" + std::to_string(t);
                        return cert;
                    }
                }
                cert.verdict = Verdict::sampled_pass;
                return cert;
            }
            case Property::d4: {
                // eta = half of min Phi(t) t^gamma over the table
                Ival best(Rat(1));
                bool first = true;
                for (const auto& [t, v] : fn.table) {
                    const Ival g = Ival(v) * pow_enclosure(Rat(t), params.gamma, 96);
                    if (first || g.lo < best.lo) best = g, first = false;
                }
                cert.verdict = Verdict::sampled_pass;
                cert.eta = best.lo / 2;
                cert.t0 = cert.sampled_range.first;
                return cert;
            }
        }
    }

    // Power family: analytic verdicts.
    const auto coeff_lt_one = [&] { return scalar_compare(fn.coeff, ScalarExpr::rational(Rat(1))) < 0; };
    switch (prop) {
        case Property::d1: {
            const Surd inv_m(Rat(1, m));
            const int c = (fn.tau - inv_m).sign();
            if (c < 0) {
                cert.verdict = Verdict::analytic_fail;
                cert.detail = "tau < 1/m";
                return cert;
            }
            if (c == 0 && !coeff_lt_one()) {
                cert.verdict = Verdict::analytic_fail;
                cert.detail = "tau = 1/m requires coefficient < 1";
                return cert;
            }
            cert.verdict = Verdict::analytic_pass;
            cert.t0 = (c == 0) ? 1
                               : detail::monotone_threshold([&](long t) {
                                     return detail::cmp_phi_power(fn, BigInt(t), Rat(1, m)) < 0;
                                 });
            return cert;
        }
        case Property::d2: {
            const Surd inv(Rat(1, m - 1));
            if (!((fn.tau - inv).sign() < 0)) {
                cert.verdict = Verdict::analytic_fail;
                cert.detail = "tau >= 1/(m-1)";
                return cert;
            }
            cert.verdict = Verdict::analytic_pass;
            // witness: smallest H with Phi(Q) > Q^(-1/(m-1)) for all Q >= H
            cert.t0 = detail::monotone_threshold(
                [&](long t) { return detail::cmp_phi_power(fn, BigInt(t), Rat(1, m - 1)) > 0; });
            return cert;
        }
        case Property::d3:
            cert.verdict = Verdict::analytic_pass;
            cert.detail = "power family";
            return cert;
        case Property::d3prime: {
            if (params.b < 2) throw std::invalid_argument("certify d3': b < 2");
            // passes iff R <= b^-tau
            const ScalarExpr bound = ScalarExpr::power(Rat(params.b), -fn.tau);
            const int c = scalar_compare(params.R, bound);
            cert.verdict = c <= 0 ? Verdict::analytic_pass : Verdict::analytic_fail;
            if (c > 0) cert.detail = "R > b^-tau";
            cert.t0 = 1;
            return cert;
        }
        case Property::d4: {
            if (params.gamma.sign() <= 0) throw std::invalid_argument("certify d4: gamma <= 0");
            const int c = (fn.tau - params.gamma).sign();
            if (c > 0) {
                cert.verdict = Verdict::analytic_fail;
                cert.detail = "tau > gamma";
                return cert;
            }
            cert.verdict = Verdict::analytic_pass;
            cert.t0 = 1;
            // Phi(t) = C t^-tau >= C t^-gamma for t >= 1; any eta < C works
            const Ival cv = fn.coeff.enclose(96);
            cert.eta = cv.lo / 2;
            return cert;
        }
        case Property::Db: {
            cert.verdict = fn.tau.is_rational() ? Verdict::analytic_fail : Verdict::analytic_pass;
            if (fn.tau.is_rational()) cert.detail = "rational exponent";
            return cert;
        }
    }
    throw std::logic_error("certify: unreachable");
}

// Read-mostly certificate cache keyed by (descriptor, property, params).
inline PropertyCertificate certify(const ApproxFn& fn, Property prop, const PropertyParams& params) {
    static std::shared_mutex mtx;
    static std::unordered_map<std::string, PropertyCertificate> cache;
    std::ostringstream key;
    key << fn.descriptor() << "|" << static_cast<int>(prop) << "|m=" << params.m
        << "|b=" << params.b << "|R=" << params.R.str() << "|g=" << params.gamma.str();
    {
        std::shared_lock lk(mtx);
        auto it = cache.find(key.str());
        if (it != cache.end()) return it->second;
    }
    PropertyCertificate cert = certify_uncached(fn, prop, params);
    std::unique_lock lk(mtx);
    cache.emplace(key.str(), cert);
    return cert;
}

// Pointwise sampled re-check of a certificate's defining inequality;
// used by tests to confront analytic verdicts with data.
inline bool sampled_check(const ApproxFn& fn, Property prop, const PropertyParams& params, long t) {
    switch (prop) {
        case Property::d1:
            return detail::cmp_phi_power(fn, BigInt(t), Rat(1, params.m)) < 0;
        case Property::d2:
            return detail::cmp_phi_power(fn, BigInt(t), Rat(1, params.m - 1)) > 0;
        case Property::d3prime: {
            const Ival lhs = phi_eval(fn, BigInt(t) * params.b, 128);
            const Ival rhs = params.R.enclose(128) * phi_eval(fn, t, 128);
            return lhs.lo > rhs.hi;
        }
        case Property::d4: {
            if (!params.gamma.is_rational()) {
                const Ival lhs = phi_eval(fn, t, 128);
                const Ival rhs = pow_enclosure(Rat(t), -params.gamma, 128);
                return lhs.hi <= rhs.lo ? false : lhs.lo > (Ival(Rat(1, 2)) * rhs).hi;
            }
            return true;
        }
        default:
            return true;
    }
}

// ---------------------------------------------------------------------------
// Pair solvers

struct Pair {
    long A = 0;
    BigInt B;
};

// Largest B with b^B < c^m b^(mA), scanning A upward from A_min until B >= 1.
// Exact verification: b^B den(c)^m < num(c)^m b^(mA) <= b^(B+1) den(c)^m.
inline Pair solve_pair_lemuren(const Rat& c, long m, long b, long A_min = 1) {
    if (!(c > 0 && c <= 1)) throw std::invalid_argument("lemuren: c outside (0,1]");
    if (m < 1 || b < 2 || A_min < 1) throw std::invalid_argument("lemuren: parameter range");
    const Rat cm = rat_pow(c, m);
    for (long A = A_min;; ++A) {
        const BigInt top = num(cm) * ipow(BigInt(b), static_cast<unsigned long>(m) * A);
        BigInt B = static_cast<long>(m) * A;  // c <= 1 so B <= mA
        BigInt bpow = ipow(BigInt(b), mpz_get_ui(B.get_mpz_t()));
        while (B >= 1 && bpow * den(cm) >= top) {
            bpow /= b;
            B -= 1;
        }
        if (B < 1) continue;  // need positive B; grow A
        // verify both inequalities exactly
        const BigInt bB = ipow(BigInt(b), mpz_get_ui(B.get_mpz_t()));
        if (!(bB * den(cm) < top && top <= bB * b * den(cm)))
            throw std::logic_error("lemuren: verification failed");
        return {A, B};
    }
}

// Irrational-exponent pair: (1-eps) c b^(-B tau) < b^-A <= c b^(-B tau),
// A, B >= size_min. Continued-fraction convergents of tau drive the walk;
// the returned pair is re-verified by enclosure comparison.
inline Pair solve_pair_lemur(const Rat& c, const Surd& tau, long b, const Rat& eps,
                             long size_min = 1) {
    if (tau.is_rational()) throw std::invalid_argument("lemur: tau must be irrational");
    if (!(c > 0 && c < 1)) throw std::invalid_argument("lemur: c outside (0,1)");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("lemur: eps outside (0,1)");
    if (b < 2 || size_min < 1) throw std::invalid_argument("lemur: parameter range");

    // x(B) = B tau - log_b(c); need integer A in [x, x + w), w = -log_b(1-eps)
    const auto log_b = [&](const Rat& v, long bits) {
        return log_enclosure(v, bits) / log_enclosure(Rat(b), bits);
    };
    const auto x_of = [&](const BigInt& B, long bits) {
        Rat lo, hi;
        tau.bounds(bits, lo, hi);
        return Ival(Rat(B) * lo, Rat(B) * hi) - log_b(c, bits);
    };
    const auto verify = [&](long A, const BigInt& B) {
        const Rat lhs = rat_pow(Rat(b), -A);
        const Surd expo = -(Surd(Rat(B)) * tau);
        // b^-A <= c b^(-B tau): equality impossible (tau irrational)
        const int c1 = compare_adaptive(
            [&](long) { return Ival(lhs); },
            [&](long bits) { return Ival(c) * pow_enclosure(Rat(b), expo, bits); });
        if (c1 >= 0) return false;
        const int c2 = compare_adaptive(
            [&](long bits) { return Ival(c) * Ival(Rat(1) - eps) * pow_enclosure(Rat(b), expo, bits); },
            [&](long) { return Ival(lhs); });
        return c2 < 0;
    };

    // convergent step table: (s_k, delta_k = s_k tau - p_k) with delta enclosed
    numkit::CFExpansion cf = numkit::cf_expand(tau, 48);
    struct Step {
        BigInt s;
        Surd delta;
    };
    std::vector<Step> steps;
    for (const auto& [p, q] : cf.convergents) {
        Surd d = Surd(Rat(q)) * tau - Surd(Rat(p));
        if (d.sign() > 0) steps.push_back({q, std::move(d)});
    }

    BigInt B(size_min);
    for (int iter = 0; iter < 200000; ++iter) {
        // A = ceil(x), decided by refining until the enclosure excludes integers
        long bits = 96;
        Ival x = x_of(B, bits);
        while (floor_rat(x.lo) != floor_rat(x.hi)) {
            bits *= 2;
            if (bits > (1L << 20)) throw Undecidable("lemur: ceil(x) refinement runaway");
            x = x_of(B, bits);
        }
        const BigInt A_big = floor_rat(x.lo) + 1;
        if (A_big >= size_min && A_big.fits_slong_p()) {
            const long A = A_big.get_si();
            // in-window test: A - x < w
            const auto g_of = [&](long bi) { return Ival(Rat(A_big)) - x_of(B, bi); };
            const auto w_of = [&](long bi) {
                return Ival(Rat(0)) - log_b(Rat(1) - eps, bi);
            };
            bool in_window = false;
            try {
                in_window = compare_adaptive(g_of, w_of) < 0;
            } catch (const Undecidable&) {
                in_window = false;
            }
            if (in_window && verify(A, B)) return {A, B};
        }
        // not in window: walk the rotation toward it with the largest
        // convergent step that fits inside the current gap
        const Ival g = Ival(Rat(floor_rat(x_of(B, 128).lo) + 1)) - x_of(B, 128);
        BigInt jump = 1;
        for (const Step& st : steps) {  // deltas decrease along the list
            Rat dlo, dhi;
            st.delta.bounds(128, dlo, dhi);
            if (dlo > 0 && dhi < g.lo) {
                const BigInt count = floor_rat(Rat(g.lo / (2 * dhi)));
                jump = st.s * (count > 1 ? count : BigInt(1));
                break;
            }
        }
        B += jump;
    }
    throw Undecidable("lemur: walk did not terminate");
}

}  // namespace uniap::phi
