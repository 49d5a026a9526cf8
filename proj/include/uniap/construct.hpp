// Recursive sequence construction with per-level certificates, exact vector
// assembly from truncated reciprocal series, and the Cantor-set lift.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "uniap/numkit.hpp"
#include "uniap/phi.hpp"

namespace uniap::construct {

enum class Mode { general, m2, cantor, uniform_quotient };
enum class Growth { minimal_certified, explicit_list, exponent_only };

struct ConstructionInfeasible : std::runtime_error {
    explicit ConstructionInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct ConstructionPlan {
    long m = 2;
    phi::ApproxFn fn = phi::ApproxFn::power(Rat(1, 2), Surd(Rat(1, 2)));
    Mode mode = Mode::general;
    Growth growth = Growth::minimal_certified;
    long depth = 1;
    BigInt q_budget = BigInt(10000000);

    long cantor_base = 0;                // mode == cantor
    std::vector<std::vector<int>> W;     // per-coordinate digit sets (cantor)

    std::vector<long> M_list;            // growth == explicit_list / exponent_only
    Rat margin = Rat(1, 1000);           // check (e) fraction
    long max_M_budget = 64;

    void validate() const {
        if (depth < 1) throw std::invalid_argument("plan: depth < 1");
        switch (mode) {
            case Mode::general:
                if (m < 3) throw std::invalid_argument("plan: general mode requires m >= 3");
                break;
            case Mode::m2:
                if (m != 2) throw std::invalid_argument("plan: m2 mode requires m = 2");
                break;
            case Mode::uniform_quotient:
                if (m < 2) throw std::invalid_argument("plan: m >= 2 required");
                break;
            case Mode::cantor:
                if (m < 2) throw std::invalid_argument("plan: m >= 2 required");
                if (cantor_base < 2) throw std::invalid_argument("plan: cantor base < 2");
                if (!W.empty()) {
                    if (static_cast<long>(W.size()) != m)
                        throw std::invalid_argument("plan: need one digit set per coordinate");
                    for (const auto& w : W) {
                        if (w.size() < 2) throw std::invalid_argument("plan: |W_i| >= 2 required");
                        for (int d : w)
                            if (d < 0 || d >= cantor_base)
                                throw std::invalid_argument("plan: digit outside [0, b-1]");
                    }
                }
                break;
        }
        if (growth != Growth::minimal_certified &&
            static_cast<long>(M_list.size()) != depth)
            throw std::invalid_argument("plan: M_list must have one entry per level");
        if (margin <= 0) throw std::invalid_argument("plan: margin <= 0");
    }
};

enum class CheckStatus { pass, fail, deferred };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct CertificateReport {
    long level = 0;
    long M = 0;
    std::vector<CheckResult> checks;

    bool any_fail() const {
        return std::any_of(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.status == CheckStatus::fail; });
    }
    bool all_concrete_pass() const { return !any_fail(); }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail) return c.name + ": " + c.detail;
        return "";
    }
};

struct SequenceRecord {
    long m = 2;
    Mode mode = Mode::general;
    long cantor_base = 0;
    long H = 0;
    std::vector<BigInt> a;       // a_1 .. a_{m(depth+1)}
    std::vector<long> M;         // per level; exponent of the base multiplier in cantor mode
    std::vector<BigInt> L;       // L_n (general/cantor m>=3) or Ltilde_n (m2/uq)
    std::vector<CertificateReport> certificates;
    ConstructionPlan plan;

    bool exponent_only = false;
    long power_base = 0;            // != 0 when every term is power_base^exponents[j]
    std::vector<BigInt> exponents;  // parallel to a (or standalone in exponent_only mode)

    long depth() const { return static_cast<long>(M.size()); }
    long term_count() const {
        return exponent_only ? static_cast<long>(exponents.size()) : static_cast<long>(a.size());
    }
    const BigInt& at(long j) const { return a.at(static_cast<std::size_t>(j - 1)); }  // 1-based
    BigInt d(long f) const { return at(m * f + 1); }
    BigInt checkpoint_Q(long f) const { return at(m * (f + 1)) - 1; }

    // sum_{n=n0}^{n1} 1/a_{mn+i}, exact
    Rat series_sum(long i, long n0, long n1) const {
        Rat s(0);
        for (long n = n0; n <= n1; ++n) s += make_rat(1, at(m * n + i));
        return s;
    }
    // upper bound on sum_{n>t} 1/a_{mn+i}: exact built terms plus 1/a_last
    // for the unbuilt continuation (growth factor >= 2 per step)
    Rat tail_upper(long i, long t) const {
        Rat s = series_sum(i, t + 1, depth());
        return s + make_rat(1, a.back());
    }
};

struct ConstructedVector {
    long m = 2;
    std::string provenance;
    std::vector<Rat> components;
    long truncation_level = 0;
    Rat tail_bound = Rat(0);
    BigInt q_max_valid;
    std::vector<BigInt> a;  // sequence snapshot
};

namespace detail {

// Largest z >= 1 with Phi(Q) > 1/d for all Q in [1, z*A]. For the power
// family Phi decreases, so the binding comparison is at Q = z*A.
inline BigInt L_max_type(const phi::ApproxFn& fn, const BigInt& d, const BigInt& A,
                         long snap_base) {
    const auto ok = [&](const BigInt& z) {
        if (fn.family == phi::ApproxFn::Family::power) {
            // c (zA)^-tau > 1/d  <=>  c*d > (zA)^tau
            const ScalarExpr lhs = fn.coeff.scaled(Surd(Rat(d)));
            const ScalarExpr rhs = ScalarExpr::power(Rat(z * A), fn.tau);
            return scalar_compare(lhs, rhs) > 0;
        }
        // tabulated: definitional scan over the new segment is done by caller
        const Ival v = phi::phi_eval(fn, z * A, 96);
        return v.lo > make_rat(1, d);
    };
    if (!ok(BigInt(1))) throw ConstructionInfeasible("L underflow: Phi(A) <= 1/d");
    BigInt lo = 1, hi = 2;
    while (ok(hi)) {
        lo = hi;
        hi *= 2;
        if (mpz_sizeinbase(hi.get_mpz_t(), 2) > 4096)
            throw ConstructionInfeasible("L search runaway");
    }
    while (lo + 1 < hi) {
        const BigInt mid = (lo + hi) / 2;
        (ok(mid) ? lo : hi) = mid;
    }
    if (snap_base >= 2) {
        BigInt p = 1;
        while (p * snap_base <= lo) p *= snap_base;
        return p;  // condition at smaller z is weaker, stays valid
    }
    return lo;
}

// Smallest z >= 1 with 1/z < Phi(Q) for all Q in [1, z^zpow * d].
inline BigInt L_min_type(const phi::ApproxFn& fn, const BigInt& d, long zpow, long snap_base) {
    const auto ok = [&](const BigInt& z) {
        BigInt zq = 1;
        for (long i = 0; i < zpow; ++i) zq *= z;
        if (fn.family == phi::ApproxFn::Family::power) {
            // c (z^p d)^-tau > 1/z  <=>  c*z > (z^p d)^tau
            const ScalarExpr lhs = fn.coeff.scaled(Surd(Rat(z)));
            const ScalarExpr rhs = ScalarExpr::power(Rat(zq * d), fn.tau);
            return scalar_compare(lhs, rhs) > 0;
        }
        const Ival v = phi::phi_eval(fn, zq * d, 96);
        return v.lo > make_rat(1, z);
    };
    BigInt lo = 1, hi = 1;
    while (!ok(hi)) {
        hi *= 2;
        if (mpz_sizeinbase(hi.get_mpz_t(), 2) > 4096)
            throw ConstructionInfeasible("L search runaway");
    }
    while (lo + 1 < hi) {  // lo is always !ok or 1
        const BigInt mid = (lo + hi) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    BigInt z = ok(lo) ? lo : hi;
    if (snap_base >= 2) {
        BigInt p = 1;
        while (p < z) p *= snap_base;
        while (!ok(p)) p *= snap_base;  // monotone for the power family; re-verified anyway
        return p;
    }
    return z;
}

}  // namespace detail

// Per-level certificate. Checks (a),(b) are structural; (c)/(d) compare the
// construction's near-miss quality against Phi with exact partial sums plus
// rigorous tail intervals; (e) bounds the error term a checkpoint at this
// level would see from the next level. (d) and (e) are deferred while the
// next level does not exist yet.
inline CertificateReport certify_level(const SequenceRecord& seq, long level,
                                       const phi::ApproxFn& fn, const Rat& margin = Rat(1, 1000)) {
    if (level < 1 || level > seq.depth()) throw std::invalid_argument("certify_level: level range");
    CertificateReport rep;
    rep.level = level;
    rep.M = seq.M.at(static_cast<std::size_t>(level - 1));
    const long m = seq.m;
    const long f = level;
    const bool next_built = level < seq.depth();
    const bool min_type = seq.mode == Mode::m2 || seq.mode == Mode::uniform_quotient ||
                          (seq.mode == Mode::cantor && m == 2);

    // (a) divisibility across the level's new terms
    {
        CheckResult c{"a:divisibility", CheckStatus::pass, ""};
        for (long j = m * f; j < m * (f + 1); ++j) {
            if (seq.at(j + 1) % seq.at(j) != 0) {
                c.status = CheckStatus::fail;
                c.detail = "a_" + std::to_string(j) + " does not divide a_" + std::to_string(j + 1);
                break;
            }
        }
        rep.checks.push_back(std::move(c));
    }
    // (b) L bound: L_n <= a_{mn+1} (max type) or Ltilde_n > a_{mn+1} (min type)
    {
        CheckResult c{"b:L-bound", CheckStatus::pass, ""};
        const BigInt& L = seq.L.at(static_cast<std::size_t>(level - 1));
        const BigInt dn = seq.d(f);
        if (min_type ? !(L > dn) : !(L <= dn)) {
            c.status = CheckStatus::fail;
            c.detail = "L = " + L.get_str() + " vs d = " + dn.get_str();
        }
        rep.checks.push_back(std::move(c));
    }
    // (c) Case-1 margin at q = a_{mf}, binding scale Q = a_{mf+1} - 1
    {
        CheckResult c{"c:case1-margin", CheckStatus::pass, ""};
        const BigInt q = seq.at(m * f);
        const Rat frac = Rat(q) * (seq.series_sum(1, f, seq.depth()) + seq.tail_upper(1, seq.depth()));
        const Ival bound = phi::phi_eval(fn, seq.d(f) - 1, 128);
        if (!(frac < bound.lo)) {
            c.status = CheckStatus::fail;
            c.detail = "||a_mf xi_1|| <= " + to_decimal_string(frac, 8) + " vs Phi = " +
                       to_decimal_string(bound.lo, 8);
        } else {
            c.detail = to_decimal_string(frac, 8) + " < " + to_decimal_string(bound.lo, 8);
        }
        rep.checks.push_back(std::move(c));
    }
    // (d) Case-2/3 margin at q = d_f, binding scale Q = a_{m(f+1)} - 1
    {
        CheckResult c{"d:case23-margin", CheckStatus::pass, ""};
        if (!next_built) {
            c.status = CheckStatus::deferred;
            c.detail = "needs level " + std::to_string(level + 1);
        } else {
            const BigInt q = seq.d(f);
            const Rat frac =
                Rat(q) * (seq.series_sum(2, f, seq.depth()) + seq.tail_upper(2, seq.depth()));
            const Ival bound = phi::phi_eval(fn, seq.at(m * (f + 1)) - 1, 128);
            if (!(frac < bound.lo)) {
                c.status = CheckStatus::fail;
                c.detail = "||d_f xi_2|| <= " + to_decimal_string(frac, 10) + " vs Phi = " +
                           to_decimal_string(bound.lo, 10);
            } else {
                c.detail = to_decimal_string(frac, 10) + " < " + to_decimal_string(bound.lo, 10);
            }
        }
        rep.checks.push_back(std::move(c));
    }
    // (e) error domination: Q_f * tail(level f+1) <= margin / d_f
    {
        CheckResult c{"e:error-domination", CheckStatus::pass, ""};
        if (!next_built) {
            c.status = CheckStatus::deferred;
            c.detail = "needs level " + std::to_string(level + 1);
        } else {
            const BigInt Qf = seq.checkpoint_Q(f);
            const Rat tail = make_rat(2, seq.at(m * (f + 1) + 1));
            const Rat lhs = Rat(Qf) * tail;
            const Rat rhs = margin * make_rat(1, seq.d(f));
            if (!(lhs <= rhs)) {
                c.status = CheckStatus::fail;
                c.detail = "Q_f * tail = " + to_decimal_string(lhs, 12) + " > " +
                           to_decimal_string(rhs, 12);
            }
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

namespace detail {

inline long find_H(const phi::ApproxFn& fn, long m, long snap_base) {
    phi::PropertyParams pp;
    pp.m = m;
    const auto d2 = phi::certify(fn, phi::Property::d2, pp);
    if (!d2.passed()) throw ConstructionInfeasible("Phi fails (d2): " + d2.detail);
    long H = std::max<long>(2, d2.t0);
    if (snap_base >= 2) {
        long p = 1;
        while (p < H) p *= snap_base;
        H = p;
    }
    return H;
}

// Lays out level n terms a_{mn+1}..a_{mn+m} for the given growth step.
// For eq-power growth a_{mn+1} = a_{mn}^M; cantor uses the multiplier form
// a_{mn+1} = base^M * a_{mn}.
inline void lay_level(SequenceRecord& seq, long n, long M) {
    const long m = seq.m;
    seq.a.resize(static_cast<std::size_t>(m * n));  // drop any previous attempt
    const BigInt prev = seq.at(m * n);
    BigInt d;
    if (seq.mode == Mode::cantor) {
        d = ipow(BigInt(seq.cantor_base), static_cast<unsigned long>(M)) * prev;
    } else {
        d = ipow(prev, static_cast<unsigned long>(M));
    }
    seq.a.push_back(d);
    const bool min_type =
        seq.mode == Mode::m2 || seq.mode == Mode::uniform_quotient || (seq.mode == Mode::cantor && m == 2);
    const long snap = seq.mode == Mode::cantor ? seq.cantor_base : 0;
    BigInt L;
    if (min_type) {
        const long zpow = seq.mode == Mode::uniform_quotient ? m - 1 : 1;
        L = L_min_type(seq.plan.fn, d, zpow, snap);
        BigInt t = d;
        for (long j = 1; j <= m - 1; ++j) {
            t *= L;
            seq.a.push_back(t);
        }
    } else {
        for (long i = 2; i <= m - 1; ++i) seq.a.push_back(ipow(d, static_cast<unsigned long>(i)));
        L = L_max_type(seq.plan.fn, d, seq.a.back(), snap);
        seq.a.push_back(L * seq.a.back());
    }
    seq.L.resize(static_cast<std::size_t>(n - 1));
    seq.L.push_back(L);
    seq.M.resize(static_cast<std::size_t>(n - 1));
    seq.M.push_back(M);
}

}  // namespace detail

inline SequenceRecord build_sequence(const ConstructionPlan& plan) {
    plan.validate();
    const long m = plan.m;

    // required decay certificates
    phi::PropertyParams pp;
    pp.m = m;
    if (!phi::certify(plan.fn, phi::Property::d1, pp).passed())
        throw ConstructionInfeasible("Phi fails (d1)");
    if (!phi::certify(plan.fn, phi::Property::d2, pp).passed())
        throw ConstructionInfeasible("Phi fails (d2)");
    if (plan.mode == Mode::cantor && plan.fn.family == phi::ApproxFn::Family::power) {
        phi::PropertyParams dp;
        dp.m = m;
        dp.b = plan.cantor_base;
        dp.R = ScalarExpr::power(Rat(plan.cantor_base), -plan.fn.tau);
        if (!phi::certify(plan.fn, phi::Property::d3prime, dp).passed())
            throw ConstructionInfeasible("Phi fails (d3'(b, b^-tau))");
    }

    SequenceRecord seq;
    seq.m = m;
    seq.mode = plan.mode;
    seq.cantor_base = plan.mode == Mode::cantor ? plan.cantor_base : 0;
    seq.plan = plan;

    if (plan.growth == Growth::exponent_only) {
        // Exponent schedule over one fixed base; terms are never materialized
        // and only structural invariants apply. L entries store exponents.
        if (plan.fn.family != phi::ApproxFn::Family::power)
            throw std::invalid_argument("exponent-only growth needs the power family");
        seq.exponent_only = true;
        seq.power_base = plan.mode == Mode::cantor ? plan.cantor_base : 2;
        const long bb = seq.power_base;
        const long H = detail::find_H(plan.fn, m, bb);
        long h = 0;
        for (BigInt p(1); p < H; p *= bb) ++h;
        seq.H = std::max<long>(1, h);
        for (long j = 1; j <= m; ++j) seq.exponents.push_back(BigInt(seq.H) * j);
        const bool min_type = m == 2;
        // Phi(base^u) > base^-v  <=>  c > base^(u*tau - v)
        const auto phi_above = [&](const BigInt& u, const BigInt& v) {
            const ScalarExpr rhs =
                ScalarExpr::power(Rat(bb), Surd(Rat(u)) * plan.fn.tau - Surd(Rat(v)));
            return scalar_compare(plan.fn.coeff, rhs) > 0;
        };
        for (long n = 1; n <= plan.depth; ++n) {
            const long M = plan.M_list.at(static_cast<std::size_t>(n - 1));
            const BigInt c_prev = seq.exponents.back();
            const BigInt c1 = plan.mode == Mode::cantor ? BigInt(c_prev + M) : BigInt(c_prev * M);
            seq.exponents.push_back(c1);
            BigInt ell(0);
            if (min_type) {
                // smallest ell with base^-ell < Phi(base^(ell + c1))
                while (!phi_above(ell + c1, ell)) ++ell;
            } else {
                for (long i = 2; i <= m - 1; ++i) seq.exponents.push_back(c1 * i);
                // largest ell with base^-c1 < Phi(base^(c_last + ell))
                const BigInt c_last = seq.exponents.back();
                if (!phi_above(c_last, c1)) throw ConstructionInfeasible("exponent L underflow");
                while (phi_above(c_last + ell + 1, c1)) ++ell;
            }
            seq.exponents.push_back(seq.exponents.back() + ell);
            seq.M.push_back(M);
            seq.L.push_back(ell);
        }
        return seq;
    }

    seq.H = detail::find_H(plan.fn, m, seq.cantor_base);
    for (long j = 1; j <= m; ++j) seq.a.push_back(ipow(BigInt(seq.H), static_cast<unsigned long>(j)));

    const long M_start = plan.mode == Mode::cantor ? 1 : 2;
    for (long n = 1; n <= plan.depth; ++n) {
        if (plan.growth == Growth::explicit_list) {
            detail::lay_level(seq, n, plan.M_list.at(static_cast<std::size_t>(n - 1)));
            continue;
        }
        bool done = false;
        for (long M = M_start; M <= plan.max_M_budget; ++M) {
            detail::lay_level(seq, n, M);
            const CertificateReport here = certify_level(seq, n, plan.fn, plan.margin);
            const bool retro_ok =
                n < 2 || !certify_level(seq, n - 1, plan.fn, plan.margin).any_fail();
            if (!here.any_fail() && retro_ok) {
                done = true;
                break;
            }
        }
        if (!done)
            throw ConstructionInfeasible(
                "level " + std::to_string(n) + ": no growth step within budget passes; last failure: " +
                certify_level(seq, n, plan.fn, plan.margin).first_failure());
    }
    for (long n = 1; n <= plan.depth; ++n)
        seq.certificates.push_back(certify_level(seq, n, plan.fn, plan.margin));
    return seq;
}

inline ConstructedVector assemble_vector(const SequenceRecord& seq, long truncation_level) {
    if (seq.exponent_only)
        throw std::invalid_argument("assemble_vector: exponent-only sequences are not materialized");
    if (truncation_level < 0 || truncation_level > seq.depth())
        throw std::invalid_argument("assemble_vector: truncation_level outside [0, depth]");
    ConstructedVector v;
    v.m = seq.m;
    v.truncation_level = truncation_level;
    v.a = seq.a;
    v.provenance = "sequence(H=" + std::to_string(seq.H) + ",depth=" + std::to_string(seq.depth()) + ")";
    for (long i = 1; i <= seq.m; ++i) v.components.push_back(seq.series_sum(i, 0, truncation_level));
    if (truncation_level < seq.depth())
        v.tail_bound = make_rat(2, seq.at(seq.m * (truncation_level + 1) + 1));
    else
        v.tail_bound = make_rat(1, seq.a.back());  // unbuilt continuation grows by >= 2 per term
    // largest Q with Q * tail < 2^-30
    const Rat limit = make_rat(1, BigInt(1) << 30);
    v.q_max_valid = ceil_rat(limit / v.tail_bound) - 1;
    return v;
}

// xi_i = w_{i,1} theta_i + w_{i,2}/(b-1) for W_i = {w_{i,2}, w_{i,1}+w_{i,2}};
// maps a {0,1}-digit vector into the product Cantor set with digit sets W_i.
inline ConstructedVector cantor_lift(const ConstructedVector& theta, long b,
                                     const std::vector<std::vector<int>>& W) {
    if (b < 2) throw std::invalid_argument("cantor_lift: base < 2");
    if (static_cast<long>(W.size()) != theta.m)
        throw std::invalid_argument("cantor_lift: one digit set per coordinate required");
    ConstructedVector v = theta;
    v.provenance = "cantor_lift(b=" + std::to_string(b) + ") of " + theta.provenance;
    Rat worst_scale(1);
    for (long i = 0; i < theta.m; ++i) {
        std::vector<int> w = W[static_cast<std::size_t>(i)];
        std::sort(w.begin(), w.end());
        if (w.size() != 2)
            throw std::invalid_argument("cantor_lift: |W_i| = 2 required (two-digit reduction)");
        const int w2 = w[0];
        const int w1 = w[1] - w[0];
        if (w2 < 0 || w[1] >= b) throw std::invalid_argument("cantor_lift: digits outside base");
        v.components[static_cast<std::size_t>(i)] =
            Rat(w1) * theta.components[static_cast<std::size_t>(i)] + Rat(w2, b - 1);
        if (Rat(w1) > worst_scale) worst_scale = Rat(w1);
    }
    v.tail_bound = theta.tail_bound * worst_scale;
    const Rat limit = make_rat(1, BigInt(1) << 30);
    v.q_max_valid = ceil_rat(limit / v.tail_bound) - 1;
    return v;
}

// Digit-membership check: first `count` base-b digits of every component
// lie in the corresponding digit set.
inline bool digits_in_sets(const ConstructedVector& v, long b, const std::vector<std::vector<int>>& W,
                           std::size_t count) {
    for (long i = 0; i < v.m; ++i) {
        const auto ds = numkit::digits_of(v.components[static_cast<std::size_t>(i)], b, count);
        const auto& allowed = W[static_cast<std::size_t>(i)];
        for (int d : ds.digits)
            if (std::find(allowed.begin(), allowed.end(), d) == allowed.end()) return false;
    }
    return true;
}

}  // namespace uniap::construct
