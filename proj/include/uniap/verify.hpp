// Brute-force verification: psi profiles, claim checks, checkpoint reports,
// Dirichlet-constant estimates under expanding norms, and the dual
// linear-form search. All minima are exact over truncated components and
// widened by rigorous tail contributions.
#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "uniap/construct.hpp"
#include "uniap/interval.hpp"
#include "uniap/numkit.hpp"
#include "uniap/phi.hpp"

namespace uniap::verify {

struct TruncationInsufficient : std::runtime_error {
    long required_level;
    TruncationInsufficient(const std::string& what, long level)
        : std::runtime_error(what), required_level(level) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct RunLimits {
    int workers = 1;
    BigInt q_budget = BigInt(10000000);
    BigInt y_budget = BigInt(1000000);
    long prec_bits = 256;
};

struct NormDescriptor {
    enum class Kind { max, pnorm, weighted_max };
    Kind kind = Kind::max;
    long p = 2;
    std::vector<Rat> weights;

    static NormDescriptor max_norm() { return {}; }
    static NormDescriptor p_norm(long p) {
        if (p < 1) throw std::invalid_argument("p-norm: p < 1");
        NormDescriptor n;
        n.kind = Kind::pnorm;
        n.p = p;
        return n;
    }
    static NormDescriptor weighted(std::vector<Rat> w) {
        NormDescriptor n;
        n.kind = Kind::weighted_max;
        n.weights = std::move(w);
        for (const Rat& wi : n.weights)
            if (!(wi > 0)) throw std::invalid_argument("weighted-max: weights must be positive");
        return n;
    }

    // |x| >= |pi_j(x)| certified analytically for the family
    bool expanding_certified() const {
        if (kind == Kind::weighted_max) {
            for (const Rat& w : weights)
                if (w > 1) return false;
        }
        return true;
    }
    Rat chi() const {  // min_i |e_i|
        if (kind != Kind::weighted_max) return Rat(1);
        Rat m = weights.at(0);
        for (const Rat& w : weights) m = std::min(m, w);
        return m;
    }
    Rat omega_norm() const {  // max_i |e_i|
        if (kind != Kind::weighted_max) return Rat(1);
        Rat m = weights.at(0);
        for (const Rat& w : weights) m = std::max(m, w);
        return m;
    }
    // widening factor: norm distance moved by perturbing each coordinate by e
    Rat error_scale(long m) const {
        switch (kind) {
            case Kind::max: return Rat(1);
            case Kind::weighted_max: return omega_norm();
            case Kind::pnorm: return Rat(m);  // coarse m^(1/p) <= m bound
        }
        return Rat(1);
    }
    std::string name() const {
        switch (kind) {
            case Kind::max: return "max";
            case Kind::pnorm: return "p:" + std::to_string(p);
            case Kind::weighted_max: {
                std::string s = "wmax:";
                for (std::size_t i = 0; i < weights.size(); ++i)
                    s += (i ? "," : "") + weights[i].get_str();
                return s;
            }
        }
        return "?";
    }
};

struct PsiResult {
    BigInt Q;
    Ival value;
    BigInt argmin_q;
    bool exact = false;
    int argmin_component = 0;  // component attaining the norm at argmin_q
};

namespace detail {

// State of one component's residue walk: dist = min(r, d-r)/d for r = q*n mod d.
struct CompWalk {
    BigInt n_mod, d;  // n mod d, denominator
    BigInt r;         // current residue
    void seed(const BigInt& n, const BigInt& den, const BigInt& q0) {
        d = den;
        n_mod = ((n % d) + d) % d;
        r = (q0 * n_mod) % d;
    }
    void step() {
        r += n_mod;
        if (r >= d) r -= d;
    }
    // numerator of dist over denominator d
    BigInt dist_num() const { return std::min(r, BigInt(d - r)); }
};

struct BlockBest {
    bool found = false;
    Rat key;        // ordering key (upper bound for max/wmax, p-th power for pnorm)
    Rat raw;        // exact norm proxy on truncated components
    BigInt q;
    int comp = 0;
};

}  // namespace detail

// Exact minimum of the norm of (||q x_1||, ..., ||q x_m||) over q in [1, Q],
// on truncated components, widened by tail contributions. Deterministic
// parallel map-reduce: any worker count yields the same result.
inline PsiResult psi(const std::vector<Rat>& components, const Rat& tail_bound, const BigInt& Q,
                     const NormDescriptor& norm, const RunLimits& lim = {}) {
    const long m = static_cast<long>(components.size());
    if (m < 1) throw std::invalid_argument("psi: empty vector");
    if (Q < 1) throw std::invalid_argument("psi: Q < 1");
    if (Q > lim.q_budget) throw BudgetExceeded("psi: Q exceeds q_budget");
    if (norm.kind == NormDescriptor::Kind::weighted_max &&
        static_cast<long>(norm.weights.size()) != m)
        throw std::invalid_argument("psi: weight count mismatch");

    const Rat err_scale = norm.error_scale(m);
    const bool by_upper = norm.kind != NormDescriptor::Kind::pnorm;

    const int workers = std::max(1, lim.workers);
    std::vector<detail::BlockBest> results(static_cast<std::size_t>(workers));
    const BigInt total = Q;
    auto worker_fn = [&](int w) {
        const BigInt lo = 1 + total * w / workers;
        const BigInt hi = total * (w + 1) / workers;  // inclusive
        if (lo > hi) return;
        std::vector<detail::CompWalk> walk(static_cast<std::size_t>(m));
        for (long i = 0; i < m; ++i)
            walk[i].seed(num(components[i]), den(components[i]), lo);
        detail::BlockBest best;
        for (BigInt q = lo; q <= hi; ++q) {
            // norm proxy of the distance vector at this q
            if (norm.kind == NormDescriptor::Kind::pnorm) {
                Rat P(0);
                for (long i = 0; i < m; ++i)
                    P += rat_pow(make_rat(walk[i].dist_num(), walk[i].d), norm.p);
                if (!best.found || P < best.key) {
                    int comp = 0;
                    Rat worst(-1);
                    for (long i = 0; i < m; ++i) {
                        const Rat di = make_rat(walk[i].dist_num(), walk[i].d);
                        if (di > worst) worst = di, comp = static_cast<int>(i);
                    }
                    best = {true, P, P, q, comp};
                }
            } else {
                // max or weighted max; early out against the current key
                Rat v(0);
                int comp = 0;
                bool skip = false;
                for (long i = 0; i < m; ++i) {
                    Rat di = make_rat(walk[i].dist_num(), walk[i].d);
                    if (norm.kind == NormDescriptor::Kind::weighted_max) di *= norm.weights[i];
                    if (best.found && di >= best.key) {
                        skip = true;
                        break;
                    }
                    if (di > v) v = di, comp = static_cast<int>(i);
                }
                if (!skip) {
                    const Rat u = by_upper ? Rat(v + Rat(q) * tail_bound * err_scale) : v;
                    if (!best.found || u < best.key) best = {true, u, v, q, comp};
                }
            }
            for (long i = 0; i < m; ++i) walk[i].step();
        }
        results[static_cast<std::size_t>(w)] = best;
    };
    if (workers == 1) {
        worker_fn(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn, w);
        for (auto& t : pool) t.join();
    }
    detail::BlockBest best;
    for (const auto& b : results) {
        if (!b.found) continue;
        if (!best.found || b.key < best.key || (b.key == best.key && b.q < best.q)) best = b;
    }
    if (!best.found) throw std::logic_error("psi: no candidate");

    PsiResult out;
    out.Q = Q;
    out.argmin_q = best.q;
    out.argmin_component = best.comp;
    const Rat eQ = Rat(Q) * tail_bound * err_scale;
    if (norm.kind == NormDescriptor::Kind::pnorm) {
        Ival root = root_enclosure(best.key, static_cast<unsigned long>(norm.p), lim.prec_bits);
        const Rat eq = Rat(best.q) * tail_bound * err_scale;
        out.value = Ival(std::max(Rat(root.lo - eQ), Rat(0)), root.hi + eq);
        out.exact = tail_bound == 0 && root.is_point();
    } else {
        const Rat upper = best.key;
        out.value = Ival(std::max(Rat(upper - 2 * eQ), Rat(0)), upper);
        out.exact = tail_bound == 0;
    }
    return out;
}

inline void require_scope(const construct::ConstructedVector& vec, const BigInt& Q) {
    if (Q > vec.q_max_valid)
        throw TruncationInsufficient(
            "scope Q = " + Q.get_str() + " exceeds q_max_valid = " + vec.q_max_valid.get_str(),
            vec.truncation_level + 1);
}

inline PsiResult psi(const construct::ConstructedVector& vec, const BigInt& Q,
                     const NormDescriptor& norm = {}, const RunLimits& lim = {}) {
    require_scope(vec, Q);
    return psi(vec.components, vec.tail_bound, Q, norm, lim);
}

// ---------------------------------------------------------------------------
// Full piecewise-constant profile of psi on [1, Q_max]

struct SweepPoint {
    BigInt q;        // drop point
    Rat value;       // exact value on truncated components (norm proxy resolved)
    Ival enclosure;  // widened by tail
};

inline std::vector<SweepPoint> psi_sweep(const construct::ConstructedVector& vec,
                                         const BigInt& Q_max, const NormDescriptor& norm = {},
                                         const RunLimits& lim = {}) {
    require_scope(vec, Q_max);
    if (Q_max > lim.q_budget) throw BudgetExceeded("psi_sweep: Q exceeds q_budget");
    const long m = vec.m;
    std::vector<detail::CompWalk> walk(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i)
        walk[i].seed(num(vec.components[i]), den(vec.components[i]), BigInt(1));
    std::vector<SweepPoint> points;
    Rat best(-1);
    const Rat es = norm.error_scale(m);
    for (BigInt q = 1; q <= Q_max; ++q) {
        Rat v(0);
        bool skip = false;
        for (long i = 0; i < m; ++i) {
            Rat di = make_rat(walk[i].dist_num(), walk[i].d);
            if (norm.kind == NormDescriptor::Kind::weighted_max) di *= norm.weights[i];
            if (norm.kind == NormDescriptor::Kind::pnorm) {
                v += rat_pow(di, norm.p);
            } else {
                if (best >= 0 && di >= best) {
                    skip = true;
                    break;
                }
                if (di > v) v = di;
            }
        }
        if (!skip && (best < 0 || v < best)) {
            best = v;
            SweepPoint pt;
            pt.q = q;
            const Rat e = Rat(q) * vec.tail_bound * es;
            if (norm.kind == NormDescriptor::Kind::pnorm) {
                const Ival root =
                    root_enclosure(v, static_cast<unsigned long>(norm.p), lim.prec_bits);
                pt.value = root.hi;
                pt.enclosure = Ival(std::max(Rat(root.lo - e), Rat(0)), root.hi + e);
            } else {
                pt.value = v;
                pt.enclosure = Ival(std::max(Rat(v - e), Rat(0)), v + e);
            }
            points.push_back(std::move(pt));
        }
        for (long i = 0; i < m; ++i) walk[i].step();
    }
    return points;
}

// ---------------------------------------------------------------------------
// Claim (C1): psi(Q) < Phi(Q) on a range

struct C1Report {
    std::vector<BigInt> violations;    // capped listing
    std::vector<BigInt> indeterminate;
    BigInt observed_Q0;
    bool truncated_listing = false;
};

inline C1Report check_C1(const construct::ConstructedVector& vec, const phi::ApproxFn& fn,
                         const BigInt& Q_from, const BigInt& Q_to,
                         const NormDescriptor& norm = {}, const RunLimits& lim = {},
                         std::size_t max_listed = 1000) {
    require_scope(vec, Q_to);
    if (Q_from < 1 || Q_from > Q_to) throw std::invalid_argument("check_C1: bad range");
    const auto sweep = psi_sweep(vec, Q_to, norm, lim);
    C1Report rep;
    rep.observed_Q0 = Q_from;

    // psi upper bound as a function of Q: segment value + Q * tail * scale
    const Rat es = norm.error_scale(vec.m);
    const auto upper_at = [&](const Rat& segval, const BigInt& Q) -> Rat {
        return segval + Rat(Q) * vec.tail_bound * es;
    };
    // compare psi_upper(Q) < Phi(Q).lower; exact for the power family
    const auto ok_at = [&](const Rat& segval, const BigInt& Q) -> std::optional<bool> {
        const Rat u = upper_at(segval, Q);
        if (fn.family == phi::ApproxFn::Family::power) {
            // u < coeff * Q^-tau, decided exactly or by adaptive enclosures
            try {
                if (!fn.coeff.has_power())
                    return scalar_compare(ScalarExpr::rational(u),
                                          ScalarExpr::power(Rat(Q), -fn.tau)
                                              .scaled(fn.coeff.factor)) < 0;
                return compare_adaptive([&](long) { return Ival(u); },
                                        [&](long bits) {
                                            return fn.coeff.enclose(bits) *
                                                   pow_enclosure(Rat(Q), -fn.tau, bits);
                                        }) < 0;
            } catch (const Undecidable&) {
                return std::nullopt;
            }
        }
        try {
            const Ival p = phi::phi_eval(fn, Q, lim.prec_bits);
            if (u < p.lo) return true;
            if (u >= p.hi) return false;
            return std::nullopt;
        } catch (const Undecidable&) {
            return std::nullopt;
        }
    };

    auto record = [&](const BigInt& Q, bool indet) {
        auto& list = indet ? rep.indeterminate : rep.violations;
        if (list.size() < max_listed) list.push_back(Q);
        else rep.truncated_listing = true;
        rep.observed_Q0 = Q + 1;
    };

    for (std::size_t s = 0; s < sweep.size(); ++s) {
        const BigInt seg_lo = std::max(sweep[s].q, Q_from);
        const BigInt seg_hi =
            s + 1 < sweep.size() ? BigInt(sweep[s + 1].q - 1) : Q_to;
        if (seg_lo > seg_hi || seg_hi < Q_from) continue;
        const Rat segval = sweep[s].value;
        // psi upper increases with Q, Phi decreases: binding at the right end
        const auto right = ok_at(segval, seg_hi);
        if (right.has_value() && *right) continue;
        // walk the segment to report individual scales
        for (BigInt Q = seg_lo; Q <= seg_hi; ++Q) {
            const auto r = ok_at(segval, Q);
            if (!r.has_value()) record(Q, true);
            else if (!*r) record(Q, false);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Claim (C2) checkpoints

struct CheckpointReport {
    long f = 0;
    BigInt Q_f;
    PsiResult psi_result;
    Ival phi_at_Qf;
    Ival ratio;
    Ival dirichlet_product;
    bool pass = false;
    Rat tolerance;
};

inline CheckpointReport checkpoint_C2(const construct::ConstructedVector& vec,
                                      const construct::SequenceRecord& seq, long f,
                                      const phi::ApproxFn& fn, const Rat& tolerance = Rat(1, 50),
                                      const NormDescriptor& norm = {}, const RunLimits& lim = {}) {
    CheckpointReport rep;
    rep.f = f;
    rep.Q_f = seq.checkpoint_Q(f);
    rep.tolerance = tolerance;
    require_scope(vec, rep.Q_f);
    rep.psi_result = psi(vec, rep.Q_f, norm, lim);
    rep.phi_at_Qf = phi::phi_eval(fn, rep.Q_f, lim.prec_bits);
    rep.ratio = rep.psi_result.value / rep.phi_at_Qf;
    rep.dirichlet_product =
        root_enclosure(Rat(rep.Q_f), static_cast<unsigned long>(seq.m), lim.prec_bits) *
        rep.psi_result.value;
    rep.pass = rep.ratio.lo >= Rat(1) - tolerance && rep.ratio.hi < 1;
    return rep;
}

// ---------------------------------------------------------------------------
// Claim (C3): Liouville quality at q = a_{mn}

struct C3Verdict {
    long level = 0;
    BigInt q;
    Ival norm_value;
    Rat bound;             // 2 * a_mn^(1 - M_n)
    bool pass = false;
    std::optional<Ival> realized_exponent;  // log(1/psi) / log(q)
    bool need_deeper = false;
};

inline std::vector<C3Verdict> check_C3(const construct::ConstructedVector& vec,
                                       const construct::SequenceRecord& seq, long N,
                                       const std::vector<long>& levels, const RunLimits& lim = {}) {
    std::vector<C3Verdict> out;
    for (long n : levels) {
        if (n < 1 || n > seq.depth()) throw std::invalid_argument("check_C3: level range");
        C3Verdict v;
        v.level = n;
        v.q = seq.at(seq.m * n);
        require_scope(vec, v.q);
        // ||q vec||_max via direct evaluation at the single q
        Rat worst(0);
        for (long i = 0; i < seq.m; ++i) {
            const Rat d = numkit::dist_to_nearest_int(Rat(v.q) * vec.components[i]);
            if (d > worst) worst = d;
        }
        const Rat e = Rat(v.q) * vec.tail_bound;
        v.norm_value = Ival(std::max(Rat(worst - e), Rat(0)), worst + e);
        v.bound = 2 * make_rat(seq.at(seq.m * n), seq.at(seq.m * n + 1));
        v.pass = v.norm_value.hi <= v.bound;
        if (v.norm_value.lo > 0) {
            const Ival num_log = log_enclosure(Rat(1) / v.norm_value.hi, lim.prec_bits);
            const Ival num_log_hi = log_enclosure(Rat(1) / v.norm_value.lo, lim.prec_bits);
            const Ival den_log = log_enclosure(Rat(v.q), lim.prec_bits);
            v.realized_exponent = Ival(num_log.lo, num_log_hi.hi) / den_log;
            v.need_deeper = v.realized_exponent->hi < Rat(N);
        }
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dirichlet-constant estimate across feasible checkpoints

struct ThetaEstimate {
    NormDescriptor norm;
    Rat chi;
    struct Point {
        long f;
        BigInt Q_f;
        Ival product;
        BigInt argmin_q;
        int argmin_component;
    };
    std::vector<Point> checkpoints;
    Ival sup_estimate;
};

inline ThetaEstimate theta_estimate(const construct::ConstructedVector& vec,
                                    const construct::SequenceRecord& seq,
                                    const NormDescriptor& norm = {}, const RunLimits& lim = {}) {
    if (!norm.expanding_certified())
        throw std::invalid_argument("theta_estimate: norm not certified expanding (" + norm.name() +
                                    "): some |e_i| exceeds 1");
    ThetaEstimate est;
    est.norm = norm;
    est.chi = norm.chi();
    bool any = false;
    for (long f = 1; f <= seq.depth(); ++f) {
        const BigInt Qf = seq.checkpoint_Q(f);
        if (Qf > vec.q_max_valid || Qf > lim.q_budget) continue;
        PsiResult r = psi(vec, Qf, norm, lim);
        Ival product =
            root_enclosure(Rat(Qf), static_cast<unsigned long>(seq.m), lim.prec_bits) * r.value;
        est.checkpoints.push_back({f, Qf, product, r.argmin_q, r.argmin_component});
        if (!any) {
            est.sup_estimate = product;
            any = true;
        } else {
            est.sup_estimate =
                Ival(std::max(est.sup_estimate.lo, product.lo), std::max(est.sup_estimate.hi, product.hi));
        }
    }
    if (!any) throw TruncationInsufficient("theta_estimate: no feasible checkpoint", seq.depth() + 1);
    return est;
}

// ---------------------------------------------------------------------------
// Dual problem: min over integer y != 0, |y|_inf <= Q*, of ||<y, x>||

inline PsiResult psi_linear_form(const construct::ConstructedVector& vec, const BigInt& Q_star,
                                 const RunLimits& lim = {}) {
    const long m = vec.m;
    if (Q_star < 1) throw std::invalid_argument("psi_linear_form: Q* < 1");
    BigInt box = 1;
    for (long i = 0; i < m; ++i) box *= 2 * Q_star + 1;
    const BigInt half = (box - 1) / 2;  // +-y dedup: first nonzero coordinate positive
    if (half > lim.y_budget)
        throw BudgetExceeded("psi_linear_form: candidate count " + half.get_str() +
                             " exceeds y_budget");
    require_scope(vec, Q_star * m);  // tail widening scale

    const long side = 2 * Q_star.get_si() + 1;
    const long Qs = Q_star.get_si();
    const long total = half.get_si();

    const int workers = std::max(1, lim.workers);
    std::vector<detail::BlockBest> results(static_cast<std::size_t>(workers));
    auto index_to_y = [&](long idx, std::vector<long>& y) {
        // enumerate the "positive half" of the box in lexicographic order
        long t = idx;
        for (long i = m - 1; i >= 0; --i) {
            y[static_cast<std::size_t>(i)] = t % side - Qs;
            t /= side;
        }
    };
    auto worker_fn = [&](int w) {
        const long lo = static_cast<long>(total) * w / workers;
        const long hi = static_cast<long>(total) * (w + 1) / workers;
        std::vector<long> y(static_cast<std::size_t>(m));
        detail::BlockBest best;
        for (long idx = lo; idx < hi; ++idx) {
            index_to_y(idx + (total + 1), y);  // skip the nonpositive half and zero
            Rat dot(0);
            for (long i = 0; i < m; ++i) dot += Rat(y[static_cast<std::size_t>(i)]) * vec.components[static_cast<std::size_t>(i)];
            const Rat d = numkit::dist_to_nearest_int(dot);
            if (!best.found || d < best.raw) best = {true, d, d, BigInt(idx), 0};
        }
        results[static_cast<std::size_t>(w)] = best;
    };
    if (workers == 1) {
        worker_fn(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn, w);
        for (auto& t : pool) t.join();
    }
    detail::BlockBest best;
    for (const auto& b : results)
        if (b.found && (!best.found || b.raw < best.raw || (b.raw == best.raw && b.q < best.q)))
            best = b;
    if (!best.found) throw std::logic_error("psi_linear_form: empty box");

    PsiResult out;
    out.Q = Q_star;
    out.argmin_q = best.q;  // canonical index of the witness y
    const Rat e = Rat(m) * Rat(Q_star) * vec.tail_bound;
    out.value = Ival(std::max(Rat(best.raw - e), Rat(0)), best.raw + e);
    out.exact = vec.tail_bound == 0;
    return out;
}

// Decode a canonical linear-form witness index back into the vector y.
inline std::vector<long> linear_form_witness(long m, const BigInt& Q_star, const BigInt& index) {
    const long side = 2 * Q_star.get_si() + 1;
    BigInt box = 1;
    for (long i = 0; i < m; ++i) box *= side;
    const BigInt half = (box - 1) / 2;
    BigInt t = index + half + 1;
    std::vector<long> y(static_cast<std::size_t>(m));
    for (long i = m - 1; i >= 0; --i) {
        y[static_cast<std::size_t>(i)] = BigInt(t % side).get_si() - Q_star.get_si();
        t /= side;
    }
    return y;
}

// ---------------------------------------------------------------------------
// Ordinary-exponent records along the psi profile

struct ExponentRecord {
    BigInt q;
    Ival value;  // psi at the drop point
    std::optional<Ival> exponent;  // log(1/psi)/log(q); empty when psi may be 0
    bool infinite_flag = false;
};

struct LambdaEstimate {
    std::vector<ExponentRecord> drops;
    std::optional<Ival> running_max;  // lower-bound estimate for lambda
    bool infinite_flag = false;
};

inline LambdaEstimate lambda_estimate(const construct::ConstructedVector& vec, const BigInt& Q_max,
                                      const NormDescriptor& norm = {}, const RunLimits& lim = {}) {
    LambdaEstimate est;
    const auto sweep = psi_sweep(vec, Q_max, norm, lim);
    for (const auto& pt : sweep) {
        ExponentRecord rec;
        rec.q = pt.q;
        rec.value = pt.enclosure;
        if (pt.q == 1) continue;  // log(q) = 0
        if (pt.enclosure.lo <= 0) {
            rec.infinite_flag = true;
            est.infinite_flag = true;
        } else {
            const Ival num_lo = log_enclosure(Rat(1) / pt.enclosure.hi, lim.prec_bits);
            const Ival num_hi = log_enclosure(Rat(1) / pt.enclosure.lo, lim.prec_bits);
            const Ival den = log_enclosure(Rat(pt.q), lim.prec_bits);
            rec.exponent = Ival(num_lo.lo, num_hi.hi) / den;
            if (!est.running_max || rec.exponent->lo > est.running_max->lo)
                est.running_max = rec.exponent;
        }
        est.drops.push_back(std::move(rec));
    }
    return est;
}

}  // namespace uniap::verify
