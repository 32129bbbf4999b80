#pragma once

// (p,q)-restriction constants rho_{p,q}(Sigma): exact closed forms, projected
// ascent lower bounds, Riesz-Thorin interpolation upper bounds, Holder
// conversion, and the additive-energy restriction constant.

#include "apair/operators.hpp"

#include <functional>

namespace apair {

enum class BoundKind { exact, lower, upper, formula };

inline const char* to_string(BoundKind k) {
    switch (k) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::formula: return "formula";
    }
    return "?";
}

struct RestrictionBound {
    ExponentPair exponents;
    double value = 0.0;
    BoundKind kind = BoundKind::exact;
    std::optional<Signal> witness;       // best input found (lower bounds)
    std::optional<double> normalized_C;  // C_{p,q}(Sigma) with rho = C |Sigma|^{1/q} / |G|^{1/2}
    std::string caveat;
};

namespace detail {

inline double vec_lp_norm(const std::vector<cplx>& v, const Exponent& p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (const cplx& x : v) m = std::max(m, std::abs(x));
        return m;
    }
    const double pv = p.value();
    double s = 0.0;
    for (const cplx& x : v) s += std::pow(std::abs(x), pv);
    return std::pow(s, 1.0 / pv);
}

/// Wirtinger gradient of log||v||_p (up to the common factor 1/2).
inline std::vector<cplx> log_norm_gradient(const std::vector<cplx>& v, const Exponent& p) {
    std::vector<cplx> g(v.size(), cplx(0.0));
    if (p.is_infinite()) {
        std::size_t best = 0;
        double m = -1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double a = std::abs(v[i]);
            if (a > m) {
                m = a;
                best = i;
            }
        }
        if (m > 0) g[best] = v[best] / (m * m);
        return g;
    }
    const double pv = p.value();
    double norm = vec_lp_norm(v, p);
    if (norm == 0.0) return g;
    const double denom = std::pow(norm, pv);
    for (std::size_t i = 0; i < v.size(); ++i) {
        double a = std::abs(v[i]);
        if (a > 0) g[i] = std::pow(a, pv - 2.0) * v[i] / denom;
    }
    return g;
}

} // namespace detail

struct AscentOptions {
    int restarts = 8;
    int max_iter = 300;
    std::uint64_t seed = 0;
    bool delta_starts = true;
    double init_step = 0.5;
    double min_step = 1e-10;
};

struct AscentResult {
    double value = 0.0;
    std::vector<cplx> witness;
};

/// Maximize ||A x||_q / ||x||_p by normalized gradient steps with backtracking.
/// forward/adjoint give the action of the linear map and its adjoint; the
/// result is a lower bound for the operator norm by construction.
inline AscentResult ascent_lp_lq(
    std::size_t dim_in,
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& forward,
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& adjoint,
    const Exponent& p, const Exponent& q, const AscentOptions& opts) {
    if (opts.restarts < 1) throw std::invalid_argument("ascent_lp_lq: restarts >= 1 required");

    auto ratio = [&](const std::vector<cplx>& x) {
        double den = detail::vec_lp_norm(x, p);
        if (den == 0.0) return 0.0;
        return detail::vec_lp_norm(forward(x), q) / den;
    };

    auto climb = [&](std::vector<cplx> x) {
        // scale invariant; keep x on the unit 2-sphere
        auto renorm = [&](std::vector<cplx>& v) {
            double n2 = 0.0;
            for (const cplx& c : v) n2 += std::norm(c);
            n2 = std::sqrt(n2);
            if (n2 > 0)
                for (cplx& c : v) c /= n2;
        };
        renorm(x);
        double best = ratio(x);
        double step = opts.init_step;
        for (int it = 0; it < opts.max_iter; ++it) {
            std::vector<cplx> y = forward(x);
            std::vector<cplx> gy = detail::log_norm_gradient(y, q);
            std::vector<cplx> grad = adjoint(gy);
            std::vector<cplx> gx = detail::log_norm_gradient(x, p);
            double gnorm2 = 0.0;
            for (std::size_t i = 0; i < grad.size(); ++i) {
                grad[i] -= gx[i];
                gnorm2 += std::norm(grad[i]);
            }
            double gnorm = std::sqrt(gnorm2);
            if (gnorm < 1e-15) break;
            bool improved = false;
            while (step >= opts.min_step) {
                std::vector<cplx> xn(x);
                const double scale = step / gnorm;
                for (std::size_t i = 0; i < xn.size(); ++i) xn[i] += scale * grad[i];
                renorm(xn);
                double r = ratio(xn);
                if (r > best * (1.0 + 1e-14)) {
                    best = r;
                    x = std::move(xn);
                    improved = true;
                    step = std::min(step * 1.5, opts.init_step);
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        return std::pair<double, std::vector<cplx>>(best, std::move(x));
    };

    AscentResult out;
    auto consider = [&](std::vector<cplx> start) {
        auto [val, wit] = climb(std::move(start));
        if (val > out.value) {
            out.value = val;
            out.witness = std::move(wit);
        }
    };

    if (opts.delta_starts) {
        for (std::size_t i = 0; i < dim_in; ++i) {
            std::vector<cplx> e(dim_in, cplx(0.0));
            e[i] = 1.0;
            consider(std::move(e));
        }
    }
    for (int r = 0; r < opts.restarts; ++r) {
        std::mt19937_64 rng(opts.seed + std::uint64_t(r));
        consider(detail::gaussian_vector(dim_in, rng));
    }
    return out;
}

/// Exact rho_{p,q}(Sigma) on the supported exponent families:
/// (2,2), (1,q) for any q, and (p,inf) for any p.
inline RestrictionBound restriction_norm_exact(const IndexSet& Sigma, const ExponentPair& e) {
    RestrictionBound b;
    b.exponents = e;
    b.kind = BoundKind::exact;
    const double card = double(Sigma.spec().cardinality());
    const double c = Sigma.spec().normalization();
    const double size = double(Sigma.size());
    if (Sigma.is_empty()) {
        b.value = 0.0;
        return b;
    }
    const bool p2q2 = !e.p.is_infinite() && e.p.value() == 2.0 &&
                      !e.q.is_infinite() && e.q.value() == 2.0;
    if (p2q2) {
        // rows of the unitary DFT matrix are orthonormal
        b.value = 1.0;
    } else if (!e.p.is_infinite() && e.p.value() == 1.0) {
        // sup over x of || (F delta_x)|_Sigma ||_q; every entry has modulus c
        b.value = c * std::pow(size, e.q.inv());
    } else if (e.q.is_infinite()) {
        // Holder against a single character row
        b.value = c * std::pow(card, e.p.conjugate().inv());
    } else {
        throw std::invalid_argument(
            "restriction_norm_exact: unsupported (p,q); use the lower/upper estimators");
    }
    b.normalized_C = b.value * std::sqrt(card) / std::pow(size, e.q.inv());
    return b;
}

/// Ascent lower bound for rho_{p,q}(Sigma), with the best witness kept.
inline RestrictionBound restriction_norm_lower(const IndexSet& Sigma, const ExponentPair& e,
                                               const AscentOptions& opts = {}) {
    const GroupSpec spec = Sigma.spec();
    const std::size_t n = std::size_t(spec.cardinality());
    const auto& mem = Sigma.members();
    auto forward = [&](const std::vector<cplx>& x) {
        Signal fx = dft(Signal(spec, x));
        std::vector<cplx> out(mem.size());
        for (std::size_t i = 0; i < mem.size(); ++i) out[i] = fx.at(mem[i]);
        return out;
    };
    auto adjoint = [&](const std::vector<cplx>& w) {
        Signal emb = Signal::zero(spec);
        for (std::size_t i = 0; i < mem.size(); ++i) emb.at(mem[i]) = w[i];
        return idft(emb).values();
    };
    AscentResult res = ascent_lp_lq(n, forward, adjoint, e.p, e.q, opts);
    RestrictionBound b;
    b.exponents = e;
    b.kind = BoundKind::lower;
    b.value = res.value;
    if (!res.witness.empty()) b.witness = Signal(spec, std::move(res.witness));
    return b;
}

/// Riesz-Thorin between the exact anchors (1,2) and (2,2): upper bound for
/// (p,2) with 1 <= p <= 2.
inline RestrictionBound restriction_norm_upper_interp(const IndexSet& Sigma,
                                                      const ExponentPair& e) {
    if (e.p.is_infinite() || e.p.value() < 1.0 || e.p.value() > 2.0 ||
        e.q.is_infinite() || e.q.value() != 2.0)
        throw std::invalid_argument(
            "restriction_norm_upper_interp: only 1 <= p <= 2, q = 2 supported");
    const double theta = 2.0 / e.p.value() - 1.0;
    double r22 = restriction_norm_exact(Sigma, {Exponent::finite(2), Exponent::finite(2)}).value;
    double r12 = restriction_norm_exact(Sigma, {Exponent::finite(1), Exponent::finite(2)}).value;
    RestrictionBound b;
    b.exponents = e;
    b.kind = BoundKind::upper;
    b.value = std::pow(r22, 1.0 - theta) * std::pow(r12, theta);
    return b;
}

/// Holder conversion rho_{r,s} = |Sigma|^{1/s-1/q} |G|^{1/p-1/r} rho_{p,q},
/// valid for r >= p, s <= q. The conversion is only an inequality, so exact
/// inputs degrade to upper bounds; lower bounds cannot be converted.
inline RestrictionBound holder_convert(const RestrictionBound& b, const ExponentPair& target,
                                       std::int64_t size_sigma, std::int64_t card) {
    if (b.kind == BoundKind::lower)
        throw std::invalid_argument("holder_convert: cannot convert a lower bound");
    const double inv_p = b.exponents.p.inv(), inv_q = b.exponents.q.inv();
    const double inv_r = target.p.inv(), inv_s = target.q.inv();
    if (inv_r > inv_p + 1e-15)
        throw std::invalid_argument("holder_convert: need r >= p");
    if (inv_s < inv_q - 1e-15)
        throw std::invalid_argument("holder_convert: need s <= q");
    RestrictionBound out;
    out.exponents = target;
    out.value = std::pow(double(size_sigma), inv_s - inv_q) *
                std::pow(double(card), inv_p - inv_r) * b.value;
    const bool identity = b.exponents.p == target.p && b.exponents.q == target.q;
    out.kind = identity ? b.kind : BoundKind::upper;
    out.normalized_C = out.value * std::sqrt(double(card)) / std::pow(double(size_sigma), inv_s);
    return out;
}

/// Additive energy Lambda(F) = #{(x,y,x',y') in F^4 : x+y = x'+y'},
/// computed as sum_z r(z)^2 with r(z) the pair-sum counts.
inline std::int64_t additive_energy(const IndexSet& F) {
    const GroupSpec& spec = F.spec();
    std::vector<std::int64_t> r(std::size_t(spec.cardinality()), 0);
    for (std::int64_t x : F.members())
        for (std::int64_t y : F.members())
            ++r[std::size_t(group_add(x, y, spec))];
    std::int64_t energy = 0;
    for (std::int64_t c : r) energy += c * c;
    return energy;
}

enum class EnergyMode { exact, greedy };

struct EnergyReport {
    IndexSet set;
    std::int64_t energy = 0;     // Lambda of the full set
    double max_ratio = 1.0;      // max over nonempty F of Lambda(F)/|F|^2
    BoundKind max_ratio_kind = BoundKind::exact; // exact or lower (greedy)
    IndexSet witness_subset;
};

namespace detail {

/// DFS over subsets with incremental pair-sum counts. visit(F, Lambda) is
/// called for every nonempty subset of the elements.
inline void subset_energy_scan(const std::vector<std::int64_t>& elems, const GroupSpec& spec,
                               const std::function<void(const std::vector<std::int64_t>&,
                                                        std::int64_t)>& visit) {
    std::vector<std::int64_t> counts(std::size_t(spec.cardinality()), 0);
    std::vector<std::int64_t> current;
    std::int64_t lambda = 0;

    auto add_elem = [&](std::int64_t x) {
        // new ordered pairs: (x,y) and (y,x) for y already present, plus (x,x)
        for (std::int64_t y : current) {
            std::int64_t z = group_add(x, y, spec);
            lambda += 4 * counts[std::size_t(z)] + 4; // delta r = 2
            counts[std::size_t(z)] += 2;
        }
        std::int64_t z = group_add(x, x, spec);
        lambda += 2 * counts[std::size_t(z)] + 1;
        counts[std::size_t(z)] += 1;
        current.push_back(x);
    };
    auto remove_elem = [&]() {
        std::int64_t x = current.back();
        current.pop_back();
        std::int64_t z = group_add(x, x, spec);
        counts[std::size_t(z)] -= 1;
        lambda -= 2 * counts[std::size_t(z)] + 1;
        for (std::int64_t y : current) {
            std::int64_t zz = group_add(x, y, spec);
            counts[std::size_t(zz)] -= 2;
            lambda -= 4 * counts[std::size_t(zz)] + 4;
        }
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t k) {
        if (k == elems.size()) return;
        dfs(k + 1); // without elems[k]
        add_elem(elems[k]);
        visit(current, lambda);
        dfs(k + 1); // with elems[k]
        remove_elem();
    };
    dfs(0);
}

} // namespace detail

/// max over nonempty F subset of Sigma of Lambda(F)/|F|^2, by exhaustive scan
/// (|Sigma| <= 20) or deterministic greedy growth from each singleton.
inline EnergyReport max_energy_ratio(const IndexSet& Sigma, EnergyMode mode) {
    EnergyReport rep{Sigma, additive_energy(Sigma), 1.0, BoundKind::exact, Sigma};
    if (Sigma.is_empty()) {
        rep.max_ratio = 0.0;
        rep.witness_subset = IndexSet::empty(Sigma.spec());
        rep.max_ratio_kind = mode == EnergyMode::exact ? BoundKind::exact : BoundKind::lower;
        return rep;
    }
    const GroupSpec& spec = Sigma.spec();
    double best = 0.0;
    std::vector<std::int64_t> best_set;
    auto offer = [&](const std::vector<std::int64_t>& F, std::int64_t lambda) {
        double ratio = double(lambda) / (double(F.size()) * double(F.size()));
        if (ratio > best + 1e-12 ||
            (ratio > best - 1e-12 && !best_set.empty() && F < best_set)) {
            best = ratio;
            best_set = F;
        }
    };

    if (mode == EnergyMode::exact) {
        if (Sigma.size() > 20)
            throw std::invalid_argument("max_energy_ratio: exact mode capped at |Sigma| = 20");
        detail::subset_energy_scan(Sigma.members(), spec, offer);
        rep.max_ratio_kind = BoundKind::exact;
    } else {
        // grow from each singleton, adding the element that maximizes the new
        // ratio; lowest flat index wins ties
        for (std::int64_t start : Sigma.members()) {
            std::vector<std::int64_t> F{start};
            offer(F, 1);
            std::vector<std::int64_t> pool;
            for (std::int64_t x : Sigma.members())
                if (x != start) pool.push_back(x);
            std::int64_t lambda = 1;
            std::vector<std::int64_t> counts(std::size_t(spec.cardinality()), 0);
            counts[std::size_t(group_add(start, start, spec))] = 1;
            while (!pool.empty()) {
                double cand_best = -1.0;
                std::size_t cand_idx = 0;
                std::int64_t cand_lambda = 0;
                for (std::size_t i = 0; i < pool.size(); ++i) {
                    std::int64_t x = pool[i];
                    std::int64_t dl = 0;
                    for (std::int64_t y : F) {
                        std::int64_t z = group_add(x, y, spec);
                        dl += 4 * counts[std::size_t(z)] + 4;
                        counts[std::size_t(z)] += 2;
                    }
                    std::int64_t z = group_add(x, x, spec);
                    dl += 2 * counts[std::size_t(z)] + 1;
                    // undo
                    for (std::int64_t y : F)
                        counts[std::size_t(group_add(x, y, spec))] -= 2;
                    double r = double(lambda + dl) /
                               (double(F.size() + 1) * double(F.size() + 1));
                    if (r > cand_best + 1e-12) {
                        cand_best = r;
                        cand_idx = i;
                        cand_lambda = lambda + dl;
                    }
                }
                std::int64_t x = pool[cand_idx];
                for (std::int64_t y : F) {
                    std::int64_t z = group_add(x, y, spec);
                    counts[std::size_t(z)] += 2;
                }
                counts[std::size_t(group_add(x, x, spec))] += 1;
                lambda = cand_lambda;
                F.push_back(x);
                std::sort(F.begin(), F.end());
                offer(F, lambda);
                pool.erase(pool.begin() + std::ptrdiff_t(cand_idx));
            }
        }
        rep.max_ratio_kind = BoundKind::lower;
    }
    rep.max_ratio = best;
    rep.witness_subset = IndexSet(spec, best_set);
    return rep;
}

/// rho_{4/3,2}(Sigma) = |G|^{-1/4} (max_F Lambda(F)/|F|^2)^{1/4}.
/// The combinatorial maximum is what the underlying quartic objective gives on
/// indicator coefficient vectors, so the value is a lower bound for the exact
/// (4/3,2) norm that general complex coefficients can exceed (e.g. Sigma =
/// {0,1,2} in Z_8: formula 8^{-1/4}(19/9)^{1/4}, exact 8^{-1/4}(15/7)^{1/4}).
inline RestrictionBound energy_restriction_constant(const IndexSet& Sigma,
                                                    const EnergyReport& ratio) {
    if (!(ratio.set == Sigma))
        throw std::invalid_argument("energy_restriction_constant: mismatched set");
    RestrictionBound b;
    b.exponents = {Exponent::finite(4.0 / 3.0), Exponent::finite(2.0)};
    b.value = std::pow(double(Sigma.spec().cardinality()), -0.25) *
              std::pow(ratio.max_ratio, 0.25);
    b.kind = BoundKind::formula;
    if (ratio.max_ratio_kind == BoundKind::exact) {
        b.caveat = "indicator-coefficient value; the exact norm can exceed it";
    } else {
        b.caveat = "ratio is a greedy lower bound; the formula value may undershoot";
    }
    b.normalized_C = b.value * std::sqrt(double(Sigma.spec().cardinality())) /
                     std::pow(double(Sigma.size()), 0.5);
    return b;
}

} // namespace apair
