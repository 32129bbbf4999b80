#pragma once

// Concentration levels, strong-inequality checks and Lambda_q random-set
// trials. The batch sweep driver lives in sweep.hpp.

#include "apair/bounds.hpp"
#include "apair/recovery.hpp"
#include "apair/restriction.hpp"

namespace apair {

struct ConcentrationReport {
    double eps_T = 0.0;       // ||f||_{L2(G\S)} / ||f||_2
    double eps_Omega = 0.0;   // ||f^||_{L2(G^\Sigma)} / ||f^||_2
    double lower_bound = 0.0; // 1/C(S,Sigma)
    bool satisfied = false;   // eps_T + eps_Omega >= 1/C - 1e-9
};

inline ConcentrationReport concentration_levels(const Signal& f, const IndexSet& S,
                                                const IndexSet& Sigma, double C) {
    if (f.spec() != S.spec() || f.spec() != Sigma.spec())
        throw std::invalid_argument("concentration_levels: group mismatch");
    const double norm = l2_norm(f);
    if (norm == 0.0) throw std::invalid_argument("concentration_levels: zero signal");
    ConcentrationReport rep;
    IndexSet s_c = S.complement();
    IndexSet sigma_c = Sigma.complement();
    rep.eps_T = l2_norm(f, &s_c) / norm;
    Signal fhat = dft(f);
    rep.eps_Omega = l2_norm(fhat, &sigma_c) / l2_norm(fhat);
    rep.lower_bound = std::isinf(C) ? 0.0 : 1.0 / C;
    rep.satisfied = rep.eps_T + rep.eps_Omega >= rep.lower_bound - 1e-9;
    return rep;
}

struct StrongInequalityCheck {
    double lhs = 0.0;   // ||f||_2
    double rhs = 0.0;   // C (||f||_{L2(S^c)} + ||f^||_{L2(Sigma^c)})
    double slack = 0.0; // rhs - lhs
};

inline StrongInequalityCheck verify_strong_inequality(const Signal& f, const IndexSet& S,
                                                      const IndexSet& Sigma, double C) {
    if (f.spec() != S.spec() || f.spec() != Sigma.spec())
        throw std::invalid_argument("verify_strong_inequality: group mismatch");
    StrongInequalityCheck chk;
    chk.lhs = l2_norm(f);
    IndexSet s_c = S.complement();
    IndexSet sigma_c = Sigma.complement();
    Signal fhat = dft(f);
    chk.rhs = C * (l2_norm(f, &s_c) + l2_norm(fhat, &sigma_c));
    chk.slack = chk.rhs - chk.lhs;
    return chk;
}

/// Uniform random subset of given size over flat indices (Fisher-Yates prefix).
inline IndexSet random_subset(const GroupSpec& spec, std::int64_t size, std::mt19937_64& rng) {
    if (size < 0 || size > spec.cardinality())
        throw std::invalid_argument("random_subset: bad size");
    std::vector<std::int64_t> pool(std::size_t(spec.cardinality()));
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = std::int64_t(i);
    for (std::int64_t i = 0; i < size; ++i) {
        std::uniform_int_distribution<std::int64_t> pick(i, spec.cardinality() - 1);
        std::swap(pool[std::size_t(i)], pool[std::size_t(pick(rng))]);
    }
    pool.resize(std::size_t(size));
    return IndexSet(spec, std::move(pool));
}

struct LambdaQTrial {
    IndexSet Sigma;
    double synthesis_norm = 0.0; // ascent lower bound for ||T||, T a -> sum a_chi chi
    double analysis_norm = 0.0;  // ascent lower bound for ||T*||, T* f = |G|^{1/2} f^|_Sigma
    double duality_gap = 0.0;    // |syn - ana| / max(syn, ana)
};

/// One Bourgain-style trial: sample Sigma of size ceil(|G|^{2/q}) (or the given
/// size) and estimate the synthesis/analysis operator norms by ascent. Both
/// estimate the same operator norm; the gap measures ascent quality. On a
/// single character the synthesis norm is exactly |G|^{1/q}.
inline LambdaQTrial lambda_q_trial(const GroupSpec& spec, double q, std::uint64_t seed,
                                   std::optional<std::int64_t> sigma_size = std::nullopt,
                                   const AscentOptions& ascent = {}) {
    if (!(q > 2.0)) throw std::invalid_argument("lambda_q_trial: need q > 2");
    std::int64_t size = sigma_size.value_or(bourgain_sigma_size(spec.cardinality(), q));
    if (size > spec.cardinality())
        throw std::invalid_argument("lambda_q_trial: sigma_size exceeds |G|");
    std::mt19937_64 rng(seed);
    IndexSet Sigma = random_subset(spec, size, rng);

    const double root_card = std::sqrt(double(spec.cardinality()));
    const auto& mem = Sigma.members();
    AscentOptions opts = ascent;
    opts.seed = seed ^ 0x9e3779b97f4a7c15ull;

    // synthesis: T a = sum_{chi in Sigma} a_chi chi = |G|^{1/2} idft(embed a)
    auto syn_forward = [&](const std::vector<cplx>& a) {
        Signal emb = Signal::zero(spec);
        for (std::size_t i = 0; i < mem.size(); ++i) emb.at(mem[i]) = a[i];
        std::vector<cplx> out = idft(emb).values();
        for (cplx& v : out) v *= root_card;
        return out;
    };
    auto syn_adjoint = [&](const std::vector<cplx>& y) {
        Signal fy = dft(Signal(spec, y));
        std::vector<cplx> out(mem.size());
        for (std::size_t i = 0; i < mem.size(); ++i) out[i] = root_card * fy.at(mem[i]);
        return out;
    };
    LambdaQTrial trial{Sigma};
    trial.synthesis_norm =
        ascent_lp_lq(mem.size(), syn_forward, syn_adjoint, Exponent::finite(2.0),
                     Exponent::finite(q), opts)
            .value;

    // analysis: T* f = |G|^{1/2} (f^(chi))_{chi in Sigma}, L^{q'} -> l^2
    const Exponent qprime = Exponent::finite(q).conjugate();
    trial.analysis_norm =
        ascent_lp_lq(std::size_t(spec.cardinality()), syn_adjoint, syn_forward, qprime,
                     Exponent::finite(2.0), opts)
            .value;

    double top = std::max(trial.synthesis_norm, trial.analysis_norm);
    trial.duality_gap = top == 0.0 ? 0.0 : std::abs(trial.synthesis_norm - trial.analysis_norm) / top;
    return trial;
}

} // namespace apair
