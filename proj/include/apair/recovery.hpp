#pragma once

// Iterative Projection Method: recover a signal with known spectral support
// from reliable samples, plus contraction diagnostics and a small exhaustive
// uniqueness oracle.

#include "apair/operators.hpp"

namespace apair {

struct RecoveryProblem {
    Signal measured;       // values meaningful only on T
    IndexSet T;            // reliable sample locations
    IndexSet Upsilon;      // known spectral support
    double tol = 1e-10;
    int max_iter = 10000;
};

struct RecoveryResult {
    Signal estimate;
    int iterations = 0;
    std::vector<double> residual_history; // ||s_{j+1} - s_j||_2
    double contraction_rate = 0.0;        // ||P_{G\T} Q_Upsilon||
    bool converged = false;
    double measurement_mismatch = 0.0;    // ||estimate - mu||_{l2(T)} at the end
};

/// rate = ||P_{G\T} Q_Upsilon||; rate < 1 gives geometric convergence.
inline double contraction_rate(const IndexSet& T, const IndexSet& Upsilon,
                               const NormOptions& opts = {}) {
    return operator_norm(T.complement(), Upsilon, opts).value;
}

/// s_0 = mu 1_T; nu = F^{-1}[F[s_j] 1_Upsilon]; s_{j+1} = mu 1_T + nu 1_{G\T}.
inline RecoveryResult iterative_projection(const RecoveryProblem& prob) {
    const GroupSpec& spec = prob.measured.spec();
    if (prob.T.spec() != spec || prob.Upsilon.spec() != spec)
        throw std::invalid_argument("iterative_projection: group mismatch");
    if (prob.T.is_empty() || prob.Upsilon.is_empty())
        throw std::invalid_argument("iterative_projection: T and Upsilon must be nonempty");
    if (!(prob.tol > 0)) throw std::invalid_argument("iterative_projection: tol must be positive");

    const IndexSet unknown = prob.T.complement();
    Signal s = apply_P(prob.measured, prob.T);
    RecoveryResult res{Signal::zero(spec)};

    auto project_spectrum = [&](const Signal& x) { return apply_Q(x, prob.Upsilon); };

    Signal nu = project_spectrum(s);
    for (int j = 0; j < prob.max_iter; ++j) {
        Signal next = apply_P(prob.measured, prob.T) + apply_P(nu, unknown);
        double residual = l2_norm(next - s);
        res.residual_history.push_back(residual);
        res.iterations = j + 1;
        s = std::move(next);
        if (residual <= prob.tol) {
            res.converged = true;
            break;
        }
        nu = project_spectrum(s);
    }
    res.estimate = project_spectrum(s);
    Signal mismatch = apply_P(res.estimate - prob.measured, prob.T);
    res.measurement_mismatch = l2_norm(mismatch);
    res.contraction_rate = contraction_rate(prob.T, prob.Upsilon);
    return res;
}

struct UniquenessResult {
    bool unique = true;
    std::optional<std::pair<Signal, Signal>> witness; // aliasing pair when not unique
};

namespace detail {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / (n - k + i)) return std::numeric_limits<std::int64_t>::max();
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace detail

/// Every t-sparse signal is determined by its samples on T iff (G\T, Upsilon')
/// is weakly annihilating for every spectral support Upsilon' of size 2t
/// (smaller supports are covered by monotonicity). Exhaustive below |G| <= 64.
inline UniquenessResult sparse_uniqueness_oracle(const IndexSet& T, std::int64_t t) {
    const GroupSpec& spec = T.spec();
    const std::int64_t card = spec.cardinality();
    if (t < 0) throw std::invalid_argument("sparse_uniqueness_oracle: t >= 0 required");
    if (t == 0) return {true, std::nullopt};
    if (card > 64)
        throw std::invalid_argument("sparse_uniqueness_oracle: exhaustive scope is |G| <= 64");
    const std::int64_t m = std::min<std::int64_t>(2 * t, card);
    if (detail::binomial(card, m) > 1000000)
        throw std::invalid_argument("sparse_uniqueness_oracle: combinatorial cap exceeded");

    const IndexSet S = T.complement();
    if (S.is_empty()) return {true, std::nullopt};

    std::vector<std::int64_t> comb(static_cast<std::size_t>(m), 0);
    for (std::int64_t i = 0; i < m; ++i) comb[std::size_t(i)] = i;
    while (true) {
        IndexSet upsilon(spec, comb);
        WeakCheckResult chk = weak_annihilation_check(S, upsilon);
        if (!chk.annihilating) {
            // reconstruct a kernel signal: f supported on S with spectrum in
            // Upsilon', split its spectrum into two halves of size <= t
            IndexSet sigma_c = upsilon.complement();
            Signal f = Signal::zero(spec);
            if (sigma_c.is_empty()) {
                f.at(S.members().front()) = 1.0; // Upsilon' is all of the dual group
            } else {
                Eigen::MatrixXcd M = dft_submatrix(spec, sigma_c.members(), S.members());
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
                Eigen::VectorXcd v = svd.matrixV().col(svd.matrixV().cols() - 1);
                for (std::int64_t i = 0; i < S.size(); ++i)
                    f.at(S.members()[std::size_t(i)]) = v(i);
            }
            Signal fhat = dft(f);
            std::vector<std::int64_t> first_half(
                comb.begin(), comb.begin() + std::ptrdiff_t(std::min(t, m)));
            Signal s1_hat = apply_P(fhat, IndexSet(spec, first_half));
            Signal s1 = idft(s1_hat);
            Signal s2 = s1 - f; // spectrum lives in the second half, agrees with s1 on T
            return {false, std::make_pair(std::move(s1), std::move(s2))};
        }
        // next combination
        std::int64_t i = m - 1;
        while (i >= 0 && comb[std::size_t(i)] == card - m + i) --i;
        if (i < 0) break;
        ++comb[std::size_t(i)];
        for (std::int64_t j = i + 1; j < m; ++j)
            comb[std::size_t(j)] = comb[std::size_t(j - 1)] + 1;
    }
    return {true, std::nullopt};
}

} // namespace apair
