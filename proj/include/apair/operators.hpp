#pragma once

// Time and frequency projections P_S, Q_Sigma, the operator norm ||P_S Q_Sigma||,
// exact annihilation constants and the weak-pair rank test.

#include "apair/fft.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <map>

namespace apair {

constexpr std::int64_t kDenseMandatoryCap = 256;
constexpr std::int64_t kDenseDefaultCap = 4096;
constexpr std::uint64_t kPowerIterationSeed = 0xA99;

/// P_S f = 1_S f.
inline Signal apply_P(const Signal& f, const IndexSet& S) {
    if (f.spec() != S.spec()) throw std::invalid_argument("apply_P: group mismatch");
    Signal out = Signal::zero(f.spec());
    for (std::int64_t i : S.members()) out.at(i) = f.at(i);
    return out;
}

/// Q_Sigma f = F^{-1} 1_Sigma F f.
inline Signal apply_Q(const Signal& f, const IndexSet& Sigma) {
    if (f.spec() != Sigma.spec()) throw std::invalid_argument("apply_Q: group mismatch");
    return idft(apply_P(dft(f), Sigma));
}

/// P_S Q_Sigma f.
inline Signal apply_PQ(const Signal& f, const IndexSet& S, const IndexSet& Sigma) {
    return apply_P(apply_Q(f, Sigma), S);
}

/// Submatrix of the DFT matrix: entry (i,j) = c * exp(-2pi i <rows[i], cols[j]> / N).
inline Eigen::MatrixXcd dft_submatrix(const GroupSpec& spec,
                                      const std::vector<std::int64_t>& rows,
                                      const std::vector<std::int64_t>& cols) {
    const double c = spec.normalization();
    const double base = -2.0 * std::numbers::pi / double(spec.modulus());
    Eigen::MatrixXcd M(std::ssize(rows), std::ssize(cols));
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            double ang = base * double(dot_mod(rows[std::size_t(i)], cols[std::size_t(j)], spec));
            M(i, j) = c * cplx(std::cos(ang), std::sin(ang));
        }
    }
    return M;
}

struct NormEstimate {
    enum class Method { power_iteration, dense_svd };
    double value = 0.0;
    Method method = Method::dense_svd;
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

struct NormOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    // force dense SVD / power iteration; unset picks dense below the mandatory cap
    std::optional<bool> use_dense;
    std::int64_t dense_cap = kDenseDefaultCap;
    std::uint64_t seed = kPowerIterationSeed;
};

namespace detail {

inline NormEstimate operator_norm_dense(const IndexSet& S, const IndexSet& Sigma) {
    NormEstimate est;
    est.method = NormEstimate::Method::dense_svd;
    if (S.is_empty() || Sigma.is_empty()) return est;
    Eigen::MatrixXcd M = dft_submatrix(S.spec(), S.members(), Sigma.members());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    est.value = svd.singularValues()(0);
    if (est.value > 1.0 + 1e-9)
        throw std::logic_error("operator_norm: dense singular value exceeds 1");
    est.value = std::min(est.value, 1.0);
    return est;
}

/// Power iteration on the Hermitian operator P_S Q_Sigma P_S restricted to
/// signals supported on S.
inline NormEstimate operator_norm_power(const IndexSet& S, const IndexSet& Sigma,
                                        const NormOptions& opts) {
    NormEstimate est;
    est.method = NormEstimate::Method::power_iteration;
    if (S.is_empty() || Sigma.is_empty()) return est;
    if (!(opts.tol > 0)) throw std::invalid_argument("operator_norm: tol must be positive");

    std::mt19937_64 rng(opts.seed);
    Signal x = Signal::zero(S.spec());
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::int64_t i : S.members()) x.at(i) = cplx(g(rng), g(rng));
    double nx = l2_norm(x);
    if (nx == 0.0) return est;
    x = cplx(1.0 / nx) * x;

    double sigma_prev = -1.0;
    est.converged = false;
    for (int k = 1; k <= opts.max_iter; ++k) {
        Signal y = apply_P(apply_Q(x, Sigma), S);
        // Rayleigh quotient of the Hermitian iterate
        double lambda = 0.0;
        for (std::int64_t i : S.members())
            lambda += (std::conj(x.at(i)) * y.at(i)).real();
        lambda = std::max(lambda, 0.0);
        double sigma = std::sqrt(lambda);
        est.iterations = k;
        est.residual = (sigma_prev < 0) ? sigma : std::abs(sigma - sigma_prev);
        est.value = sigma;
        double ny = l2_norm(y);
        if (ny < 1e-300) {
            est.value = 0.0;
            est.residual = 0.0;
            est.converged = true;
            break;
        }
        if (sigma_prev >= 0 && est.residual <= opts.tol && k >= 3) {
            est.converged = true;
            break;
        }
        sigma_prev = sigma;
        x = cplx(1.0 / ny) * y;
    }
    if (est.value > 1.0 + 1e-9)
        throw std::logic_error("operator_norm: power iterate exceeds 1");
    est.value = std::min(est.value, 1.0);
    return est;
}

} // namespace detail

/// ||P_S Q_Sigma|| on L^2(G). Dense SVD is mandatory below cardinality 257,
/// available on demand up to dense_cap; power iteration otherwise.
inline NormEstimate operator_norm(const IndexSet& S, const IndexSet& Sigma,
                                  const NormOptions& opts = {}) {
    if (S.spec() != Sigma.spec()) throw std::invalid_argument("operator_norm: group mismatch");
    const std::int64_t card = S.spec().cardinality();
    bool dense;
    if (opts.use_dense.has_value()) {
        dense = *opts.use_dense;
        if (dense && card > opts.dense_cap)
            throw std::invalid_argument("operator_norm: dense SVD requested above dense_cap");
    } else {
        dense = card <= kDenseMandatoryCap;
    }
    return dense ? detail::operator_norm_dense(S, Sigma)
                 : detail::operator_norm_power(S, Sigma, opts);
}

/// C(S,Sigma) = 1/sqrt(1 - sigma^2); +inf once 1 - sigma^2 <= 1e-14.
inline double exact_annihilation_constant(double sigma) {
    if (sigma < -1e-12 || sigma > 1.0 + 1e-12)
        throw std::invalid_argument("exact_annihilation_constant: sigma outside [0,1]");
    sigma = std::clamp(sigma, 0.0, 1.0);
    const double gap = 1.0 - sigma * sigma;
    if (gap <= 1e-14) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(gap);
}

struct WeakCheckResult {
    bool annihilating = false;
    double min_singular = 0.0;
};

/// (S,Sigma) is a weak annihilating pair iff the |Sigma^c| x |S| DFT submatrix
/// has full column rank: no nonzero f supported on S has spectrum inside Sigma.
inline WeakCheckResult weak_annihilation_check(const IndexSet& S, const IndexSet& Sigma) {
    if (S.spec() != Sigma.spec())
        throw std::invalid_argument("weak_annihilation_check: group mismatch");
    if (S.is_empty())
        return {true, std::numeric_limits<double>::infinity()};
    IndexSet sigma_c = Sigma.complement();
    if (sigma_c.is_empty())
        return {false, 0.0};
    if (sigma_c.size() < S.size())
        return {false, 0.0};
    Eigen::MatrixXcd M = dft_submatrix(S.spec(), sigma_c.members(), S.members());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto& sv = svd.singularValues();
    double top = sv(0);
    double low = sv(sv.size() - 1);
    return {low > 1e-10 * top, low};
}

struct TheoremBoundEntry {
    std::string theorem_id;
    bool condition_satisfied = false;
    std::optional<double> bound;
};

struct AnnihilationReport {
    NormEstimate sigma;
    double exact_constant = 1.0; // +inf when sigma = 1 within tolerance
    std::vector<TheoremBoundEntry> theorem_bounds;
};

/// Exact constant plus the closed-form theorem bounds that apply to (S,Sigma)
/// knowing only the sizes.
inline AnnihilationReport annihilation_report(const IndexSet& S, const IndexSet& Sigma,
                                              const NormOptions& opts = {}) {
    AnnihilationReport rep;
    rep.sigma = operator_norm(S, Sigma, opts);
    rep.exact_constant = exact_annihilation_constant(rep.sigma.value);

    const double card = double(S.spec().cardinality());
    const double product = double(S.size()) * double(Sigma.size());
    {
        TheoremBoundEntry e;
        e.theorem_id = "ghobber-jaming";
        e.condition_satisfied = product < card;
        if (e.condition_satisfied)
            e.bound = 1.0 + 1.0 / (1.0 - std::sqrt(product / card));
        rep.theorem_bounds.push_back(e);
    }
    {
        // Theorem th:IMquant at (1,inf) with rho = |G|^{-1/2}
        TheoremBoundEntry e;
        e.theorem_id = "thm-2.1";
        double A = std::sqrt(product / card);
        e.condition_satisfied = A < 1.0;
        if (e.condition_satisfied) e.bound = 1.0 / (1.0 - A);
        rep.theorem_bounds.push_back(e);
    }
    return rep;
}

} // namespace apair
