#pragma once

// Closed-form calculators for the annihilation theorem conditions and
// constants, plus the Euclidean annulus scaling formulas.

#include "apair/group.hpp"

#include <map>

namespace apair {

struct TheoremBound {
    std::string theorem_id;
    double condition_value = 0.0;
    bool condition_satisfied = false;
    std::optional<double> constant;
    std::map<std::string, double> inputs;
};

/// General restriction-to-annihilation bound, 1 <= p <= 2 <= q:
/// condition A = rho * m(S)^{1/p-1/2} * m(Sigma)^{1/2-1/q} < 1, constant 1/(1-A).
inline TheoremBound bound_general(double rho, double mS, double mSigma, const ExponentPair& e) {
    if (e.p.is_infinite() || e.p.value() > 2.0)
        throw std::invalid_argument("bound_general: need 1 <= p <= 2");
    if (!e.q.is_infinite() && e.q.value() < 2.0)
        throw std::invalid_argument("bound_general: need q >= 2");
    if (!(rho > 0) || !(mS > 0) || !(mSigma > 0))
        throw std::invalid_argument("bound_general: rho, m(S), m(Sigma) must be positive");
    TheoremBound b;
    b.theorem_id = "thm-2.1";
    b.inputs = {{"rho", rho}, {"mS", mS}, {"mSigma", mSigma},
                {"p", e.p.value()}, {"q", e.q.is_infinite() ? 0.0 : e.q.value()}};
    const double A = rho * std::pow(mS, e.p.inv() - 0.5) * std::pow(mSigma, 0.5 - e.q.inv());
    b.condition_value = A;
    b.condition_satisfied = A < 1.0;
    if (b.condition_satisfied) b.constant = 1.0 / (1.0 - A);
    return b;
}

/// |S||Sigma| < |G| gives a strong pair with constant 1 + 1/(1 - sqrt(|S||Sigma|/|G|)).
inline TheoremBound bound_ghobber_jaming(std::int64_t sS, std::int64_t sSigma,
                                         std::int64_t cardG) {
    if (sS <= 0 || sSigma <= 0 || cardG <= 0)
        throw std::invalid_argument("bound_ghobber_jaming: sizes must be positive");
    TheoremBound b;
    b.theorem_id = "ghobber-jaming";
    b.inputs = {{"sS", double(sS)}, {"sSigma", double(sSigma)}, {"cardG", double(cardG)}};
    b.condition_value = double(sS) * double(sSigma) / double(cardG);
    b.condition_satisfied = sS * sSigma < cardG;
    if (b.condition_satisfied)
        b.constant = 1.0 + 1.0 / (1.0 - std::sqrt(b.condition_value));
    return b;
}

/// Finite-group bound for 1 <= p, q <= 2:
/// condition rho |S|^{1/p} < |G|^{1/q-1/2};
/// constant 1 + |S|^{1/2} |G \ Sigma|^{1/q-1/2} / (|G|^{1/q-1/2} - rho |S|^{1/p}).
inline TheoremBound bound_finite(double rho, std::int64_t sS, std::int64_t sSigma,
                                 std::int64_t cardG, const ExponentPair& e) {
    if (e.p.is_infinite() || e.p.value() > 2.0 || e.q.is_infinite() || e.q.value() > 2.0)
        throw std::invalid_argument("bound_finite: need 1 <= p, q <= 2 (q > 2 belongs to bound_general)");
    if (sS <= 0 || sSigma < 0 || cardG <= 0)
        throw std::invalid_argument("bound_finite: bad sizes");
    TheoremBound b;
    b.theorem_id = "thm-3.1";
    b.inputs = {{"rho", rho}, {"sS", double(sS)}, {"sSigma", double(sSigma)},
                {"cardG", double(cardG)}, {"p", e.p.value()}, {"q", e.q.value()}};
    const double expo = e.q.inv() - 0.5;
    const double lhs = rho * std::pow(double(sS), e.p.inv());
    const double rhs = std::pow(double(cardG), expo);
    b.condition_value = lhs / rhs;
    b.condition_satisfied = lhs < rhs;
    if (b.condition_satisfied) {
        const double complement = double(cardG - sSigma);
        const double comp_pow = complement == 0.0 ? (expo == 0.0 ? 1.0 : 0.0)
                                                  : std::pow(complement, expo);
        b.constant = 1.0 + std::sqrt(double(sS)) * comp_pow / (rhs - lhs);
    }
    return b;
}

/// Energy pair bound: condition max_ratio * |E| < N^d;
/// constant 1 + 1/(1 - (max_ratio * |E| / N^d)^{1/4}).
/// condition_value carries A = (max_ratio |E| / N^d)^{1/4} for cross-checking
/// against bound_general at (4/3, 2).
inline TheoremBound bound_energy_pair(double max_ratio, std::int64_t sE, std::int64_t cardG) {
    if (!(max_ratio >= 1.0))
        throw std::invalid_argument("bound_energy_pair: max_ratio >= 1 required");
    TheoremBound b;
    b.theorem_id = "thm-3.9";
    b.inputs = {{"max_ratio", max_ratio}, {"sE", double(sE)}, {"cardG", double(cardG)}};
    const double product = max_ratio * double(sE);
    const double A = std::pow(product / double(cardG), 0.25);
    b.condition_value = A;
    b.condition_satisfied = product < double(cardG);
    if (b.condition_satisfied) b.constant = 1.0 + 1.0 / (1.0 - A);
    return b;
}

struct LpBound {
    bool condition_satisfied = false;
    double condition_value = 0.0; // B = |E|^{2-p} |S| C^p / N^d
    std::optional<double> coeff_freq;
    std::optional<double> coeff_time;
};

/// L^{p'} bound: with B = |E|^{2-p} |S| C^p / N^d < 1,
///   ||f||_{p'} <= coeff_freq ||f^||_{L^p(S^c)} + coeff_time ||f||_{L^{p'}(E^c)}
/// where coeff_freq = N^{-d(1/2-1/p')} / (1 - B^{1/p}), coeff_time = 1 + 1/(1 - B^{1/p}).
inline LpBound bound_lp(std::int64_t sE, std::int64_t sS, double C_pq, double p,
                        std::int64_t cardG) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("bound_lp: need 1 <= p <= 2");
    if (!(C_pq > 0)) throw std::invalid_argument("bound_lp: C must be positive");
    LpBound b;
    const double B = std::pow(double(sE), 2.0 - p) * double(sS) * std::pow(C_pq, p) /
                     double(cardG);
    b.condition_value = B;
    b.condition_satisfied = B < 1.0;
    if (b.condition_satisfied) {
        const double Bp = std::pow(B, 1.0 / p);
        const double inv_pprime = 1.0 - 1.0 / p;
        b.coeff_freq = std::pow(double(cardG), -(0.5 - inv_pprime)) / (1.0 - Bp);
        b.coeff_time = 1.0 + 1.0 / (1.0 - Bp);
    }
    return b;
}

/// Bourgain random-set bound: condition |S| < B_q^{-2q/(q-2)} |G|^{q/(q-2)};
/// constant 1/(1 - B_q |G|^{-1/2} |S|^{1/2-1/q}); Sigma-size rule ceil(|G|^{2/q}).
inline TheoremBound bound_bourgain_random(double B_q, double q, std::int64_t cardG,
                                          std::int64_t sS) {
    if (!(q > 2.0)) throw std::invalid_argument("bound_bourgain_random: need q > 2");
    if (!(B_q > 0)) throw std::invalid_argument("bound_bourgain_random: need B_q > 0");
    TheoremBound b;
    b.theorem_id = "bourgain-random";
    const double A = B_q * std::pow(double(cardG), -0.5) *
                     std::pow(double(sS), 0.5 - 1.0 / q);
    b.condition_value = A;
    b.condition_satisfied = A < 1.0;
    if (b.condition_satisfied) b.constant = 1.0 / (1.0 - A);
    const double raw = std::pow(double(cardG), 2.0 / q);
    b.inputs = {{"B_q", B_q}, {"q", q}, {"cardG", double(cardG)}, {"sS", double(sS)},
                {"sigma_size", std::ceil(raw - 1e-9)}};
    return b;
}

inline std::int64_t bourgain_sigma_size(std::int64_t cardG, double q) {
    if (!(q > 2.0)) throw std::invalid_argument("bourgain_sigma_size: need q > 2");
    return std::int64_t(std::ceil(std::pow(double(cardG), 2.0 / q) - 1e-9));
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Tao's condition on Z/pZ, p prime: |S| + |Sigma| < p + 1 forces a weak pair.
inline bool tao_condition(std::int64_t prime_p, std::int64_t sS, std::int64_t sSigma) {
    if (!is_prime(prime_p))
        throw std::invalid_argument("tao_condition: modulus must be prime");
    return sS + sSigma < prime_p + 1;
}

struct AnnulusParams {
    std::int64_t d = 2;        // ambient dimension, >= 2
    double R = 1.0;            // sphere radius
    double delta = 0.1;        // shell thickness
    double C_surface = 1.0;    // user-supplied C_{p,q}(S), no default semantics
    double kappa = 1.0;        // user-supplied kappa_d
    double measure_S = 1.0;    // |S|
};

struct AnnulusResult {
    double rho = 0.0;              // rho_{p,q}((R S)_delta)
    double volume = 0.0;           // exact shell volume
    double volume_asymptotic = 0.0;// R^{d-1} delta
    double stein_tomas_p = 0.0;    // 2(d+1)/(d+3)
    double condition_value = 0.0;  // kappa R^{(d-1)/2} delta^{(d+1)/2} |S|
    std::optional<double> constant;
    double delta_choice = 0.0;     // (2 kappa |S|)^{-2/(d+1)} R^{-(d-1)/(d+1)}
    std::string condition_note =
        "condition read with delta (the printed statement's 'd' is taken as a typo)";
};

/// Annulus A(R,delta) around the sphere R*S^{d-1}:
/// rho_{p,q} = C_{p,q}(S) R^{d(1/p+1/q-1)} (delta/R)^{1/q};
/// annihilating condition kappa_d R^{(d-1)/2} delta^{(d+1)/2} |S| < 1 with
/// constant 1 + 1/(1 - condition); delta_choice pins the condition at 1/2.
inline AnnulusResult annulus_calculator(const AnnulusParams& a, const ExponentPair& e) {
    if (a.d < 2) throw std::invalid_argument("annulus_calculator: need d >= 2");
    if (!(a.R > 0) || !(a.delta > 0) || !(a.C_surface > 0) || !(a.kappa > 0) ||
        !(a.measure_S > 0))
        throw std::invalid_argument("annulus_calculator: parameters must be positive");
    if (a.delta >= 2.0 * a.R)
        throw std::invalid_argument("annulus_calculator: delta >= 2R degenerates the annulus");
    AnnulusResult r;
    const double d = double(a.d);
    r.stein_tomas_p = 2.0 * (d + 1.0) / (d + 3.0);
    r.rho = a.C_surface * std::pow(a.R, d * (e.p.inv() + e.q.inv() - 1.0)) *
            std::pow(a.delta / a.R, e.q.inv());
    const double omega = std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    r.volume = omega * (std::pow(a.R + a.delta / 2.0, d) - std::pow(a.R - a.delta / 2.0, d));
    r.volume_asymptotic = std::pow(a.R, d - 1.0) * a.delta;
    r.condition_value = a.kappa * std::pow(a.R, (d - 1.0) / 2.0) *
                        std::pow(a.delta, (d + 1.0) / 2.0) * a.measure_S;
    if (r.condition_value < 1.0)
        r.constant = 1.0 + 1.0 / (1.0 - r.condition_value);
    r.delta_choice = std::pow(2.0 * a.kappa * a.measure_S, -2.0 / (d + 1.0)) *
                     std::pow(a.R, -(d - 1.0) / (d + 1.0));
    return r;
}

} // namespace apair
