#pragma once

// Batch experiment driver: JSON-lines records per trial plus a CSV summary.

#include "apair/io.hpp"

#include <map>
#include <sstream>

namespace apair {

enum class SweepKind { ms_vs_exact, energy_vs_exact, bourgain, recovery_rate };

inline SweepKind sweep_kind_from_string(const std::string& s) {
    if (s == "ms-vs-exact") return SweepKind::ms_vs_exact;
    if (s == "energy-vs-exact") return SweepKind::energy_vs_exact;
    if (s == "bourgain") return SweepKind::bourgain;
    if (s == "recovery-rate") return SweepKind::recovery_rate;
    throw std::invalid_argument("unknown sweep kind: " + s);
}

inline const char* to_string(SweepKind k) {
    switch (k) {
    case SweepKind::ms_vs_exact: return "ms-vs-exact";
    case SweepKind::energy_vs_exact: return "energy-vs-exact";
    case SweepKind::bourgain: return "bourgain";
    case SweepKind::recovery_rate: return "recovery-rate";
    }
    return "?";
}

struct ExperimentConfig {
    GroupSpec spec{1, 1};
    int trials = 1;
    std::uint64_t seed = 0;
    std::map<std::string, double> parameters; // q, set sizes, tolerance
    std::string output_path;                  // JSONL; summary goes to <path>.summary.csv
};

namespace detail {

struct SummaryAccumulator {
    std::vector<double> values;
    int pass = 0, total = 0;

    void add(double v, bool ok) {
        values.push_back(v);
        pass += ok ? 1 : 0;
        ++total;
    }

    double median() {
        if (values.empty()) return 0.0;
        std::vector<double> v(values);
        std::sort(v.begin(), v.end());
        std::size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }
    double min() { return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end()); }
    double max() { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }
};

inline json trial_header(const ExperimentConfig& cfg, int trial, std::uint64_t seed) {
    return json{{"trial", trial},
                {"seed", seed},
                {"group", json{{"N", cfg.spec.modulus()}, {"d", cfg.spec.dimension()}}}};
}

} // namespace detail

/// Runs the sweep; one JSON-lines record per trial in trial-index order plus a
/// CSV summary with fixed columns kind,metric,count,median,min,max,pass_rate.
/// Deterministic for a fixed config: per-trial seeds are seed + trial index.
inline void run_sweep(const ExperimentConfig& cfg, SweepKind kind) {
    if (cfg.trials < 1) throw std::invalid_argument("run_sweep: trials >= 1 required");
    std::ofstream out(cfg.output_path);
    if (!out) throw std::runtime_error("run_sweep: cannot write " + cfg.output_path);

    const std::int64_t card = cfg.spec.cardinality();
    detail::SummaryAccumulator acc;
    std::string metric;

    auto param = [&](const std::string& name, double fallback) {
        auto it = cfg.parameters.find(name);
        return it == cfg.parameters.end() ? fallback : it->second;
    };

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = cfg.seed + std::uint64_t(trial);
        std::mt19937_64 rng(seed);
        json rec = detail::trial_header(cfg, trial, seed);

        switch (kind) {
        case SweepKind::ms_vs_exact: {
            metric = "exact_constant";
            std::uniform_int_distribution<std::int64_t> size_s(1, std::max<std::int64_t>(1, card / 2));
            std::int64_t sS = size_s(rng);
            std::int64_t max_sigma = std::max<std::int64_t>(1, (card - 1) / sS);
            std::uniform_int_distribution<std::int64_t> size_sig(1, max_sigma);
            std::int64_t sSig = size_sig(rng);
            IndexSet S = random_subset(cfg.spec, sS, rng);
            IndexSet Sigma = random_subset(cfg.spec, sSig, rng);
            AnnihilationReport rep = annihilation_report(S, Sigma);
            TheoremBound gj = bound_ghobber_jaming(sS, sSig, card);
            bool dominated = !gj.condition_satisfied ||
                             rep.exact_constant <= *gj.constant + 1e-9;
            rec["sets"] = json{{"S", S.members()}, {"Sigma", Sigma.members()}};
            rec["values"] = json{{"sigma", rep.sigma.value},
                                 {"exact_constant",
                                  std::isinf(rep.exact_constant) ? json("inf")
                                                                 : json(rep.exact_constant)},
                                 {"ghobber_jaming",
                                  gj.constant ? json(*gj.constant) : json()}};
            rec["flags"] = json{{"condition", gj.condition_satisfied}, {"dominated", dominated}};
            acc.add(std::isinf(rep.exact_constant) ? 1e308 : rep.exact_constant, dominated);
            break;
        }
        case SweepKind::energy_vs_exact: {
            metric = "energy_constant";
            std::int64_t max_sigma = std::int64_t(param("sigma_size", 4));
            std::uniform_int_distribution<std::int64_t> size_sig(1, std::min<std::int64_t>(max_sigma, 12));
            std::int64_t sSig = size_sig(rng);
            std::uniform_int_distribution<std::int64_t> size_e(1, std::max<std::int64_t>(1, card / (2 * sSig)));
            std::int64_t sE = size_e(rng);
            IndexSet Sigma = random_subset(cfg.spec, sSig, rng);
            IndexSet E = random_subset(cfg.spec, sE, rng);
            EnergyReport er = max_energy_ratio(Sigma, EnergyMode::exact);
            TheoremBound eb = bound_energy_pair(er.max_ratio, sE, card);
            AnnihilationReport rep = annihilation_report(E, Sigma);
            bool dominated = !eb.condition_satisfied ||
                             rep.exact_constant <= *eb.constant + 1e-9;
            rec["sets"] = json{{"E", E.members()}, {"Sigma", Sigma.members()}};
            rec["values"] = json{{"max_ratio", er.max_ratio},
                                 {"energy_constant", eb.constant ? json(*eb.constant) : json()},
                                 {"exact_constant",
                                  std::isinf(rep.exact_constant) ? json("inf")
                                                                 : json(rep.exact_constant)}};
            rec["flags"] = json{{"condition", eb.condition_satisfied}, {"dominated", dominated}};
            acc.add(eb.constant ? *eb.constant : 0.0, dominated);
            break;
        }
        case SweepKind::bourgain: {
            metric = "synthesis_norm";
            double q = param("q", 4.0);
            LambdaQTrial t = lambda_q_trial(cfg.spec, q, seed);
            rec["sets"] = json{{"Sigma", t.Sigma.members()}};
            rec["values"] = json{{"synthesis_norm", t.synthesis_norm},
                                 {"analysis_norm", t.analysis_norm},
                                 {"duality_gap", t.duality_gap}};
            rec["flags"] = json{{"ascent_lower_bound", true}};
            acc.add(t.synthesis_norm, t.duality_gap <= 0.05);
            break;
        }
        case SweepKind::recovery_rate: {
            metric = "contraction_rate";
            std::int64_t hidden = std::max<std::int64_t>(1, std::int64_t(param("hidden", 2)));
            std::int64_t support = std::max<std::int64_t>(1, std::int64_t(param("support", 2)));
            IndexSet missing = random_subset(cfg.spec, hidden, rng);
            IndexSet T = missing.complement();
            IndexSet Upsilon = random_subset(cfg.spec, support, rng);
            double rate = contraction_rate(T, Upsilon);
            Signal truth = random_signal(cfg.spec, seed ^ 0x5bd1e995,
                                         RandomLaw::sparse(support, Upsilon));
            RecoveryProblem prob{apply_P(truth, T), T, Upsilon, param("tolerance", 1e-10),
                                 int(param("max_iter", 10000))};
            RecoveryResult res = iterative_projection(prob);
            double worst_ratio = 0.0;
            for (std::size_t i = 1; i < res.residual_history.size(); ++i)
                if (res.residual_history[i - 1] > 0)
                    worst_ratio = std::max(worst_ratio, res.residual_history[i] /
                                                            res.residual_history[i - 1]);
            double err = l2_norm(res.estimate - truth);
            bool geometric = rate >= 1.0 || worst_ratio <= rate + 1e-6;
            rec["sets"] = json{{"T", T.members()}, {"Upsilon", Upsilon.members()}};
            rec["values"] = json{{"contraction_rate", rate},
                                 {"iterations", res.iterations},
                                 {"worst_step_ratio", worst_ratio},
                                 {"error", err}};
            rec["flags"] = json{{"converged", res.converged}, {"geometric", geometric}};
            acc.add(rate, geometric);
            break;
        }
        }
        out << rec.dump() << "\n";
    }
    out.close();

    std::ofstream csv(cfg.output_path + ".summary.csv");
    if (!csv) throw std::runtime_error("run_sweep: cannot write summary CSV");
    csv << "kind,metric,count,median,min,max,pass_rate\n";
    char line[256];
    std::snprintf(line, sizeof line, "%s,%s,%d,%.17g,%.17g,%.17g,%.17g\n", to_string(kind),
                  metric.c_str(), acc.total, acc.median(), acc.min(), acc.max(),
                  acc.total ? double(acc.pass) / double(acc.total) : 0.0);
    csv << line;
}

} // namespace apair
