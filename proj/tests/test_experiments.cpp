#include "apair/sweep.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace apair;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("concentration levels") {
    GroupSpec z8(8, 1);
    Signal d0 = Signal::delta(z8, 0);
    ConcentrationReport perfect =
        concentration_levels(d0, IndexSet(z8, {0}), IndexSet::full(z8), 1.0);
    CHECK(perfect.eps_T == 0.0);
    CHECK(perfect.eps_Omega == 0.0);

    GroupSpec z4(4, 1);
    Signal d4 = Signal::delta(z4, 0);
    ConcentrationReport r =
        concentration_levels(d4, IndexSet(z4, {0}), IndexSet(z4, {0}), 2.0);
    CHECK(r.eps_T == 0.0);
    CHECK(std::abs(r.eps_Omega - std::sqrt(3.0) / 2.0) < 1e-14);

    CHECK_THROWS_AS(
        concentration_levels(Signal::zero(z4), IndexSet(z4, {0}), IndexSet(z4, {0}), 2.0),
        std::invalid_argument);
}

TEST_CASE("concentration lower bound with the exact constant") {
    GroupSpec z16(16, 1);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<std::int64_t> size(1, 6);
        IndexSet S = random_subset(z16, size(rng), rng);
        IndexSet Sigma = random_subset(z16, size(rng), rng);
        double C = exact_annihilation_constant(operator_norm(S, Sigma).value);
        // with the +1 safety the bound holds on every trial
        double Cpad = std::isinf(C) ? C : C + 1.0;
        for (std::uint64_t fs = 0; fs < 25; ++fs) {
            Signal f = random_signal(z16, trial * 64 + fs, RandomLaw::complex_gaussian());
            ConcentrationReport rep = concentration_levels(f, S, Sigma, Cpad);
            CHECK(rep.satisfied);
        }
    }
}

TEST_CASE("strong inequality check") {
    GroupSpec z8(8, 1);
    StrongInequalityCheck zero = verify_strong_inequality(
        Signal::zero(z8), IndexSet(z8, {0}), IndexSet(z8, {0}), 5.0);
    CHECK(zero.slack == 0.0);

    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<std::int64_t> size(1, 4);
        IndexSet S = random_subset(z8, size(rng), rng);
        IndexSet Sigma = random_subset(z8, size(rng), rng);
        double C = exact_annihilation_constant(operator_norm(S, Sigma).value);
        if (std::isinf(C)) continue;
        for (std::uint64_t fs = 0; fs < 30; ++fs) {
            Signal f = random_signal(z8, trial * 31 + fs, RandomLaw::complex_gaussian());
            CHECK(verify_strong_inequality(f, S, Sigma, C + 1.0).slack >= -1e-9);
        }
    }
}

TEST_CASE("random subsets") {
    GroupSpec z16(16, 1);
    std::mt19937_64 a(7), b(7);
    IndexSet s1 = random_subset(z16, 5, a);
    IndexSet s2 = random_subset(z16, 5, b);
    CHECK(s1 == s2);
    CHECK(s1.size() == 5);
    CHECK(random_subset(z16, 0, a).is_empty());
    CHECK(random_subset(z16, 16, a).size() == 16);
    CHECK_THROWS_AS(random_subset(z16, 17, a), std::invalid_argument);
}

TEST_CASE("lambda_q single character normalization") {
    GroupSpec z16(16, 1);
    LambdaQTrial t = lambda_q_trial(z16, 4.0, 77, 1);
    // synthesis of one character: ||T|| = |G|^{1/q} = 2 exactly
    CHECK(std::abs(t.synthesis_norm - 2.0) < 1e-9);
    CHECK(std::abs(t.analysis_norm - 2.0) < 0.1);
    CHECK(t.Sigma.size() == 1);
}

TEST_CASE("lambda_q duality gap and monotonicity") {
    GroupSpec z64(64, 1);
    AscentOptions light;
    light.restarts = 4;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        LambdaQTrial t = lambda_q_trial(z64, 4.0, seed, std::nullopt, light);
        CHECK(t.Sigma.size() == bourgain_sigma_size(64, 4.0));
        CHECK(t.duality_gap <= 0.05);
    }
    // maximization over the full dual group dominates any subset
    LambdaQTrial full = lambda_q_trial(z64, 4.0, 3, 64, light);
    LambdaQTrial sub = lambda_q_trial(z64, 4.0, 3, 8, light);
    CHECK(full.synthesis_norm >= sub.synthesis_norm - 1e-9);

    CHECK_THROWS_AS(lambda_q_trial(z64, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(lambda_q_trial(z64, 4.0, 1, 65), std::invalid_argument);
}

TEST_CASE("sweep determinism and dominance") {
    ExperimentConfig cfg;
    cfg.spec = GroupSpec(16, 1);
    cfg.trials = 12;
    cfg.seed = 4242;
    cfg.output_path = "sweep_test_a.jsonl";
    run_sweep(cfg, SweepKind::ms_vs_exact);
    std::string first = slurp("sweep_test_a.jsonl");
    std::string first_csv = slurp("sweep_test_a.jsonl.summary.csv");
    cfg.output_path = "sweep_test_b.jsonl";
    run_sweep(cfg, SweepKind::ms_vs_exact);
    CHECK(first == slurp("sweep_test_b.jsonl"));

    // per-record dominance when the Ghobber-Jaming condition holds
    std::stringstream lines(first);
    std::string line;
    int records = 0;
    while (std::getline(lines, line)) {
        json rec = json::parse(line);
        ++records;
        CHECK(rec.at("trial") == records - 1);
        if (rec.at("flags").at("condition").get<bool>()) {
            CHECK(rec.at("flags").at("dominated").get<bool>());
        }
    }
    CHECK(records == 12);
    CHECK(first_csv.find("ms-vs-exact") != std::string::npos);

    std::remove("sweep_test_a.jsonl");
    std::remove("sweep_test_a.jsonl.summary.csv");
    std::remove("sweep_test_b.jsonl");
    std::remove("sweep_test_b.jsonl.summary.csv");
}

TEST_CASE("recovery-rate sweep geometric flag") {
    ExperimentConfig cfg;
    cfg.spec = GroupSpec(16, 1);
    cfg.trials = 8;
    cfg.seed = 99;
    cfg.output_path = "sweep_test_r.jsonl";
    run_sweep(cfg, SweepKind::recovery_rate);
    std::stringstream lines(slurp("sweep_test_r.jsonl"));
    std::string line;
    int records = 0;
    while (std::getline(lines, line)) {
        json rec = json::parse(line);
        ++records;
        CHECK(rec.at("flags").at("geometric").get<bool>());
    }
    CHECK(records == 8);
    std::remove("sweep_test_r.jsonl");
    std::remove("sweep_test_r.jsonl.summary.csv");
}

TEST_CASE("energy sweep records") {
    ExperimentConfig cfg;
    cfg.spec = GroupSpec(16, 1);
    cfg.trials = 6;
    cfg.seed = 7;
    cfg.parameters["sigma_size"] = 6;
    cfg.output_path = "sweep_test_e.jsonl";
    run_sweep(cfg, SweepKind::energy_vs_exact);
    std::stringstream lines(slurp("sweep_test_e.jsonl"));
    std::string line;
    int records = 0;
    while (std::getline(lines, line)) {
        json rec = json::parse(line);
        ++records;
        if (rec.at("flags").at("condition").get<bool>())
            CHECK(rec.at("flags").at("dominated").get<bool>());
    }
    CHECK(records == 6);
    std::remove("sweep_test_e.jsonl");
    std::remove("sweep_test_e.jsonl.summary.csv");
}

TEST_CASE("json round trips") {
    GroupSpec z8(8, 1);
    Signal f = random_signal(z8, 5, RandomLaw::complex_gaussian());
    Signal f2 = signal_from_json(to_json(f));
    CHECK(f2.values() == f.values());

    IndexSet s(z8, {1, 5});
    CHECK(indexset_from_json(to_json(s)) == s);
    CHECK(group_from_json(to_json(z8)) == z8);
}
