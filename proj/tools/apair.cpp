// apair: annihilating-pair constants, restriction estimates and spectral
// recovery on (Z/NZ)^d.
//
// Exit codes: 0 success, 2 condition not satisfied (bound subcommands),
// 3 invalid input, 4 non-convergence.

#include "apair/io.hpp"
#include "apair/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

namespace {

using namespace apair;

GroupSpec parse_group(const std::string& s) {
    auto x = s.find('x');
    if (x == std::string::npos)
        throw std::invalid_argument("group must look like NxD, e.g. 16x1");
    return GroupSpec(std::stoll(s.substr(0, x)), std::stoll(s.substr(x + 1)));
}

IndexSet parse_set(const std::string& s, const GroupSpec& spec) {
    if (!s.empty() && s[0] == '@') {
        IndexSet set = indexset_from_json(load_json_file(s.substr(1)));
        if (set.spec() != spec) throw std::invalid_argument("index-set file group mismatch");
        return set;
    }
    std::vector<std::int64_t> members;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) members.push_back(std::stoll(item));
    return IndexSet(spec, std::move(members));
}

Exponent parse_exponent(const std::string& s) {
    if (s == "inf") return Exponent::infinity();
    return Exponent::finite(std::stod(s));
}

NormOptions norm_options_from_env() {
    NormOptions opts;
    if (const char* cap = std::getenv("APAIR_MAX_DENSE")) opts.dense_cap = std::atoll(cap);
    return opts;
}

void emit(const json& j, bool as_json, const std::string& out_path,
          const std::string& plain) {
    if (!out_path.empty()) save_json_file(out_path, j);
    if (as_json)
        std::cout << j.dump() << "\n";
    else
        std::cout << plain << "\n";
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"annihilating-pair and restriction-estimate calculator on (Z/NZ)^d"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    std::string out_path;
    app.add_flag("--json", as_json, "emit the JSON report schema to stdout");
    app.add_option("--out", out_path, "write the JSON report to a file");

    std::string group_str = "8x1", time_str, freq_str, set_str;

    // dft
    auto* c_dft = app.add_subcommand("dft", "unitary discrete Fourier transform f^(m) = N^{-d/2} sum f(n) e^{-2pi i<m,n>/N}");
    std::string sig_path;
    bool inverse = false;
    c_dft->add_option("--signal", sig_path, "signal JSON file")->required();
    c_dft->add_flag("--inverse", inverse, "apply the inverse transform");

    // norm
    auto* c_norm = app.add_subcommand("norm", "operator norm ||P_S Q_Sigma|| deciding the strong annihilating pair criterion of Donoho-Stark type");
    c_norm->add_option("--group", group_str, "group NxD")->required();
    c_norm->add_option("--time", time_str, "time support S (comma list or @file)")->required();
    c_norm->add_option("--freq", freq_str, "frequency support Sigma")->required();
    double norm_tol = 1e-12;
    int norm_iter = 10000;
    bool force_power = false, force_dense = false;
    c_norm->add_option("--tol", norm_tol, "power-iteration tolerance");
    c_norm->add_option("--max-iter", norm_iter, "power-iteration cap");
    c_norm->add_flag("--power", force_power, "force power iteration");
    c_norm->add_flag("--dense", force_dense, "force dense SVD");

    // constant
    auto* c_const = app.add_subcommand("constant", "exact annihilation constant C(S,Sigma) = 1/sqrt(1-||P_S Q_Sigma||^2) with the Ghobber-Jaming and general theorem bounds");
    c_const->add_option("--group", group_str)->required();
    c_const->add_option("--time", time_str)->required();
    c_const->add_option("--freq", freq_str)->required();

    // weak-check
    auto* c_weak = app.add_subcommand("weak-check", "weak annihilating pair rank test (Tao/Chebotarev context: full column rank of the Sigma^c x S DFT minor)");
    c_weak->add_option("--group", group_str)->required();
    c_weak->add_option("--time", time_str)->required();
    c_weak->add_option("--freq", freq_str)->required();

    // restrict
    auto* c_rest = app.add_subcommand("restrict", "(p,q)-restriction constant rho_{p,q}(Sigma): exact closed forms, ascent lower bounds, interpolation upper bounds");
    c_rest->add_option("--group", group_str)->required();
    c_rest->add_option("--freq", freq_str)->required();
    std::string p_str = "2", q_str = "2", mode = "exact", witness_path;
    std::uint64_t seed = 0;
    bool have_seed = false;
    int restarts = 8;
    c_rest->add_option("--p", p_str, "input exponent p (number or inf)");
    c_rest->add_option("--q", q_str, "output exponent q (number or inf)");
    c_rest->add_option("--mode", mode, "exact | lower | interp");
    auto* rest_seed = c_rest->add_option("--seed", seed, "ascent seed (required for lower mode)");
    c_rest->add_option("--restarts", restarts, "ascent restarts");
    c_rest->add_option("--save-witness", witness_path, "write the best witness signal (lower mode)");

    // energy
    auto* c_energy = app.add_subcommand("energy", "additive energy Lambda and max_F Lambda(F)/|F|^2 for the (4/3,2) energy restriction estimate");
    c_energy->add_option("--group", group_str)->required();
    c_energy->add_option("--set", set_str, "frequency set Sigma")->required();
    std::string energy_mode = "exact";
    c_energy->add_option("--mode", energy_mode, "exact | greedy");

    // bound family
    auto* c_bound = app.add_subcommand("bound", "closed-form theorem bound calculators");
    c_bound->require_subcommand(1);
    double rho = 0.0, mS = 0.0, mSigma = 0.0;
    std::int64_t sS = 0, sSigma = 0, cardG = 0, sE = 0;
    std::string sizes_str;

    auto* b_gen = c_bound->add_subcommand("general", "general restriction-to-annihilation bound: A = rho m(S)^{1/p-1/2} m(Sigma)^{1/2-1/q} < 1, constant 1/(1-A)");
    b_gen->add_option("--rho", rho)->required();
    b_gen->add_option("--ms", mS, "measure of S")->required();
    b_gen->add_option("--msigma", mSigma, "measure of Sigma")->required();
    b_gen->add_option("--p", p_str);
    b_gen->add_option("--q", q_str);

    auto* b_gj = c_bound->add_subcommand("ghobber-jaming", "Ghobber-Jaming bound: |S||Sigma| < |G| gives constant 1 + 1/(1 - sqrt(|S||Sigma|/|G|))");
    b_gj->add_option("--sizes", sizes_str, "|S|,|Sigma|")->required();
    b_gj->add_option("--card", cardG, "|G|")->required();

    auto* b_fin = c_bound->add_subcommand("finite", "finite-group bound for 1 <= p,q <= 2: condition rho |S|^{1/p} < |G|^{1/q-1/2}");
    b_fin->add_option("--rho", rho)->required();
    b_fin->add_option("--sizes", sizes_str, "|S|,|Sigma|")->required();
    b_fin->add_option("--card", cardG)->required();
    b_fin->add_option("--p", p_str);
    b_fin->add_option("--q", q_str);

    double max_ratio = 1.0;
    auto* b_en = c_bound->add_subcommand("energy", "energy pair bound: max_ratio |E| < N^d gives constant 1 + 1/(1 - (max_ratio |E| / N^d)^{1/4})");
    b_en->add_option("--max-ratio", max_ratio)->required();
    b_en->add_option("--size-e", sE, "|E|")->required();
    b_en->add_option("--card", cardG)->required();

    double C_pq = 1.0, p_val = 1.0;
    auto* b_lp = c_bound->add_subcommand("lp", "L^{p'} bound: B = |E|^{2-p} |S| C^p / N^d < 1 yields the two-coefficient inequality for ||f||_{p'}");
    b_lp->add_option("--size-e", sE)->required();
    b_lp->add_option("--size-s", sS)->required();
    b_lp->add_option("--constant", C_pq, "restriction constant C_{p,q}")->required();
    b_lp->add_option("--p", p_val);
    b_lp->add_option("--card", cardG)->required();

    double B_q = 1.0, q_val = 4.0;
    auto* b_bour = c_bound->add_subcommand("bourgain", "random-set bound: constant 1/(1 - B_q |G|^{-1/2} |S|^{1/2-1/q}), Sigma size ceil(|G|^{2/q})");
    b_bour->add_option("--bq", B_q, "the q-dependent constant B_q")->required();
    b_bour->add_option("--q", q_val);
    b_bour->add_option("--card", cardG)->required();
    b_bour->add_option("--size-s", sS)->required();

    std::int64_t prime_p = 0;
    auto* b_tao = c_bound->add_subcommand("tao", "Tao's prime-order condition |S| + |Sigma| < p + 1");
    b_tao->add_option("--prime", prime_p)->required();
    b_tao->add_option("--sizes", sizes_str, "|S|,|Sigma|")->required();

    // tao alias at top level
    auto* c_tao = app.add_subcommand("tao", "Tao's prime-order condition |S| + |Sigma| < p + 1 on Z/pZ");
    c_tao->add_option("--prime", prime_p)->required();
    c_tao->add_option("--sizes", sizes_str, "|S|,|Sigma|")->required();

    // recover
    auto* c_rec = app.add_subcommand("recover", "Iterative Projection Method: alternate the measured samples on T with the spectral support Upsilon; geometric rate ||P_{G\\T} Q_Upsilon||");
    std::string meas_path, mask_path, support_path, est_path;
    double rec_tol = 1e-10;
    int rec_iter = 10000;
    c_rec->add_option("--measurement", meas_path, "measured signal JSON file")->required();
    c_rec->add_option("--mask", mask_path, "reliable-sample set T file")->required();
    c_rec->add_option("--support", support_path, "spectral support Upsilon file")->required();
    c_rec->add_option("--tol", rec_tol);
    c_rec->add_option("--max-iter", rec_iter);
    c_rec->add_option("--estimate-out", est_path, "write the recovered signal file");

    // unique
    auto* c_uni = app.add_subcommand("unique", "exhaustive sparse uniqueness oracle: every 2t-sized spectral support must weakly annihilate against G\\T");
    c_uni->add_option("--group", group_str)->required();
    c_uni->add_option("--mask", time_str, "reliable-sample set T")->required();
    std::int64_t sparsity = 0;
    c_uni->add_option("--t", sparsity, "sparsity level")->required();

    // concentrate
    auto* c_conc = app.add_subcommand("concentrate", "concentration levels eps_T, eps_Omega and the uncertainty lower bound eps_T + eps_Omega >= 1/C(S,Sigma)");
    c_conc->add_option("--signal", sig_path)->required();
    c_conc->add_option("--time", time_str)->required();
    c_conc->add_option("--freq", freq_str)->required();
    double conc_C = 0.0;
    auto* conc_c_opt = c_conc->add_option("--constant", conc_C, "strong-pair constant C; computed exactly when omitted");

    // sweep
    auto* c_sweep = app.add_subcommand("sweep", "batch experiment driver: ms-vs-exact, energy-vs-exact, bourgain (Lambda_q trials), recovery-rate");
    std::string kind_str, sweep_out;
    int trials = 10;
    std::vector<std::string> params;
    c_sweep->add_option("--kind", kind_str, "ms-vs-exact | energy-vs-exact | bourgain | recovery-rate")->required();
    c_sweep->add_option("--group", group_str)->required();
    c_sweep->add_option("--trials", trials);
    auto* sweep_seed = c_sweep->add_option("--seed", seed)->required();
    c_sweep->add_option("--output", sweep_out, "JSONL output path")->required();
    c_sweep->add_option("--param", params, "extra parameter name=value (repeatable)");
    int threads = 1;
    c_sweep->add_option("--threads", threads, "worker pool size");

    // annulus
    auto* c_ann = app.add_subcommand("annulus", "Euclidean annulus around R S^{d-1}: restriction scaling, Stein-Tomas exponent 2(d+1)/(d+3), and the delta-choice giving annihilation constant 3");
    AnnulusParams ap;
    bool use_delta_choice = false;
    c_ann->add_option("--d", ap.d, "ambient dimension >= 2");
    c_ann->add_option("--radius", ap.R);
    c_ann->add_option("--delta", ap.delta);
    c_ann->add_option("--c-surface", ap.C_surface, "surface restriction constant C_{p,q}(S), user-supplied")->required();
    c_ann->add_option("--kappa", ap.kappa, "kappa_d, user-supplied")->required();
    c_ann->add_option("--measure-s", ap.measure_S, "|S|");
    c_ann->add_option("--p", p_str);
    c_ann->add_option("--q", q_str);
    c_ann->add_flag("--use-delta-choice", use_delta_choice,
                    "replace delta by the choice pinning the condition at 1/2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    auto parse_sizes = [&](std::int64_t& a, std::int64_t& b) {
        auto comma = sizes_str.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--sizes wants two comma-separated integers");
        a = std::stoll(sizes_str.substr(0, comma));
        b = std::stoll(sizes_str.substr(comma + 1));
    };

    if (c_dft->parsed()) {
        Signal f = signal_from_json(load_json_file(sig_path));
        Signal g = inverse ? idft(f) : dft(f);
        emit(to_json(g), as_json, out_path,
             (inverse ? "idft written; l2 = " : "dft written; l2 = ") + num(l2_norm(g)));
        return 0;
    }

    if (c_norm->parsed()) {
        GroupSpec spec = parse_group(group_str);
        NormOptions opts = norm_options_from_env();
        opts.tol = norm_tol;
        opts.max_iter = norm_iter;
        if (force_power && force_dense)
            throw std::invalid_argument("--power and --dense are mutually exclusive");
        if (force_power) opts.use_dense = false;
        if (force_dense) opts.use_dense = true;
        NormEstimate est = operator_norm(parse_set(time_str, spec), parse_set(freq_str, spec), opts);
        emit(to_json(est), as_json, out_path, "||P_S Q_Sigma|| = " + num(est.value));
        return est.converged ? 0 : 4;
    }

    if (c_const->parsed()) {
        GroupSpec spec = parse_group(group_str);
        AnnihilationReport rep = annihilation_report(parse_set(time_str, spec),
                                                     parse_set(freq_str, spec),
                                                     norm_options_from_env());
        emit(to_json(rep), as_json, out_path,
             "sigma = " + num(rep.sigma.value) + ", C(S,Sigma) = " + num(rep.exact_constant));
        return rep.sigma.converged ? 0 : 4;
    }

    if (c_weak->parsed()) {
        GroupSpec spec = parse_group(group_str);
        WeakCheckResult r =
            weak_annihilation_check(parse_set(time_str, spec), parse_set(freq_str, spec));
        emit(to_json(r), as_json, out_path,
             std::string(r.annihilating ? "weak annihilating pair" : "not annihilating") +
                 ", min singular = " + num(r.min_singular));
        return 0;
    }

    if (c_rest->parsed()) {
        GroupSpec spec = parse_group(group_str);
        IndexSet Sigma = parse_set(freq_str, spec);
        ExponentPair e{parse_exponent(p_str), parse_exponent(q_str)};
        RestrictionBound b;
        if (mode == "exact") {
            b = restriction_norm_exact(Sigma, e);
        } else if (mode == "lower") {
            if (rest_seed->count() == 0)
                throw std::invalid_argument("restrict --mode lower requires --seed");
            AscentOptions opts;
            opts.seed = seed;
            opts.restarts = restarts;
            b = restriction_norm_lower(Sigma, e, opts);
        } else if (mode == "interp") {
            b = restriction_norm_upper_interp(Sigma, e);
        } else {
            throw std::invalid_argument("unknown restrict mode: " + mode);
        }
        if (!witness_path.empty() && b.witness) save_json_file(witness_path, to_json(*b.witness));
        emit(to_json(b), as_json, out_path,
             "rho_{" + p_str + "," + q_str + "} " + to_string(b.kind) + " = " + num(b.value));
        return 0;
    }

    if (c_energy->parsed()) {
        GroupSpec spec = parse_group(group_str);
        IndexSet Sigma = parse_set(set_str, spec);
        EnergyMode m;
        if (energy_mode == "exact")
            m = EnergyMode::exact;
        else if (energy_mode == "greedy")
            m = EnergyMode::greedy;
        else
            throw std::invalid_argument("unknown energy mode: " + energy_mode);
        EnergyReport rep = max_energy_ratio(Sigma, m);
        emit(to_json(rep), as_json, out_path,
             "Lambda = " + std::to_string(rep.energy) + ", max ratio = " + num(rep.max_ratio));
        return 0;
    }

    auto finish_bound = [&](const TheoremBound& b) {
        std::string plain = b.theorem_id + ": condition value " + num(b.condition_value) +
                            (b.condition_satisfied
                                 ? ", constant " + num(*b.constant)
                                 : ", condition not satisfied");
        emit(to_json(b), as_json, out_path, plain);
        return b.condition_satisfied ? 0 : 2;
    };

    if (b_gen->parsed())
        return finish_bound(
            bound_general(rho, mS, mSigma, {parse_exponent(p_str), parse_exponent(q_str)}));
    if (b_gj->parsed()) {
        parse_sizes(sS, sSigma);
        return finish_bound(bound_ghobber_jaming(sS, sSigma, cardG));
    }
    if (b_fin->parsed()) {
        parse_sizes(sS, sSigma);
        return finish_bound(
            bound_finite(rho, sS, sSigma, cardG, {parse_exponent(p_str), parse_exponent(q_str)}));
    }
    if (b_en->parsed()) return finish_bound(bound_energy_pair(max_ratio, sE, cardG));
    if (b_lp->parsed()) {
        LpBound b = bound_lp(sE, sS, C_pq, p_val, cardG);
        std::string plain =
            b.condition_satisfied
                ? "thm-3.10: coeff_freq " + num(*b.coeff_freq) + ", coeff_time " + num(*b.coeff_time)
                : "thm-3.10: condition not satisfied (B = " + num(b.condition_value) + ")";
        emit(to_json(b), as_json, out_path, plain);
        return b.condition_satisfied ? 0 : 2;
    }
    if (b_bour->parsed()) return finish_bound(bound_bourgain_random(B_q, q_val, cardG, sS));
    if (b_tao->parsed() || c_tao->parsed()) {
        parse_sizes(sS, sSigma);
        bool ok = tao_condition(prime_p, sS, sSigma);
        json j{{"theorem", "tao"}, {"prime", prime_p}, {"sS", sS}, {"sSigma", sSigma},
               {"condition_satisfied", ok}};
        emit(j, as_json, out_path,
             ok ? "tao: |S| + |Sigma| < p + 1 holds; weak annihilating pair"
                : "tao: condition fails");
        return ok ? 0 : 2;
    }

    if (c_rec->parsed()) {
        Signal mu = signal_from_json(load_json_file(meas_path));
        IndexSet T = indexset_from_json(load_json_file(mask_path));
        IndexSet Upsilon = indexset_from_json(load_json_file(support_path));
        RecoveryProblem prob{std::move(mu), std::move(T), std::move(Upsilon), rec_tol, rec_iter};
        RecoveryResult res = iterative_projection(prob);
        if (!est_path.empty()) save_json_file(est_path, to_json(res.estimate));
        emit(to_json(res, est_path.empty()), as_json, out_path,
             "iterations " + std::to_string(res.iterations) + ", rate " +
                 num(res.contraction_rate) +
                 (res.converged ? ", converged" : ", NOT converged"));
        return res.converged ? 0 : 4;
    }

    if (c_uni->parsed()) {
        GroupSpec spec = parse_group(group_str);
        UniquenessResult r = sparse_uniqueness_oracle(parse_set(time_str, spec), sparsity);
        json j{{"unique", r.unique}};
        if (r.witness) {
            j["witness"] = json{{"s1", to_json(r.witness->first)},
                                {"s2", to_json(r.witness->second)}};
        }
        emit(j, as_json, out_path,
             r.unique ? "every t-sparse signal is determined by its samples on T"
                      : "not unique; aliasing witness available via --json");
        return 0;
    }

    if (c_conc->parsed()) {
        Signal f = signal_from_json(load_json_file(sig_path));
        IndexSet S = parse_set(time_str, f.spec());
        IndexSet Sigma = parse_set(freq_str, f.spec());
        double C = conc_C;
        if (conc_c_opt->count() == 0) {
            C = exact_annihilation_constant(
                operator_norm(S, Sigma, norm_options_from_env()).value);
        }
        ConcentrationReport rep = concentration_levels(f, S, Sigma, C);
        emit(to_json(rep), as_json, out_path,
             "eps_T = " + num(rep.eps_T) + ", eps_Omega = " + num(rep.eps_Omega) +
                 ", lower bound 1/C = " + num(rep.lower_bound));
        return 0;
    }

    if (c_sweep->parsed()) {
        if (sweep_seed->count() == 0) throw std::invalid_argument("sweep requires --seed");
        ExperimentConfig cfg;
        cfg.spec = parse_group(group_str);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.output_path = sweep_out;
        for (const std::string& kv : params) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--param wants name=value, got " + kv);
            cfg.parameters[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        run_sweep(cfg, sweep_kind_from_string(kind_str));
        emit(json{{"output", sweep_out}, {"trials", trials}}, as_json, out_path,
             "wrote " + sweep_out + " and " + sweep_out + ".summary.csv");
        return 0;
    }

    if (c_ann->parsed()) {
        ExponentPair e{parse_exponent(p_str), parse_exponent(q_str)};
        if (use_delta_choice) {
            AnnulusResult probe = annulus_calculator(ap, e);
            ap.delta = probe.delta_choice;
        }
        AnnulusResult r = annulus_calculator(ap, e);
        emit(to_json(r), as_json, out_path,
             "rho = " + num(r.rho) + ", condition " + num(r.condition_value) +
                 (r.constant ? ", constant " + num(*r.constant) : ", condition fails"));
        return r.constant ? 0 : 2;
    }

    return 3;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
