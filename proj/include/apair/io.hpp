#pragma once

// JSON serialization of signals, index sets and the shared report schema.

#include "apair/experiments.hpp"

#include <json.hpp>

#include <fstream>

namespace apair {

using json = nlohmann::json;

inline json to_json(const GroupSpec& spec) {
    return json{{"N", spec.modulus()}, {"d", spec.dimension()}};
}

inline GroupSpec group_from_json(const json& j) {
    return GroupSpec(j.at("N").get<std::int64_t>(), j.at("d").get<std::int64_t>());
}

inline json to_json(const Signal& s) {
    json values = json::array();
    for (const cplx& v : s.values()) values.push_back(json::array({v.real(), v.imag()}));
    return json{{"group", to_json(s.spec())}, {"values", values}};
}

inline Signal signal_from_json(const json& j) {
    GroupSpec spec = group_from_json(j.at("group"));
    std::vector<cplx> values;
    for (const auto& v : j.at("values"))
        values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return Signal(spec, std::move(values));
}

inline json to_json(const IndexSet& s) {
    return json{{"group", to_json(s.spec())}, {"indices", s.members()}};
}

inline IndexSet indexset_from_json(const json& j) {
    return IndexSet(group_from_json(j.at("group")),
                    j.at("indices").get<std::vector<std::int64_t>>());
}

inline json to_json(const NormEstimate& e) {
    return json{{"value", e.value},
                {"method", e.method == NormEstimate::Method::dense_svd ? "dense-svd"
                                                                       : "power-iteration"},
                {"iterations", e.iterations},
                {"residual", e.residual},
                {"converged", e.converged}};
}

inline json to_json(const AnnihilationReport& r) {
    json bounds = json::array();
    for (const auto& b : r.theorem_bounds) {
        json e{{"theorem", b.theorem_id}, {"condition_satisfied", b.condition_satisfied}};
        e["bound"] = b.bound ? json(*b.bound) : json();
        bounds.push_back(e);
    }
    return json{{"sigma", to_json(r.sigma)},
                {"exact_constant",
                 std::isinf(r.exact_constant) ? json("inf") : json(r.exact_constant)},
                {"theorem_bounds", bounds}};
}

inline json to_json(const ExponentPair& e) {
    return json{{"p", e.p.is_infinite() ? json("inf") : json(e.p.value())},
                {"q", e.q.is_infinite() ? json("inf") : json(e.q.value())}};
}

inline json to_json(const RestrictionBound& b) {
    json j{{"exponents", to_json(b.exponents)},
           {"value", b.value},
           {"kind", to_string(b.kind)}};
    if (b.normalized_C) j["normalized_C"] = *b.normalized_C;
    if (!b.caveat.empty()) j["caveat"] = b.caveat;
    return j;
}

inline json to_json(const EnergyReport& r) {
    return json{{"set", r.set.members()},
                {"energy", r.energy},
                {"max_ratio", r.max_ratio},
                {"max_ratio_kind",
                 r.max_ratio_kind == BoundKind::exact ? "exact" : "greedy-lower"},
                {"witness_subset", r.witness_subset.members()}};
}

inline json to_json(const TheoremBound& b) {
    json j{{"theorem", b.theorem_id},
           {"condition_value", b.condition_value},
           {"condition_satisfied", b.condition_satisfied},
           {"inputs", b.inputs}};
    j["constant"] = b.constant ? json(*b.constant) : json();
    return j;
}

inline json to_json(const LpBound& b) {
    json j{{"condition_satisfied", b.condition_satisfied},
           {"condition_value", b.condition_value}};
    j["coeff_freq"] = b.coeff_freq ? json(*b.coeff_freq) : json();
    j["coeff_time"] = b.coeff_time ? json(*b.coeff_time) : json();
    return j;
}

inline json to_json(const AnnulusResult& r) {
    json j{{"rho", r.rho},
           {"volume", r.volume},
           {"volume_asymptotic", r.volume_asymptotic},
           {"stein_tomas_p", r.stein_tomas_p},
           {"condition_value", r.condition_value},
           {"delta_choice", r.delta_choice},
           {"condition_note", r.condition_note}};
    j["constant"] = r.constant ? json(*r.constant) : json();
    return j;
}

inline json to_json(const RecoveryResult& r, bool include_estimate = true) {
    json j{{"iterations", r.iterations},
           {"residual_history", r.residual_history},
           {"contraction_rate", r.contraction_rate},
           {"converged", r.converged},
           {"measurement_mismatch", r.measurement_mismatch}};
    if (include_estimate) j["estimate"] = to_json(r.estimate);
    return j;
}

inline json to_json(const ConcentrationReport& r) {
    return json{{"eps_T", r.eps_T},
                {"eps_Omega", r.eps_Omega},
                {"lower_bound", r.lower_bound},
                {"satisfied", r.satisfied}};
}

inline json to_json(const LambdaQTrial& t) {
    return json{{"Sigma", t.Sigma.members()},
                {"synthesis_norm", t.synthesis_norm},
                {"analysis_norm", t.analysis_norm},
                {"duality_gap", t.duality_gap}};
}

inline json to_json(const WeakCheckResult& r) {
    return json{{"annihilating", r.annihilating},
                {"min_singular",
                 std::isinf(r.min_singular) ? json("inf") : json(r.min_singular)}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace apair
