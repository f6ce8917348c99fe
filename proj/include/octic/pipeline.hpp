#pragma once

#include "octic/json_io.hpp"

#include <map>
#include <string>
#include <vector>

namespace octic {

// Σ with the local types found at each value.
struct SigmaReport {
    DegenerationScan scan;
    std::map<Rational, std::vector<LocalEvent>> events;
};

inline SigmaReport sigma_report(const ParamArrangement& a) {
    SigmaReport r;
    r.scan = degenerate_values(a);
    for (const auto& dv : r.scan.sigma) r.events[dv.w0] = classify_fiber(r.scan.generic, dv.special, dv.changes);
    return r;
}

inline std::vector<std::string> types_at(const SigmaReport& r, const Rational& w0) {
    std::vector<std::string> out;
    auto it = r.events.find(w0);
    if (it != r.events.end())
        for (const auto& e : it->second) out.push_back(to_string(e.type));
    return out;
}

inline Json to_json(const SigmaReport& r) {
    Json sigma = Json::object();
    for (const auto& [w, evs] : r.events) {
        Json arr = Json::array();
        for (const auto& e : evs) arr.push_back({{"type", to_string(e.type)}, {"change", to_json(e.change)}});
        sigma[to_string(w)] = arr;
    }
    Json fatal = Json::array();
    for (const auto& f : r.scan.fatal) fatal.push_back({{"w0", to_string(f.w0)}, {"reason", f.reason}});
    Json unresolved = Json::array();
    for (const auto& u : r.scan.unresolved) unresolved.push_back(u.str("w"));
    return {{"sigma", sigma}, {"fatal", fatal}, {"unresolved_factors", unresolved}};
}

inline ParamArrangement scenario_family(const Scenario& s) {
    if (!s.equation) throw InputError(s.name + " has no equation");
    return parse_equation(*s.equation);
}

inline BlowUpSchedule scenario_schedule(const Scenario& s, const ParamArrangement& a) {
    return schedule(generic_profile(a), s.blowup_order ? OrderPolicy::from_list(*s.blowup_order) : OrderPolicy{});
}

inline CentralTrace scenario_trace(const Scenario& s, std::optional<Rational> at = std::nullopt) {
    auto a = scenario_family(s);
    return trace_central_fiber(a, at.value_or(s.w0), scenario_schedule(s, a));
}

inline ResidualSingularities scenario_residual(const Scenario& s) {
    if (s.residual) return *s.residual;
    if (s.residual_from) return scenario_trace(load_scenario(*s.residual_from)).residual;
    return scenario_trace(s).residual;
}

inline StrataComplex scenario_strata(const Scenario& s) {
    if (!s.y_betti) throw InputError(s.name + " has no y_betti");
    return build_components(scenario_residual(s), *s.y_betti);
}

inline LimitReport scenario_limit(const Scenario& s) {
    auto strata = scenario_strata(s);
    auto grid = assemble_e1(strata);
    return compute_e2(grid, build_d1(strata, grid, s.cycle_model, s.annotations));
}

// ---- golden comparisons ------------------------------------------------------

using Mismatches = std::vector<std::string>;

namespace detail {
inline void expect_eq(Mismatches& m, const std::string& what, const Json& want, const Json& got) {
    if (want != got) m.push_back(what + ": expected " + want.dump() + ", got " + got.dump());
}
}  // namespace detail

inline Mismatches check_type(const Scenario& s, const SigmaReport& r) {
    Mismatches m;
    if (!s.expected.contains("type")) return m;
    auto types = types_at(r, s.w0);
    auto want = s.expected["type"].get<std::string>();
    if (std::find(types.begin(), types.end(), want) == types.end())
        m.push_back("type at " + to_string(s.w0) + ": expected " + want + ", got " + Json(types).dump());
    return m;
}

inline Mismatches check_residual(const Scenario& s, const ResidualSingularities& r) {
    Mismatches m;
    if (!s.expected.contains("residual")) return m;
    const auto& e = s.expected["residual"];
    detail::expect_eq(m, "pinch multiset", e.at("pinch_multiset"), Json(r.pinch_multiset()));
    detail::expect_eq(m, "nodes", e.at("nodes"), Json(r.nodes));
    detail::expect_eq(m, "triple meetings", e.at("triple_meetings"), Json(r.triple_meeting_points.size()));
    return m;
}

inline Mismatches check_strata(const Scenario& s, const StrataComplex& c) {
    Mismatches m;
    if (s.expected.contains("strata_counts"))
        detail::expect_eq(m, "strata counts", s.expected["strata_counts"],
                          Json({c.components.size(), c.double_strata.size(), c.triple_strata.size()}));
    return m;
}

inline Mismatches check_limit(const Scenario& s, const LimitReport& r) {
    Mismatches m;
    Json got = to_json(r);
    for (const char* key : {"betti", "pure", "h3_weights", "e1", "e2"})
        if (s.expected.contains(key)) detail::expect_eq(m, key, s.expected[key], got[key]);
    if (s.cycle_model && s.expected.contains("phi_rank")) {
        detail::expect_eq(m, "phi rank", s.expected["phi_rank"], Json(rank(s.cycle_model->matrix)));
        detail::expect_eq(m, "phi kernel", s.expected["phi_kernel"], Json(s.cycle_model->left_kernel_dim()));
    }
    return m;
}

}  // namespace octic
