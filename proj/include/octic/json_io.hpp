#pragma once

#include "octic/resolve.hpp"
#include "octic/specseq.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace octic {

using Json = nlohmann::json;  // std::map-backed, so keys come out sorted

class UnknownScenario : public std::runtime_error {
public:
    explicit UnknownScenario(const std::string& name) : std::runtime_error("unknown scenario: " + name) {}
};

// ---- writers ---------------------------------------------------------------

inline Json plane_set_json(const PlaneSet& s) {
    Json j = Json::array();
    for (int i : s) j.push_back(i + 1);
    return j;
}

inline Json to_json(const ProjPoint& p) {
    Json j = Json::array();
    for (const auto& c : p) j.push_back(c.str("w"));
    return j;
}

inline Json to_json(const IncidenceProfile& p) {
    Json lines = Json::array(), points = Json::array();
    for (const auto& l : p.lines)
        if (l.q() >= 3) lines.push_back({{"planes", plane_set_json(l.planes)}, {"q", l.q()}});
    for (const auto& pt : p.points)
        if (pt.p() >= 4)
            points.push_back(
                {{"planes", plane_set_json(pt.planes)}, {"p", pt.p()}, {"j", pt.j}, {"at", to_json(pt.point)}});
    Json j{{"forms", p.n_forms}, {"triple_lines", lines}, {"multiple_points", points}, {"generic", p.generic}};
    if (p.at) j["at"] = to_string(*p.at);
    return j;
}

inline Json to_json(const NewIncidence& n) {
    Json src = Json::array();
    for (std::size_t i = 0; i < n.sources.size(); ++i)
        src.push_back({{"planes", plane_set_json(n.sources[i])},
                       {"p", n.source_types[i].p},
                       {"j", n.source_types[i].j}});
    return {{"kind", to_string(n.kind)}, {"planes", plane_set_json(n.planes)}, {"line", n.is_line},
            {"p", n.type.p},           {"j", n.type.j},                     {"sources", src}};
}

inline Json to_json(const ResidualSingularities& r) {
    Json curves = Json::array();
    for (const auto& c : r.double_curves) {
        Json cj{{"pinch_points", c.pinch_points}, {"label", c.label}};
        cj["over"] = c.over ? Json(to_string(*c.over)) : Json(nullptr);
        curves.push_back(cj);
    }
    Json adj = Json::array();
    for (auto [a, b] : r.adjacency) adj.push_back({a, b});
    Json j{{"double_curves", curves},
           {"nodes", r.nodes},
           {"triple_meeting_points", r.triple_meeting_points},
           {"adjacency", adj},
           {"pinch_multiset", r.pinch_multiset()}};
    j["node_surface"] = r.node_surface ? Json(*r.node_surface) : Json(nullptr);
    return j;
}

inline Json to_json(const StrataComplex& s) {
    Json comps = Json::array(), dbl = Json::array(), tri = Json::array();
    for (const auto& c : s.components)
        comps.push_back({{"label", c.label}, {"kind", kind_name(c.geometry)}, {"betti", betti(c.geometry)}});
    for (const auto& d : s.double_strata)
        dbl.push_back({{"label", s.label({d.pair[0], d.pair[1]})},
                       {"pair", {d.pair[0], d.pair[1]}},
                       {"kind", kind_name(d.geometry)},
                       {"betti", betti(d.geometry)}});
    for (const auto& t : s.triple_strata)
        tri.push_back({{"label", s.label({t.triple[0], t.triple[1], t.triple[2]})},
                       {"triple", {t.triple[0], t.triple[1], t.triple[2]}},
                       {"kind", "SmoothConic"},
                       {"betti", betti(t.geometry)}});
    return {{"components", comps}, {"double_strata", dbl}, {"triple_strata", tri}};
}

// Rows from weight 6 down to 0, as displayed.
template <typename Cell>
Json grid_json(const E1Grid& g, Cell cell) {
    Json rows = Json::array();
    for (int r = 2 * kFiberDim; r >= 0; --r) {
        Json row = Json::array();
        for (int c = g.min_col; c <= g.max_col; ++c) row.push_back(cell(GridPos{c, r}));
        rows.push_back(row);
    }
    return rows;
}

inline Json to_json(const LimitReport& rep) {
    Json maps = Json::array();
    for (const auto& [pos, md] : rep.maps) {
        if (md.how == MapSource::Zero) continue;
        Json m{{"source", {pos.first, pos.second}}, {"how", to_string(md.how)}, {"rank", md.rank.value_or(-1)}};
        if (!md.justification.empty()) m["justification"] = md.justification;
        maps.push_back(m);
    }
    return {{"columns", {rep.e1.min_col, rep.e1.max_col}},
            {"e1", grid_json(rep.e1, [&](GridPos p) { return rep.e1.entries.at(p).display(); })},
            {"e1_dims", grid_json(rep.e1, [&](GridPos p) { return rep.e1.dim(p); })},
            {"e2", grid_json(rep.e1, [&](GridPos p) { return rep.e2.at(p); })},
            {"d1", maps},
            {"betti", rep.betti},
            {"h3_weights", rep.h3_weights},
            {"pure", rep.pure},
            {"weight_symmetric", rep.weight_symmetric},
            {"euler", {{"e1", rep.euler_e1}, {"betti", rep.euler_betti}}}};
}

// ---- readers ---------------------------------------------------------------

inline ResidualSingularities residual_from_json(const Json& j) {
    ResidualSingularities r;
    for (const auto& c : j.value("double_curves", Json::array())) {
        ResidualCurve rc;
        rc.pinch_points = c.at("pinch_points").get<int>();
        rc.label = c.value("label", std::string{});
        if (c.contains("over") && !c["over"].is_null())
            rc.over = c["over"].get<std::string>() == "TripleLine" ? CurveImage::TripleLine : CurveImage::FivefoldPoint;
        r.double_curves.push_back(rc);
    }
    r.nodes = j.value("nodes", 0);
    if (j.contains("triple_meeting_points"))
        r.triple_meeting_points = j["triple_meeting_points"].get<std::vector<std::vector<int>>>();
    for (const auto& a : j.value("adjacency", Json::array())) r.adjacency.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
    return r;
}

inline GridPos grid_pos_from_json(const Json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

inline std::vector<RankAnnotation> annotations_from_json(const Json& j) {
    std::vector<RankAnnotation> out;
    for (const auto& a : j) {
        if (!a.contains("justification") || a["justification"].get<std::string>().empty())
            throw InputError("rank annotation without justification");
        out.push_back({grid_pos_from_json(a.at("map")), a.at("rank").get<int>(), a["justification"].get<std::string>(),
                       a.value("with_dual", false)});
    }
    return out;
}

inline CycleModel cycle_model_from_json(const Json& j) {
    CycleModel cm;
    cm.map = grid_pos_from_json(j.at("map"));
    cm.with_dual = j.value("with_dual", false);
    cm.justification = j.value("justification", std::string{});
    auto gens = [](const Json& arr) {
        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        for (const auto& g : arr)
            out.emplace_back(g.at("stratum").get<std::string>(), g.at("labels").get<std::vector<std::string>>());
        return out;
    };
    cm.row_generators = gens(j.at("rows"));
    cm.column_generators = gens(j.at("columns"));
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : j.at("matrix")) {
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>()));
        rows.push_back(std::move(r));
    }
    cm.matrix = Matrix<Rational>::from_rows(rows);
    cm.validate();
    return cm;
}

inline std::map<std::string, Rational> chain_from_json(const Json& j) {
    std::map<std::string, Rational> out;
    for (const auto& [k, v] : j.items()) out[k] = v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long long>());
    return out;
}

inline Json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot read " + p.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(p.string() + ": " + e.what());
    }
}

// ---- scenarios -------------------------------------------------------------

struct Scenario {
    std::string name;
    std::string title;
    std::optional<std::string> equation;
    Rational w0 = 0;
    std::optional<std::vector<std::string>> blowup_order;
    std::optional<std::string> residual_from;  // another scenario whose central residual is used
    std::optional<ResidualSingularities> residual;
    std::optional<Betti> y_betti;
    std::optional<CycleModel> cycle_model;
    std::vector<RankAnnotation> annotations;
    std::optional<std::map<std::string, Rational>> chain;
    Json expected = Json::object();
};

inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("OCTIC_DATA")) return env;
#ifdef OCTIC_DATA_DIR
    return OCTIC_DATA_DIR;
#else
    return "data";
#endif
}

inline Scenario load_scenario(const std::string& name, const std::filesystem::path& dir = data_dir()) {
    auto file = dir / "scenarios" / (name + ".json");
    if (!std::filesystem::exists(file)) throw UnknownScenario(name);
    Json j = read_json_file(file);
    Scenario s;
    s.name = j.value("name", name);
    s.title = j.value("title", std::string{});
    if (j.contains("equation")) s.equation = j["equation"].get<std::string>();
    if (j.contains("w0")) s.w0 = parse_rational(j["w0"].get<std::string>());
    if (j.contains("blowup_order")) s.blowup_order = j["blowup_order"].get<std::vector<std::string>>();
    if (j.contains("residual_from")) s.residual_from = j["residual_from"].get<std::string>();
    if (j.contains("residual")) s.residual = residual_from_json(j["residual"]);
    if (j.contains("y_betti")) s.y_betti = j["y_betti"].get<Betti>();
    auto sibling = [&](const char* key) {
        auto p = dir / "scenarios" / j[key].get<std::string>();
        if (!std::filesystem::exists(p)) throw InputError(s.name + ": missing " + p.string());
        return read_json_file(p);
    };
    if (j.contains("cycle_model")) s.cycle_model = cycle_model_from_json(sibling("cycle_model"));
    if (j.contains("annotations")) s.annotations = annotations_from_json(sibling("annotations"));
    if (j.contains("chain")) s.chain = chain_from_json(j["chain"]);
    if (j.contains("expected")) s.expected = j["expected"];
    return s;
}

inline std::vector<std::string> scenario_names(const std::filesystem::path& dir = data_dir()) {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(dir / "scenarios")) {
        auto p = e.path();
        if (p.extension() != ".json") continue;
        auto stem = p.stem().string();
        if (stem.ends_with(".annotations") || stem.ends_with(".cycle_model")) continue;
        out.push_back(stem);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace octic
