#include "octic/pipeline.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace octic;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInput = 2, kMath = 3, kUnknownScenario = 4 };

struct Options {
    bool json = false;
    bool check = false;
    std::string dot_dir;
    std::string target;  // equation or scenario name
    std::string at;
};

bool is_scenario_name(const std::string& s) { return fs::exists(data_dir() / "scenarios" / (s + ".json")); }

// An argument naming a bundled scenario stands for that scenario's equation.
std::optional<Scenario> scenario_arg(const std::string& target) {
    if (is_scenario_name(target)) return load_scenario(target);
    return std::nullopt;
}

Scenario require_scenario(const std::string& target) {
    auto s = scenario_arg(target);
    if (!s) throw UnknownScenario(target);
    return *s;
}

ParamArrangement family_arg(const std::string& target) {
    if (auto s = scenario_arg(target)) return scenario_family(*s);
    return parse_equation(target);
}

void write_atomic(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << text;
    }
    fs::rename(tmp, path);
}

int report_check(const Options& o, const Mismatches& m) {
    if (!o.check) return kOk;
    for (const auto& x : m) std::cerr << "check: " << x << '\n';
    return m.empty() ? kOk : kMismatch;
}

int cmd_incidence(const Options& o) {
    auto a = family_arg(o.target);
    IncidenceProfile p = o.at.empty() ? generic_profile(a) : special_profile(a, parse_rational(o.at));
    if (o.json) {
        Json j = to_json(p);
        j["equation"] = to_equation(a);
        auto chk = is_octic(p);
        j["octic"] = chk.valid;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << to_equation(a) << (o.at.empty() ? "  (generic)" : "  at w=" + o.at) << '\n';
        int shown = 0;
        for (const auto& l : p.lines)
            if (l.q() >= 3) {
                std::cout << "  line  " << plane_set_string(l.planes) << "  q=" << l.q() << '\n';
                ++shown;
            }
        for (const auto& pt : p.points)
            if (pt.p() >= 4) {
                std::cout << "  point " << plane_set_string(pt.planes) << "  p" << pt.p() << "^" << pt.j << "  "
                          << point_string(pt.point) << '\n';
                ++shown;
            }
        if (!shown) std::cout << "  general position: no triple lines, no points of multiplicity >= 4\n";
    }
    return kOk;
}

int cmd_sigma(const Options& o) {
    auto a = family_arg(o.target);
    auto r = sigma_report(a);
    if (o.json) {
        std::cout << to_json(r).dump(2) << '\n';
    } else {
        if (r.events.empty()) std::cout << "Σ = {}\n";
        for (const auto& [w, evs] : r.events) {
            std::cout << "w=" << to_string(w) << ':';
            for (const auto& e : evs) std::cout << ' ' << to_string(e.type);
            std::cout << '\n';
        }
        for (const auto& f : r.scan.fatal) std::cout << "w=" << to_string(f.w0) << ": fatal, " << f.reason << '\n';
        for (const auto& u : r.scan.unresolved) std::cout << "irrational factor: " << u.str("w") << '\n';
    }
    auto s = scenario_arg(o.target);
    return s ? report_check(o, check_type(*s, r)) : kOk;
}

int cmd_classify(const Options& o) {
    auto a = family_arg(o.target);
    auto s = scenario_arg(o.target);
    Rational w0 = !o.at.empty() ? parse_rational(o.at) : (s ? s->w0 : Rational(0));
    auto generic = generic_profile(a);
    auto special = special_profile(a, w0);
    auto events = classify_fiber(generic, special, profile_diff(generic, special));
    Json arr = Json::array();
    for (const auto& e : events)
        arr.push_back({{"type", to_string(e.type)},
                       {"change", to_json(e.change)},
                       {"expected_residual", to_json(residual_outcome(e.type))}});
    if (o.json) {
        std::cout << Json{{"w0", to_string(w0)}, {"events", arr}}.dump(2) << '\n';
    } else {
        if (events.empty()) std::cout << "w=" << to_string(w0) << ": no new incidences\n";
        for (const auto& e : events)
            std::cout << "w=" << to_string(w0) << ": " << to_string(e.type) << " on " << plane_set_string(e.change.planes)
                      << '\n';
    }
    if (!s) return kOk;
    Mismatches m;
    bool found = std::any_of(events.begin(), events.end(), [&](const LocalEvent& e) {
        return !s->expected.contains("type") || to_string(e.type) == s->expected["type"].get<std::string>();
    });
    if (!found) m.push_back("expected type " + s->expected["type"].get<std::string>() + " not found");
    return report_check(o, m);
}

int cmd_resolve(const Options& o) {
    auto s = require_scenario(o.target);
    std::optional<Rational> at;
    if (!o.at.empty()) at = parse_rational(o.at);
    auto trace = scenario_trace(s, at);
    if (!o.dot_dir.empty()) {
        fs::path dir = fs::path(o.dot_dir) / s.name;
        write_atomic(dir / "00_initial.dot", render_dot(trace.initial, s.name + " initial"));
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            char prefix[8];
            std::snprintf(prefix, sizeof prefix, "%02zu_", i + 1);
            write_atomic(dir / (prefix + trace.steps[i].token + ".dot"),
                         render_dot(trace.steps[i].diagram, s.name + " after " + trace.steps[i].token));
        }
    }
    if (o.json) {
        Json steps = Json::array();
        for (const auto& st : trace.steps) {
            Json ev = Json::array();
            for (const auto& e : st.events) ev.push_back(to_string(e.kind));
            steps.push_back({{"center", st.token},
                             {"generic_multiplicity", st.context.generic_multiplicity},
                             {"central_multiplicity", st.context.central_multiplicity},
                             {"central_geometry", to_string(st.context.central_geometry)},
                             {"events", ev}});
        }
        std::cout << Json{{"scenario", s.name}, {"steps", steps}, {"residual", to_json(trace.residual)}}.dump(2) << '\n';
    } else {
        std::cout << s.name << "  " << s.equation.value_or("") << "  at w=" << to_string(at.value_or(s.w0)) << '\n';
        for (const auto& st : trace.steps) {
            std::cout << "  " << st.token;
            for (const auto& e : st.events) std::cout << "  " << to_string(e.kind);
            std::cout << '\n';
        }
        const auto& r = trace.residual;
        if (r.empty()) std::cout << "residual: none\n";
        for (const auto& c : r.double_curves)
            std::cout << "residual curve " << c.label << ": " << c.pinch_points << " pinch points"
                      << (c.over ? ", over a " + std::string(*c.over == CurveImage::TripleLine ? "triple line" : "fivefold point") : "")
                      << '\n';
        if (r.nodes) std::cout << "residual nodes: " << r.nodes << " on " << r.node_surface.value_or("?") << '\n';
        if (!r.triple_meeting_points.empty())
            std::cout << "triple meeting points: " << r.triple_meeting_points.size() << '\n';
    }
    return at ? kOk : report_check(o, check_residual(s, trace.residual));
}

int cmd_render(const Options& o) {
    auto s = require_scenario(o.target);
    std::optional<Rational> at;
    if (!o.at.empty()) at = parse_rational(o.at);
    auto trace = scenario_trace(s, at);
    std::string dot = render_dot(trace.final_diagram(), s.name);
    if (!o.dot_dir.empty())
        write_atomic(fs::path(o.dot_dir) / (s.name + ".dot"), dot);
    else
        std::cout << dot;
    return kOk;
}

int cmd_reduce(const Options& o) {
    auto s = require_scenario(o.target);
    auto strata = scenario_strata(s);
    if (o.json) {
        std::cout << to_json(strata).dump(2) << '\n';
    } else {
        auto line = [](const std::string& label, const std::string& kind, const Betti& b) {
            std::cout << "  " << label << "  " << kind << "  (";
            for (std::size_t i = 0; i < b.size(); ++i) std::cout << (i ? "," : "") << b[i];
            std::cout << ")\n";
        };
        std::cout << "S^[1]\n";
        for (const auto& c : strata.components) line(c.label, kind_name(c.geometry), betti(c.geometry));
        std::cout << "S^[2]\n";
        for (const auto& d : strata.double_strata)
            line(strata.label({d.pair[0], d.pair[1]}), kind_name(d.geometry), betti(d.geometry));
        std::cout << "S^[3]\n";
        for (const auto& t : strata.triple_strata)
            line(strata.label({t.triple[0], t.triple[1], t.triple[2]}), "SmoothConic", betti(t.geometry));
    }
    return report_check(o, check_strata(s, strata));
}

int cmd_ss(const Options& o) {
    auto s = require_scenario(o.target);
    auto strata = scenario_strata(s);
    auto grid = assemble_e1(strata);
    auto rep = compute_e2(grid, build_d1(strata, grid, s.cycle_model, s.annotations));
    std::optional<bool> chain_ok;
    if (s.cycle_model && s.chain) chain_ok = verify_cycle_chain(*s.cycle_model, *s.chain);
    if (o.json) {
        Json j = to_json(rep);
        j["scenario"] = s.name;
        if (chain_ok) j["chain_in_kernel"] = *chain_ok;
        if (s.cycle_model)
            j["cycle_model"] = {{"rank", rank(s.cycle_model->matrix)}, {"kernel", s.cycle_model->left_kernel_dim()}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "E1\n" << render_e1(grid) << "\nE2\n" << render_e2(rep) << '\n';
        std::cout << "betti (";
        for (std::size_t i = 0; i < rep.betti.size(); ++i) std::cout << (i ? "," : "") << rep.betti[i];
        std::cout << ")\nH3 weights (";
        for (std::size_t i = 0; i < rep.h3_weights.size(); ++i) std::cout << (i ? "," : "") << rep.h3_weights[i];
        std::cout << ")  " << (rep.pure ? "pure" : "non-pure") << '\n';
        for (const auto& [pos, md] : rep.maps)
            if (md.how == MapSource::Annotation || md.how == MapSource::CycleModel || md.how == MapSource::Dual)
                std::cout << "  d1" << pos_string(pos) << " rank " << *md.rank << " [" << to_string(md.how)
                          << "] " << md.justification << '\n';
        if (s.cycle_model)
            std::cout << "cycle model: rank " << rank(s.cycle_model->matrix) << ", kernel "
                      << s.cycle_model->left_kernel_dim() << '\n';
        if (chain_ok) std::cout << "bundled chain lies in the kernel: " << (*chain_ok ? "yes" : "no") << '\n';
    }
    auto m = check_strata(s, strata);
    auto ml = check_limit(s, rep);
    m.insert(m.end(), ml.begin(), ml.end());
    return report_check(o, m);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semistable degenerations of double octic families"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "JSON output (sorted keys)");
    app.add_flag("--check", o.check, "compare with the scenario's expected block; exit 1 on mismatch");
    app.add_option("--dot-dir", o.dot_dir, "directory for DOT files");

    struct Cmd {
        const char* name;
        const char* help;
        int (*run)(const Options&);
        bool takes_at;
    };
    const Cmd cmds[] = {
        {"incidence", "incidence profile of a family (generic, or at --at)", cmd_incidence, true},
        {"sigma", "degenerate parameter values with local types", cmd_sigma, false},
        {"classify", "local types at one parameter value", cmd_classify, true},
        {"resolve", "trace the central fiber of a scenario through its blow-ups", cmd_resolve, true},
        {"render", "DOT of the final central-fiber diagram", cmd_render, true},
        {"reduce", "components and strata of the semistable central fiber", cmd_reduce, false},
        {"ss", "monodromy weight spectral sequence and limit Betti numbers", cmd_ss, false},
    };
    int (*chosen)(const Options&) = nullptr;
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("target", o.target, "equation or scenario name")->required();
        if (c.takes_at) sub->add_option("--at", o.at, "parameter value, e.g. 0 or 1/2");
        sub->add_flag("--json", o.json);
        sub->add_flag("--check", o.check);
        sub->add_option("--dot-dir", o.dot_dir);
        auto run = c.run;
        sub->callback([&chosen, run] { chosen = run; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInput;
    }
    try {
        return chosen(o);
    } catch (const UnknownScenario& e) {
        std::cerr << e.what() << '\n';
        return kUnknownScenario;
    } catch (const InputError& e) {
        std::cerr << e.what() << '\n';
        return kInput;
    } catch (const MathError& e) {
        std::cerr << e.what() << '\n';
        return kMath;
    }
}
