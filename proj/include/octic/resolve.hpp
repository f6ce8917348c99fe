#pragma once

#include "octic/diagram.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace octic {

class NotOctic : public MathError {
public:
    explicit NotOctic(const std::string& what) : MathError("NotOctic: " + what) {}
};

class ScheduleError : public InputError {
public:
    explicit ScheduleError(const std::string& what) : InputError("ScheduleError: " + what) {}
};

enum class CenterKind { FivefoldPoint, TripleLine, QuadruplePoint, DoubleLine };

inline std::string to_string(CenterKind k) {
    switch (k) {
        case CenterKind::FivefoldPoint: return "FivefoldPoint";
        case CenterKind::TripleLine: return "TripleLine";
        case CenterKind::QuadruplePoint: return "QuadruplePoint";
        case CenterKind::DoubleLine: return "DoubleLine";
    }
    return "?";
}

struct ScheduledCenter {
    CenterKind kind;
    Center center;
    int phase = 0;
    std::string token() const { return center.token(); }
};

struct BlowUpSchedule {
    std::vector<ScheduledCenter> steps;
    std::vector<std::string> tokens() const {
        std::vector<std::string> out;
        for (const auto& s : steps) out.push_back(s.token());
        return out;
    }
};

// Double lines default to plane-plane pairs first, then lines on exceptional
// components, each lexicographic. An explicit list reorders centers within
// their phases; unlisted centers of a phase follow in default order.
struct OrderPolicy {
    std::vector<std::string> explicit_order;
    static OrderPolicy lexicographic() { return {}; }
    static OrderPolicy from_list(std::vector<std::string> tokens) { return {std::move(tokens)}; }
};

namespace detail {

inline Center center_of(CenterShape shape, const PlaneSet& planes) {
    Center c;
    c.shape = shape;
    for (int i : planes) c.components.insert(std::to_string(i + 1));
    return c;
}

inline bool plane_only(const Center& c) {
    for (const auto& comp : c.components)
        if (!(comp[0] >= '1' && comp[0] <= '9')) return false;
    return true;
}

inline void check_resolvable(const IncidenceProfile& generic) {
    for (const auto& l : generic.lines)
        if (l.q() >= 4) throw NotOctic("line " + plane_set_string(l.planes) + " of multiplicity " + std::to_string(l.q()));
    for (const auto& p : generic.points)
        if (p.p() >= 6) throw NotOctic("point " + plane_set_string(p.planes) + " of multiplicity " + std::to_string(p.p()));
    // After the fivefold points are gone the triple lines must be disjoint.
    for (std::size_t a = 0; a < generic.lines.size(); ++a)
        for (std::size_t b = a + 1; b < generic.lines.size(); ++b) {
            const auto& la = generic.lines[a];
            const auto& lb = generic.lines[b];
            if (la.q() < 3 || lb.q() < 3) continue;
            for (const auto& p : generic.points) {
                bool both = std::includes(p.planes.begin(), p.planes.end(), la.planes.begin(), la.planes.end()) &&
                            std::includes(p.planes.begin(), p.planes.end(), lb.planes.begin(), lb.planes.end());
                if (both && p.p() < 5) throw NotOctic("triple lines meet outside a fivefold point");
            }
        }
}

}  // namespace detail

inline BlowUpSchedule schedule(const IncidenceProfile& generic, const OrderPolicy& policy = {}) {
    detail::check_resolvable(generic);
    std::vector<ScheduledCenter> phases[4];
    for (const auto& p : generic.points)
        if (p.p() >= 5) phases[0].push_back({CenterKind::FivefoldPoint, detail::center_of(CenterShape::Point, p.planes), 1});
    for (const auto& l : generic.lines)
        if (l.q() >= 3) phases[1].push_back({CenterKind::TripleLine, detail::center_of(CenterShape::Curve, l.planes), 2});
    for (const auto& p : generic.points)
        if (p.p() == 4 && p.j == 0)
            phases[2].push_back({CenterKind::QuadruplePoint, detail::center_of(CenterShape::Point, p.planes), 3});

    // Remaining double curves are read off the generic model after phases 1-3.
    Diagram model = initial_diagram(generic);
    std::set<std::string> listed(policy.explicit_order.begin(), policy.explicit_order.end());
    auto order_phase = [&](std::vector<ScheduledCenter>& phase) {
        std::vector<ScheduledCenter> out;
        for (const auto& tok : policy.explicit_order)
            for (const auto& s : phase)
                if (s.token() == tok) out.push_back(s);
        for (const auto& s : phase)
            if (!listed.count(s.token())) out.push_back(s);
        phase = std::move(out);
    };
    for (int k = 0; k < 3; ++k) {
        order_phase(phases[k]);
        for (const auto& s : phases[k]) model = apply_blowup(model, s.center);
    }
    std::set<std::string> seen;
    std::vector<ScheduledCenter> plane_pairs, exceptional;
    for (const auto& [id, c] : model.curves) {
        if (!model.is_branch_curve(id)) continue;
        Center center;
        center.shape = CenterShape::Curve;
        for (const auto& s : model.branch_surfaces_of(id))
            for (const auto& m : model.surfaces.at(s).members)
                if (model.branch_components.count(m)) center.components.insert(m);
        if (center.components.size() != 2) throw NotOctic("generic model keeps a curve of multiplicity > 2");
        if (!seen.insert(center.token()).second) continue;
        ScheduledCenter sc{CenterKind::DoubleLine, center, 4};
        (detail::plane_only(center) ? plane_pairs : exceptional).push_back(sc);
    }
    auto by_token = [](const ScheduledCenter& a, const ScheduledCenter& b) { return a.token() < b.token(); };
    std::sort(plane_pairs.begin(), plane_pairs.end(), by_token);
    std::sort(exceptional.begin(), exceptional.end(), by_token);
    phases[3] = plane_pairs;
    phases[3].insert(phases[3].end(), exceptional.begin(), exceptional.end());
    order_phase(phases[3]);

    BlowUpSchedule out;
    for (auto& ph : phases) out.steps.insert(out.steps.end(), ph.begin(), ph.end());
    std::set<std::string> known;
    for (const auto& s : out.steps) known.insert(s.token());
    std::set<std::string> used;
    for (const auto& tok : policy.explicit_order) {
        if (!known.count(tok)) throw ScheduleError("center " + tok + " is not in the generic schedule");
        if (!used.insert(tok).second) throw ScheduleError("center " + tok + " listed twice");
    }
    int last = 0;
    for (const auto& tok : policy.explicit_order) {
        int phase = 0;
        for (const auto& s : out.steps)
            if (s.token() == tok) phase = s.phase;
        if (phase < last) throw ScheduleError("center " + tok + " listed after a later phase");
        last = phase;
    }
    return out;
}

// The generic fiber after the full schedule: no branch curves may remain.
inline bool schedule_resolves(const IncidenceProfile& generic, const BlowUpSchedule& s) {
    Diagram d = initial_diagram(generic);
    for (const auto& step : s.steps) d = apply_blowup(d, step.center);
    return residual_report(d).empty();
}

struct TraceStep {
    std::string token;
    CenterContext context;
    Diagram diagram;
    std::vector<DiagramEvent> events;
};

struct CentralTrace {
    Diagram initial;
    std::vector<TraceStep> steps;
    ResidualSingularities residual;
    const Diagram& final_diagram() const { return steps.empty() ? initial : steps.back().diagram; }
};

inline CentralTrace trace_central_fiber(const ParamArrangement& a, const Rational& w0, const BlowUpSchedule& s) {
    CentralTrace out;
    out.initial = initial_diagram(special_profile(a, w0));
    Diagram d = out.initial;
    for (const auto& step : s.steps) {
        CenterContext ctx = center_context(d, step.center);
        std::size_t before = d.event_log.size();
        d = apply_blowup(d, step.center, ctx);
        std::vector<DiagramEvent> ev(d.event_log.begin() + static_cast<std::ptrdiff_t>(before), d.event_log.end());
        out.steps.push_back({step.token(), ctx, d, std::move(ev)});
    }
    out.residual = residual_report(d);
    return out;
}

struct Stratum {
    PlaneSet planes;
    int dim = 0;  // dimension in the total space of the family
    int m = 0;
    std::optional<Rational> fiber;  // parameter value when the stratum lives in one fiber
    std::string describe() const {
        std::string s = plane_set_string(planes) + " dim " + std::to_string(dim) + " m " + std::to_string(m);
        if (fiber) s += " at w=" + to_string(*fiber);
        return s;
    }
};

struct StratumCheck {
    Stratum stratum;
    bool dimension_identity = false;
    std::optional<Stratum> near_pencil_via;
    bool passes = false;
};

struct NearPencilReport {
    std::vector<StratumCheck> checks;
    std::vector<int> quadratic_forms;  // forms giving degree-2 hypersurfaces of the family
    bool first_center_is_point = false;
    bool all_pass = true;
};

// Strata of the branch divisor of the family as a fourfold: generic lines and
// points sweep surfaces and curves; new lines and points of special fibers
// are curves and points.
inline NearPencilReport near_pencil_check(const ParamArrangement& a) {
    constexpr int kTotalDim = 4;
    NearPencilReport out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool quadratic = a.forms[i][3].degree() >= 2;
        for (int k = 0; k < 3; ++k) quadratic = quadratic || a.forms[i][k].degree() >= 1;
        if (quadratic) out.quadratic_forms.push_back(static_cast<int>(i));
    }
    auto scan = degenerate_values(a);
    const auto& gen = scan.generic;
    std::vector<Stratum> strata;
    for (const auto& l : gen.lines) strata.push_back({l.planes, 2, l.q(), std::nullopt});
    for (const auto& p : gen.points) strata.push_back({p.planes, 1, p.p(), std::nullopt});
    struct SpecialPoint {
        Stratum s;
        ProjPoint at;
    };
    std::vector<SpecialPoint> special_points;
    for (const auto& dv : scan.sigma) {
        for (const auto& l : dv.special.lines)
            if (!gen.find_line(l.planes)) strata.push_back({l.planes, 1, l.q(), dv.w0});
        for (const auto& p : dv.special.points)
            if (!gen.find_point(p.planes)) {
                strata.push_back({p.planes, 0, p.p(), dv.w0});
                special_points.push_back({strata.back(), p.point});
            }
    }
    auto subset = [](const PlaneSet& small, const PlaneSet& big) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    for (const auto& s : strata) {
        if (s.m < 3) continue;
        StratumCheck chk;
        chk.stratum = s;
        chk.dimension_identity = s.m / 2 == kTotalDim - s.dim - 1;
        for (const auto& c : strata) {
            if (c.dim != s.dim + 1 || c.m != s.m - 1 || !subset(c.planes, s.planes)) continue;
            if (c.fiber && c.fiber != s.fiber) continue;
            if (s.dim == 0 && !c.fiber) {
                // A generic point sweeps a curve; it must pass through this point.
                const MultiplePoint* gp = gen.find_point(c.planes);
                ProjPoint here;
                for (const auto& sp : special_points)
                    if (sp.s.planes == s.planes && sp.s.fiber == s.fiber) here = sp.at;
                if (!gp || limit_point(gp->point, *s.fiber) != here) continue;
            }
            chk.near_pencil_via = c;
            break;
        }
        chk.passes = chk.dimension_identity || chk.near_pencil_via.has_value();
        out.all_pass = out.all_pass && chk.passes;
        out.checks.push_back(std::move(chk));
    }
    auto sched = schedule(gen);
    out.first_center_is_point = !sched.steps.empty() && sched.steps.front().center.shape == CenterShape::Point;
    return out;
}

}  // namespace octic
