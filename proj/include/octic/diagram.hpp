#pragma once

#include "octic/classify.hpp"
#include "octic/incidence.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace octic {

class RuleConflict : public MathError {
public:
    explicit RuleConflict(const std::string& what) : MathError("RuleConflict: " + what) {}
};

class CenterNotInDiagram : public MathError {
public:
    explicit CenterNotInDiagram(const std::string& token) : MathError("CenterNotInDiagram: " + token) {}
};

// Family components are "1".."8" for the planes and "A","B",... for the
// exceptional divisors of odd-multiplicity centers.
using Component = std::string;
using ComponentSet = std::set<Component>;

enum class CenterShape { Point, Curve };

struct Center {
    CenterShape shape = CenterShape::Curve;
    ComponentSet components;

    int generic_multiplicity() const { return static_cast<int>(components.size()); }
    std::string token() const {
        std::string t = shape == CenterShape::Point ? "P" : "L";
        for (const auto& c : components) t += c;
        return t;
    }
    friend bool operator==(const Center&, const Center&) = default;
};

// "L12", "L1A", "LAB", "P1234": one character per component.
inline Center parse_center(const std::string& token) {
    if (token.size() < 3 || (token[0] != 'L' && token[0] != 'P'))
        throw InputError("bad center token '" + token + "'");
    Center c;
    c.shape = token[0] == 'P' ? CenterShape::Point : CenterShape::Curve;
    for (std::size_t i = 1; i < token.size(); ++i) {
        char ch = token[i];
        if (!((ch >= '1' && ch <= '9') || (ch >= 'A' && ch <= 'Z')))
            throw InputError("bad component '" + std::string(1, ch) + "' in center '" + token + "'");
        if (!c.components.insert(std::string(1, ch)).second)
            throw InputError("repeated component in center '" + token + "'");
    }
    return c;
}

enum class SurfaceOrigin { Plane, Exceptional, Split, Ghost };

inline std::string to_string(SurfaceOrigin o) {
    switch (o) {
        case SurfaceOrigin::Plane: return "Plane";
        case SurfaceOrigin::Exceptional: return "Exceptional";
        case SurfaceOrigin::Split: return "Split";
        case SurfaceOrigin::Ghost: return "Ghost";
    }
    return "?";
}

struct Surface {
    std::string label;
    SurfaceOrigin origin = SurfaceOrigin::Plane;
    std::optional<std::string> parent;  // split surfaces: the strict transform they split from
    ComponentSet members;               // family components the surface belongs to
    int image_dim = 2;                  // dimension of its image in P^3
};

struct DiagramCurve {
    int id = 0;
    std::set<std::string> on_surfaces;
    int image_dim = 1;
};

enum class PointMark { Pinch, NodeOverThis, Separated };

inline std::string to_string(PointMark m) {
    switch (m) {
        case PointMark::Pinch: return "Pinch";
        case PointMark::NodeOverThis: return "NodeOverThis";
        case PointMark::Separated: return "Separated";
    }
    return "?";
}

struct DiagramPoint {
    int id = 0;
    std::set<int> curves;
    std::set<PointMark> marks;  // empty for an ordinary intersection point
};

enum class EventKind { SplitComponent, NewPinch, NewNodePair, NewExceptionalSurface };

inline std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::SplitComponent: return "SplitComponent";
        case EventKind::NewPinch: return "NewPinch";
        case EventKind::NewNodePair: return "NewNodePair";
        case EventKind::NewExceptionalSurface: return "NewExceptionalSurface";
    }
    return "?";
}

struct DiagramEvent {
    EventKind kind;
    std::string center;
    std::string surface;  // split or exceptional surface
    int curve = -1;       // pinched curve
    std::vector<std::string> node_surfaces;
};

enum class CentralGeometry { Point, Curve, TwoCrossingCurves, DisjointCurves };

inline std::string to_string(CentralGeometry g) {
    switch (g) {
        case CentralGeometry::Point: return "Point";
        case CentralGeometry::Curve: return "Curve";
        case CentralGeometry::TwoCrossingCurves: return "TwoCrossingCurves";
        case CentralGeometry::DisjointCurves: return "DisjointCurves";
    }
    return "?";
}

struct CenterContext {
    int generic_multiplicity = 0;
    int central_multiplicity = 0;
    CentralGeometry central_geometry = CentralGeometry::Curve;
    friend bool operator==(const CenterContext&, const CenterContext&) = default;
};

class Diagram {
public:
    std::map<std::string, Surface> surfaces;
    std::map<int, DiagramCurve> curves;
    std::map<int, DiagramPoint> points;
    std::vector<DiagramEvent> event_log;
    ComponentSet branch_components;
    int next_id = 0;
    int exceptional_count = 0;
    std::map<Component, int> split_count;

    bool is_branch(const std::string& surface) const {
        const auto& m = surfaces.at(surface).members;
        int k = 0;
        for (const auto& c : m) k += branch_components.count(c) ? 1 : 0;
        return k % 2 == 1;
    }

    std::vector<std::string> branch_surfaces_of(int curve) const {
        std::vector<std::string> out;
        for (const auto& s : curves.at(curve).on_surfaces)
            if (is_branch(s)) out.push_back(s);
        return out;
    }

    bool is_branch_curve(int curve) const { return branch_surfaces_of(curve).size() >= 2; }

    std::set<std::string> exceptional_on(int curve) const {
        std::set<std::string> out;
        for (const auto& s : curves.at(curve).on_surfaces) {
            auto o = surfaces.at(s).origin;
            if (o == SurfaceOrigin::Exceptional || o == SurfaceOrigin::Ghost) out.insert(s);
        }
        return out;
    }

    std::set<std::string> point_surfaces(int point) const {
        std::set<std::string> out;
        for (int c : points.at(point).curves) {
            const auto& s = curves.at(c).on_surfaces;
            out.insert(s.begin(), s.end());
        }
        return out;
    }

    int pinch_count(int curve) const {
        int n = 0;
        for (const auto& [id, p] : points)
            if (p.marks.count(PointMark::Pinch) && p.curves.count(curve)) ++n;
        return n;
    }

    std::vector<int> intersection_points_on(int curve) const {
        std::vector<int> out;
        for (const auto& [id, p] : points)
            if (p.marks.empty() && p.curves.count(curve)) out.push_back(id);
        return out;
    }

    int count_members(const Component& comp, const std::set<std::string>& on) const {
        int n = 0;
        for (const auto& s : on) n += surfaces.at(s).members.count(comp) ? 1 : 0;
        return n;
    }

    bool covers(const ComponentSet& comps, const std::set<std::string>& on) const {
        for (const auto& c : comps)
            if (count_members(c, on) == 0) return false;
        return true;
    }

    std::vector<int> center_curves(const Center& c) const {
        std::vector<int> out;
        for (const auto& [id, cur] : curves)
            if (covers(c.components, cur.on_surfaces)) out.push_back(id);
        return out;
    }

    std::vector<int> center_points(const Center& c) const {
        std::vector<int> out;
        for (const auto& [id, p] : points)
            if (p.marks.empty() && covers(c.components, point_surfaces(id))) out.push_back(id);
        return out;
    }

    int new_id() { return ++next_id; }

    int add_curve(std::set<std::string> on, int image_dim) {
        int id = new_id();
        curves[id] = DiagramCurve{id, std::move(on), image_dim};
        return id;
    }

    int add_point(std::set<int> on, std::set<PointMark> marks = {}) {
        int id = new_id();
        points[id] = DiagramPoint{id, std::move(on), std::move(marks)};
        return id;
    }

    void check_integrity() const {
        for (const auto& [id, c] : curves)
            for (const auto& s : c.on_surfaces)
                if (!surfaces.count(s)) throw RuleConflict("curve " + std::to_string(id) + " on missing surface " + s);
        for (const auto& [id, p] : points)
            for (int c : p.curves)
                if (!curves.count(c)) throw RuleConflict("point " + std::to_string(id) + " on missing curve");
    }
};

inline std::string surface_label_for_plane(int index) { return "P" + std::to_string(index + 1); }

inline Diagram initial_diagram(const IncidenceProfile& special) {
    if (special.n_forms > 8) throw MathError("initial_diagram: more than 8 planes");
    Diagram d;
    for (std::size_t i = 0; i < special.n_forms; ++i) {
        Surface s;
        s.label = surface_label_for_plane(static_cast<int>(i));
        s.origin = SurfaceOrigin::Plane;
        s.members = {std::to_string(i + 1)};
        s.image_dim = 2;
        d.surfaces[s.label] = s;
        d.branch_components.insert(std::to_string(i + 1));
    }
    std::map<PlaneSet, int> line_curve;
    for (const auto& l : special.lines) {
        std::set<std::string> on;
        for (int i : l.planes) on.insert(surface_label_for_plane(i));
        line_curve[l.planes] = d.add_curve(on, 1);
    }
    for (const auto& p : special.points) {
        std::set<int> on;
        for (const auto& l : special.lines)
            if (std::includes(p.planes.begin(), p.planes.end(), l.planes.begin(), l.planes.end()))
                on.insert(line_curve.at(l.planes));
        d.add_point(on);
    }
    return d;
}

inline Diagram initial_diagram(const Arrangement& special) { return initial_diagram(profile(special)); }

namespace detail {

class BlowUp {
public:
    BlowUp(Diagram& d, const Center& c) : d_(d), center_(c), token_(c.token()) {}

    void run() {
        if (center_.generic_multiplicity() % 2 == 1) {
            if (d_.exceptional_count >= 26) throw RuleConflict("too many exceptional components");
            odd_ = std::string(1, static_cast<char>('A' + d_.exceptional_count++));
            d_.branch_components.insert(*odd_);
        }
        if (center_.shape == CenterShape::Point) {
            auto z = d_.center_points(center_);
            if (z.empty()) throw CenterNotInDiagram(token_);
            if (z.size() > 1) throw RuleConflict("point center " + token_ + " matches several points");
            blow_point(z.front());
            return;
        }
        auto z = d_.center_curves(center_);
        if (z.empty()) throw CenterNotInDiagram(token_);
        if (odd_ && z.size() > 1) throw RuleConflict("odd center " + token_ + " restricts to several curves");
        crossing_rules(z);
        for (int c : z) blow_curve(c);
    }

private:
    // Two center curves through one point: a pinch on the single other branch
    // curve there, or a pair of nodes when there is none.
    void crossing_rules(const std::vector<int>& z) {
        std::set<int> zs(z.begin(), z.end());
        std::vector<int> ids;
        for (const auto& [id, p] : d_.points)
            if (p.marks.empty()) ids.push_back(id);
        for (int q : ids) {
            const auto& p = d_.points.at(q);
            std::vector<int> zc, others;
            for (int c : p.curves) {
                if (zs.count(c)) zc.push_back(c);
                else if (d_.is_branch_curve(c)) others.push_back(c);
            }
            if (zc.size() < 2) continue;
            if (zc.size() > 2) throw RuleConflict("three center curves through one point in " + token_);
            if (others.size() == 1) {
                d_.add_point({others.front()}, {PointMark::Pinch});
                d_.event_log.push_back({EventKind::NewPinch, token_, {}, others.front(), {}});
            } else if (others.empty()) {
                std::vector<std::string> common;
                const auto& a = d_.curves.at(zc[0]).on_surfaces;
                const auto& b = d_.curves.at(zc[1]).on_surfaces;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
                d_.event_log.push_back({EventKind::NewNodePair, token_, {}, -1, common});
            } else {
                throw RuleConflict("several branch curves through a crossing of " + token_);
            }
        }
    }

    std::string new_surface(const std::set<std::string>& incident, int image_dim) {
        ComponentSet members;
        for (const auto& comp : d_.branch_components) {
            int k = d_.count_members(comp, incident) - (center_.components.count(comp) ? 1 : 0);
            if (odd_ && comp == *odd_) k = 1;
            if (k >= 2) throw RuleConflict("non-reduced exceptional divisor in " + token_);
            if (k == 1) members.insert(comp);
        }
        Surface s;
        s.members = members;
        s.image_dim = image_dim;
        if (odd_) {
            s.label = *odd_;
            s.origin = SurfaceOrigin::Exceptional;
            d_.event_log.push_back({EventKind::NewExceptionalSurface, token_, s.label, -1, {}});
        } else if (members.size() == 1) {
            const auto& comp = *members.begin();
            int n = ++d_.split_count[comp];
            std::string base = comp.size() == 1 && comp[0] >= 'A' ? comp : "P" + comp;
            s.label = base + std::string(static_cast<std::size_t>(n), '\'');
            s.origin = SurfaceOrigin::Split;
            s.parent = base;
            d_.event_log.push_back({EventKind::SplitComponent, token_, s.label, -1, {}});
        } else {
            s.label = "E" + std::to_string(d_.next_id);
            s.origin = SurfaceOrigin::Ghost;
        }
        if (d_.surfaces.count(s.label)) throw RuleConflict("duplicate surface label " + s.label);
        d_.surfaces[s.label] = s;
        return s.label;
    }

    void blow_curve(int c) {
        const auto sc = d_.curves.at(c).on_surfaces;
        const int image = d_.curves.at(c).image_dim;
        const std::string e = new_surface(sc, image);
        std::map<std::string, int> section;
        for (const auto& s : sc) section[s] = d_.add_curve({s, e}, image);

        for (int q : d_.intersection_points_on(c)) {
            const auto through = d_.point_surfaces(q);
            std::set<std::string> rest;
            std::set_difference(through.begin(), through.end(), sc.begin(), sc.end(),
                                std::inserter(rest, rest.end()));
            std::optional<int> fiber;
            if (!rest.empty()) {
                rest.insert(e);
                fiber = d_.add_curve(rest, 0);
            }
            std::vector<int> others;
            for (int k : d_.points.at(q).curves)
                if (k != c) others.push_back(k);

            // Surfaces of the center sharing another curve through q stay tangent.
            std::map<std::string, std::string> parent;
            for (const auto& s : sc) parent[s] = s;
            auto find = [&](std::string x) {
                while (parent[x] != x) x = parent[x];
                return x;
            };
            for (int k : others) {
                std::vector<std::string> in;
                for (const auto& s : d_.curves.at(k).on_surfaces)
                    if (sc.count(s)) in.push_back(s);
                for (std::size_t i = 1; i < in.size(); ++i) parent[find(in[i])] = find(in[0]);
            }
            std::map<std::string, std::set<int>> classes;
            for (const auto& s : sc) {
                auto& cls = classes[find(s)];
                if (fiber) cls.insert(*fiber);
                cls.insert(section.at(s));
            }
            std::vector<std::set<int>> fresh;
            for (int k : others) {
                std::optional<std::string> first;
                for (const auto& s : d_.curves.at(k).on_surfaces)
                    if (sc.count(s)) {
                        first = s;
                        break;
                    }
                if (first) classes[find(*first)].insert(k);
                else fresh.push_back({*fiber, k});
            }
            d_.points.erase(q);
            for (auto& f : fresh) d_.add_point(std::move(f));
            for (auto& [root, cls] : classes)
                if (cls.size() >= 2) d_.add_point(std::move(cls));
        }
        drop_curve(c);
    }

    void blow_point(int q) {
        const auto sq = d_.point_surfaces(q);
        const std::string e = new_surface(sq, 0);
        std::map<std::string, int> ell;
        for (const auto& s : sq) ell[s] = d_.add_curve({s, e}, 0);
        const auto through = d_.points.at(q).curves;
        d_.points.erase(q);
        for (int k : through) {
            std::set<int> on{k};
            for (const auto& s : d_.curves.at(k).on_surfaces) on.insert(ell.at(s));
            d_.add_point(std::move(on));
        }
    }

    void drop_curve(int c) {
        for (auto it = d_.points.begin(); it != d_.points.end();) {
            if (it->second.curves.count(c) && !it->second.marks.empty()) it = d_.points.erase(it);
            else ++it;
        }
        d_.curves.erase(c);
    }

    Diagram& d_;
    Center center_;
    std::string token_;
    std::optional<std::string> odd_;
};

}  // namespace detail

inline CenterContext center_context(const Diagram& d, const Center& c) {
    CenterContext ctx;
    ctx.generic_multiplicity = c.generic_multiplicity();
    if (c.shape == CenterShape::Point) {
        auto z = d.center_points(c);
        if (z.empty()) throw CenterNotInDiagram(c.token());
        ctx.central_geometry = CentralGeometry::Point;
        for (const auto& s : d.point_surfaces(z.front()))
            if (d.is_branch(s)) ++ctx.central_multiplicity;
        return ctx;
    }
    auto z = d.center_curves(c);
    if (z.empty()) throw CenterNotInDiagram(c.token());
    for (int k : z) ctx.central_multiplicity = std::max<int>(ctx.central_multiplicity, static_cast<int>(d.branch_surfaces_of(k).size()));
    if (z.size() == 1) {
        ctx.central_geometry = CentralGeometry::Curve;
    } else {
        bool crossing = false;
        for (const auto& [id, p] : d.points) {
            if (!p.marks.empty()) continue;
            int n = 0;
            for (int k : z) n += p.curves.count(k) ? 1 : 0;
            crossing = crossing || n >= 2;
        }
        ctx.central_geometry = crossing ? CentralGeometry::TwoCrossingCurves : CentralGeometry::DisjointCurves;
    }
    return ctx;
}

// Blow-up of the family along the center, restricted to the central fiber.
inline Diagram apply_blowup(Diagram d, const Center& center) {
    detail::BlowUp(d, center).run();
    d.check_integrity();
    return d;
}

inline Diagram apply_blowup(const Diagram& d, const Center& center, const CenterContext& ctx) {
    if (ctx.generic_multiplicity != center.generic_multiplicity())
        throw RuleConflict("context multiplicity does not match center " + center.token());
    if (ctx.central_multiplicity < ctx.generic_multiplicity && ctx.central_geometry != CentralGeometry::Point)
        throw RuleConflict("central multiplicity below generic multiplicity for " + center.token());
    return apply_blowup(d, center);
}

inline std::string curve_label(const Diagram& d, int curve) {
    auto b = d.branch_surfaces_of(curve);
    std::string out;
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "∩" : "") + b[i];
    return out;
}

inline ResidualSingularities residual_report(const Diagram& d) {
    ResidualSingularities r;
    std::vector<int> ids;
    for (const auto& [id, c] : d.curves)
        if (d.is_branch_curve(id)) ids.push_back(id);
    std::map<int, int> index;
    for (int id : ids) {
        index[id] = static_cast<int>(r.double_curves.size());
        ResidualCurve rc;
        rc.pinch_points = d.pinch_count(id);
        rc.over = d.curves.at(id).image_dim == 0 ? CurveImage::FivefoldPoint : CurveImage::TripleLine;
        rc.label = curve_label(d, id);
        r.double_curves.push_back(rc);
    }
    std::set<std::pair<int, int>> adj;
    for (const auto& [pid, p] : d.points) {
        if (!p.marks.empty()) continue;
        std::vector<int> meet;
        for (int c : p.curves)
            if (index.count(c)) meet.push_back(index.at(c));
        std::sort(meet.begin(), meet.end());
        if (meet.size() >= 3) r.triple_meeting_points.push_back(meet);
        for (std::size_t i = 0; i < meet.size(); ++i)
            for (std::size_t j = i + 1; j < meet.size(); ++j) adj.insert({meet[i], meet[j]});
    }
    std::sort(r.triple_meeting_points.begin(), r.triple_meeting_points.end());
    r.adjacency.assign(adj.begin(), adj.end());
    std::set<std::string> node_surfaces;
    for (const auto& e : d.event_log)
        if (e.kind == EventKind::NewNodePair) {
            r.nodes += 2;
            for (const auto& s : e.node_surfaces) node_surfaces.insert(s);
        }
    if (!node_surfaces.empty()) {
        std::string s;
        for (const auto& x : node_surfaces) s += (s.empty() ? "" : ",") + x;
        r.node_surface = s;
    }
    return r;
}

namespace detail {
inline std::string dot_id(const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\\\"") : std::string(1, c);
    return out + "\"";
}
}  // namespace detail

// One cluster per surface, one node per curve incidence. Edges join the
// incidences of a curve (dashed on exceptional surfaces) and curves meeting
// at a point inside a common surface; pinch points are doublecircle nodes.
inline std::string render_dot(const Diagram& d, const std::string& title = "diagram") {
    std::ostringstream os;
    os << "graph " << detail::dot_id(title) << " {\n";
    os << "  compound=true;\n  node [shape=box, fontsize=10];\n";
    auto node = [](const std::string& s, int c) { return detail::dot_id(s + "/c" + std::to_string(c)); };
    for (const auto& [label, s] : d.surfaces) {
        os << "  subgraph " << detail::dot_id("cluster_" + label) << " {\n";
        os << "    label=" << detail::dot_id(label) << ";\n";
        if (s.origin != SurfaceOrigin::Plane) os << "    style=" << (d.is_branch(label) ? "bold" : "dotted") << ";\n";
        os << "    " << detail::dot_id(label + "/anchor") << " [shape=none, label=\"\"];\n";
        for (const auto& [id, c] : d.curves)
            if (c.on_surfaces.count(label)) os << "    " << node(label, id) << " [label=\"c" << id << "\"];\n";
        os << "  }\n";
    }
    for (const auto& [id, c] : d.curves) {
        std::vector<std::string> on(c.on_surfaces.begin(), c.on_surfaces.end());
        bool dashed = !d.exceptional_on(id).empty();
        for (std::size_t i = 1; i < on.size(); ++i)
            os << "  " << node(on[i - 1], id) << " -- " << node(on[i], id) << (dashed ? " [style=dashed]" : "")
               << ";\n";
    }
    for (const auto& [pid, p] : d.points) {
        if (p.marks.count(PointMark::Pinch)) {
            int c = *p.curves.begin();
            const auto& s = *d.curves.at(c).on_surfaces.begin();
            os << "  " << detail::dot_id("pinch" + std::to_string(pid)) << " [shape=doublecircle, label=\"\", width=0.1];\n";
            os << "  " << detail::dot_id("pinch" + std::to_string(pid)) << " -- " << node(s, c) << ";\n";
            continue;
        }
        std::vector<int> cs(p.curves.begin(), p.curves.end());
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                const auto& a = d.curves.at(cs[i]).on_surfaces;
                const auto& b = d.curves.at(cs[j]).on_surfaces;
                std::vector<std::string> common;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
                for (const auto& s : common)
                    os << "  " << node(s, cs[i]) << " -- " << node(s, cs[j]) << " [color=gray, label=\"q" << pid
                       << "\"];\n";
            }
    }
    os << "}\n";
    return os.str();
}

}  // namespace octic
