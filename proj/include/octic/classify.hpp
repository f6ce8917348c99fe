#pragma once

#include "octic/incidence.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace octic {

enum class LocalType {
    NewL3,
    NewP40,
    P51toP52,
    TwoP41toP52,
    TwoP41toP51,
    P40toP52,
    NewP41,
    P40toP41,
    P40toP51,
    P50toP52,
    P50toP51,
};

inline constexpr std::array<LocalType, 11> kAllLocalTypes{
    LocalType::NewL3,    LocalType::NewP40,   LocalType::P51toP52, LocalType::TwoP41toP52,
    LocalType::TwoP41toP51, LocalType::P40toP52, LocalType::NewP41, LocalType::P40toP41,
    LocalType::P40toP51, LocalType::P50toP52, LocalType::P50toP51};

inline std::string to_string(LocalType t) {
    switch (t) {
        case LocalType::NewL3: return "NewL3";
        case LocalType::NewP40: return "NewP40";
        case LocalType::P51toP52: return "P51toP52";
        case LocalType::TwoP41toP52: return "TwoP41toP52";
        case LocalType::TwoP41toP51: return "TwoP41toP51";
        case LocalType::P40toP52: return "P40toP52";
        case LocalType::NewP41: return "NewP41";
        case LocalType::P40toP41: return "P40toP41";
        case LocalType::P40toP51: return "P40toP51";
        case LocalType::P50toP52: return "P50toP52";
        case LocalType::P50toP51: return "P50toP51";
    }
    return "?";
}

inline std::optional<LocalType> local_type_from_string(const std::string& s) {
    for (auto t : kAllLocalTypes)
        if (to_string(t) == s) return t;
    return std::nullopt;
}

class Unclassifiable : public MathError {
public:
    explicit Unclassifiable(const std::string& what) : MathError("Unclassifiable: " + what) {}
};

enum class CurveImage { TripleLine, FivefoldPoint };

inline std::string to_string(CurveImage c) { return c == CurveImage::TripleLine ? "TripleLine" : "FivefoldPoint"; }

struct ResidualCurve {
    int pinch_points = 0;
    std::optional<CurveImage> over;
    std::string label;  // e.g. "P5∩P5'" when produced by the diagram engine
};

struct ResidualSingularities {
    std::vector<ResidualCurve> double_curves;
    int nodes = 0;
    std::optional<std::string> node_surface;
    std::vector<std::vector<int>> triple_meeting_points;  // indices into double_curves
    std::vector<std::pair<int, int>> adjacency;           // pairs of meeting curves, i < j

    std::vector<int> pinch_multiset() const {
        std::vector<int> v;
        for (const auto& c : double_curves) v.push_back(c.pinch_points);
        std::sort(v.begin(), v.end());
        return v;
    }
    bool empty() const { return double_curves.empty() && nodes == 0; }
};

// Same curve count, pinch multiset, node count and number of triple meetings.
inline bool same_outcome(const ResidualSingularities& a, const ResidualSingularities& b) {
    return a.pinch_multiset() == b.pinch_multiset() && a.nodes == b.nodes &&
           a.triple_meeting_points.size() == b.triple_meeting_points.size();
}

inline ResidualSingularities residual_outcome(LocalType t) {
    using C = CurveImage;
    auto curve = [](int pinch, std::optional<C> over, std::string label = {}) {
        return ResidualCurve{pinch, over, std::move(label)};
    };
    ResidualSingularities r;
    switch (t) {
        case LocalType::NewL3:
            r.double_curves = {curve(0, C::TripleLine)};
            break;
        case LocalType::NewP40:
            r.nodes = 2;
            r.node_surface = "single surface with a small resolution";
            break;
        case LocalType::P51toP52:
            r.double_curves = {curve(1, std::nullopt)};
            break;
        case LocalType::TwoP41toP52:
            // Disjoint; which curve carries three pinch points depends on the order.
            r.double_curves = {curve(3, std::nullopt), curve(1, std::nullopt)};
            break;
        case LocalType::TwoP41toP51:
            r.double_curves = {curve(4, C::FivefoldPoint)};
            break;
        case LocalType::P40toP52:
            r.double_curves = {curve(0, C::FivefoldPoint, "55'"), curve(0, C::TripleLine, "55''"),
                               curve(2, C::FivefoldPoint, "5'5''"), curve(0, C::TripleLine, "55'''"),
                               curve(2, C::FivefoldPoint, "5'5'''")};
            r.triple_meeting_points = {{0, 1, 2}, {0, 3, 4}};
            r.adjacency = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}};
            break;
        case LocalType::NewP41:
            r.double_curves = {curve(1, C::TripleLine)};
            break;
        case LocalType::P40toP41:
            r.double_curves = {curve(0, C::TripleLine)};
            break;
        case LocalType::P40toP51:
            r.double_curves = {curve(2, C::FivefoldPoint), curve(2, C::FivefoldPoint), curve(0, C::TripleLine)};
            r.triple_meeting_points = {{0, 1, 2}};
            r.adjacency = {{0, 1}, {0, 2}, {1, 2}};
            break;
        case LocalType::P50toP52:
            r.double_curves = {curve(1, std::nullopt), curve(1, std::nullopt)};
            break;
        case LocalType::P50toP51:
            r.double_curves = {curve(1, C::TripleLine)};
            break;
    }
    return r;
}

namespace detail {

struct PointRule {
    std::vector<PointType> generic;  // sorted
    PointType special;
    LocalType type;
};

inline const std::vector<PointRule>& point_rules() {
    static const std::vector<PointRule> rules{
        {{}, {4, 0}, LocalType::NewP40},
        {{}, {4, 1}, LocalType::NewP41},
        {{{4, 0}}, {4, 1}, LocalType::P40toP41},
        {{{4, 0}}, {5, 1}, LocalType::P40toP51},
        {{{4, 0}}, {5, 2}, LocalType::P40toP52},
        {{{5, 0}}, {5, 1}, LocalType::P50toP51},
        {{{5, 0}}, {5, 2}, LocalType::P50toP52},
        {{{5, 1}}, {5, 2}, LocalType::P51toP52},
        {{{4, 1}, {4, 1}}, {5, 2}, LocalType::TwoP41toP52},
        {{{4, 1}, {4, 1}}, {5, 1}, LocalType::TwoP41toP51},
    };
    return rules;
}

inline std::string describe(const NewIncidence& c) {
    std::string s = to_string(c.kind) + " on planes " + plane_set_string(c.planes);
    if (!c.is_line) s += " (p=" + std::to_string(c.type.p) + ", j=" + std::to_string(c.type.j) + ")";
    return s;
}

inline LocalType classify_point(const NewIncidence& c) {
    std::vector<PointType> g = c.source_types;
    std::sort(g.begin(), g.end());
    for (const auto& r : point_rules())
        if (r.generic == g && r.special == c.type) return r.type;
    throw Unclassifiable(describe(c));
}

inline bool point_contains(const NewIncidence& point, const PlaneSet& line) {
    return std::includes(point.planes.begin(), point.planes.end(), line.begin(), line.end());
}

}  // namespace detail

// Classifies one change. A new triple line through a changed point of
// multiplicity >= 4 belongs to that point's degeneration.
inline LocalType classify_local(const NewIncidence& change, const IncidenceProfile& generic,
                                const IncidenceProfile& special) {
    if (!change.is_line) {
        if (change.type.p < 4) throw Unclassifiable(detail::describe(change));
        return detail::classify_point(change);
    }
    if (change.type.p != 3) throw Unclassifiable(detail::describe(change));
    for (const auto& other : profile_diff(generic, special))
        if (!other.is_line && other.type.p >= 4 && detail::point_contains(other, change.planes))
            return detail::classify_point(other);
    return LocalType::NewL3;
}

struct LocalEvent {
    LocalType type;
    NewIncidence change;
};

// One event per changed point of multiplicity >= 4, plus one per new triple
// line not passing through such a point.
inline std::vector<LocalEvent> classify_fiber(const IncidenceProfile& generic, const IncidenceProfile& special,
                                              const std::vector<NewIncidence>& changes) {
    std::vector<LocalEvent> out;
    for (const auto& c : changes)
        if (!c.is_line) out.push_back({classify_local(c, generic, special), c});
    for (const auto& c : changes) {
        if (!c.is_line) continue;
        bool absorbed = std::any_of(out.begin(), out.end(),
                                    [&](const LocalEvent& e) { return detail::point_contains(e.change, c.planes); });
        if (!absorbed) out.push_back({classify_local(c, generic, special), c});
    }
    return out;
}

}  // namespace octic
