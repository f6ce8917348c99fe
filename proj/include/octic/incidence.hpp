#pragma once

#include "octic/forms.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace octic {

class CoincidentPlanes : public MathError {
public:
    CoincidentPlanes(std::size_t i, std::size_t j)
        : MathError("CoincidentPlanes: forms " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    " are proportional"),
          first(i), second(j) {}
    std::size_t first, second;
};

class WrongPlaneCount : public MathError {
public:
    explicit WrongPlaneCount(std::size_t n)
        : MathError("WrongPlaneCount: octic check needs 8 forms, got " + std::to_string(n)) {}
};

using PlaneSet = std::vector<int>;  // sorted, 0-based form indices

// Projective point with polynomial coordinates (constants for a fixed fiber),
// scaled so the first nonzero coordinate is monic and the gcd is 1.
using ProjPoint = std::array<Poly, 4>;

inline std::string plane_set_string(const PlaneSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

inline std::string point_string(const ProjPoint& p) {
    std::string out = "(";
    for (int k = 0; k < 4; ++k) out += (k ? ":" : "") + p[k].str();
    return out + ")";
}

struct MultipleLine {
    PlaneSet planes;
    std::array<ProjPoint, 2> basis;
    int q() const { return static_cast<int>(planes.size()); }
};

struct MultiplePoint {
    PlaneSet planes;
    ProjPoint point;
    int j = 0;  // lines with q >= 3 through the point
    int p() const { return static_cast<int>(planes.size()); }
};

struct IncidenceProfile {
    std::vector<MultipleLine> lines;
    std::vector<MultiplePoint> points;
    std::size_t n_forms = 0;
    bool generic = false;            // computed over Q(w)
    std::optional<Rational> at;      // parameter value of a specialized fiber

    const MultiplePoint* find_point(const PlaneSet& s) const {
        for (const auto& p : points)
            if (p.planes == s) return &p;
        return nullptr;
    }
    const MultipleLine* find_line(const PlaneSet& s) const {
        for (const auto& l : lines)
            if (l.planes == s) return &l;
        return nullptr;
    }
};

// Combinatorial equality: same plane sets and counts, coordinates ignored.
inline bool same_combinatorics(const IncidenceProfile& a, const IncidenceProfile& b) {
    if (a.n_forms != b.n_forms || a.lines.size() != b.lines.size() || a.points.size() != b.points.size())
        return false;
    for (std::size_t i = 0; i < a.lines.size(); ++i)
        if (a.lines[i].planes != b.lines[i].planes) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        if (a.points[i].planes != b.points[i].planes || a.points[i].j != b.points[i].j) return false;
    return true;
}

namespace detail {

inline ProjPoint normalize_point(std::array<Poly, 4> c) {
    Poly g;
    for (const auto& x : c)
        if (!x.is_zero()) g = g.is_zero() ? x.monic() : poly_gcd(g, x);
    if (g.is_zero()) return c;
    for (auto& x : c) x = x / g;
    Rational lead;
    for (const auto& x : c)
        if (!x.is_zero()) {
            lead = x.lead();
            break;
        }
    for (auto& x : c) x = x * Poly(Rational(1) / lead);
    return c;
}

inline ProjPoint to_point(const std::vector<Rational>& v) {
    return normalize_point({Poly(v[0]), Poly(v[1]), Poly(v[2]), Poly(v[3])});
}

inline ProjPoint to_point(const std::vector<RationalFunction>& v) {
    Poly l(1);
    for (const auto& x : v) l = l / poly_gcd(l, x.den()) * x.den();
    std::array<Poly, 4> c;
    for (int k = 0; k < 4; ++k) c[k] = v[k].num() * (l / v[k].den());
    return normalize_point(c);
}

template <class T>
std::size_t subset_rank(const std::vector<FormOf<T>>& forms, const PlaneSet& s) {
    return rank(coefficient_matrix(forms, s));
}

}  // namespace detail

template <class T>
IncidenceProfile profile_of(const std::vector<FormOf<T>>& forms) {
    const int n = static_cast<int>(forms.size());
    for (int i = 0; i < n; ++i)
        if (is_zero_form(forms[i])) throw FormVanishes(static_cast<std::size_t>(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (proportional(forms[i], forms[j])) throw CoincidentPlanes(i, j);

    IncidenceProfile out;
    out.n_forms = forms.size();
    std::set<PlaneSet> seen_lines;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            PlaneSet s;
            for (int k = 0; k < n; ++k)
                if (k == i || k == j || detail::subset_rank(forms, {i, j, k}) == 2) s.push_back(k);
            if (!seen_lines.insert(s).second) continue;
            auto ker = rref(coefficient_matrix(forms, {i, j})).kernel;
            out.lines.push_back({s, {detail::to_point(ker[0]), detail::to_point(ker[1])}});
        }
    std::set<PlaneSet> seen_points;
    for (const auto& t : subsets(n, 3)) {
        if (detail::subset_rank(forms, t) != 3) continue;
        PlaneSet s;
        for (int k = 0; k < n; ++k) {
            PlaneSet u = t;
            u.push_back(k);
            if (std::find(t.begin(), t.end(), k) != t.end() || detail::subset_rank(forms, u) == 3) s.push_back(k);
        }
        if (!seen_points.insert(s).second) continue;
        auto ker = rref(coefficient_matrix(forms, t)).kernel;
        out.points.push_back({s, detail::to_point(ker[0]), 0});
    }
    auto by_planes = [](const auto& a, const auto& b) { return a.planes < b.planes; };
    std::sort(out.lines.begin(), out.lines.end(), by_planes);
    std::sort(out.points.begin(), out.points.end(), by_planes);
    for (auto& p : out.points)
        for (const auto& l : out.lines)
            if (l.q() >= 3 && std::includes(p.planes.begin(), p.planes.end(), l.planes.begin(), l.planes.end()))
                ++p.j;
    return out;
}

inline IncidenceProfile profile(const Arrangement& a) { return profile_of(a.forms); }

inline IncidenceProfile generic_profile(const ParamArrangement& a) {
    std::vector<FormOf<RationalFunction>> forms;
    for (const auto& f : a.forms) forms.push_back({f[0], f[1], f[2], f[3]});
    auto p = profile_of(forms);
    p.generic = true;
    return p;
}

inline IncidenceProfile special_profile(const ParamArrangement& a, const Rational& w0) {
    auto p = profile(specialize(a, w0));
    p.at = w0;
    return p;
}

struct OcticViolation {
    std::string what;  // "line" or "point"
    PlaneSet planes;
    int multiplicity;
};

struct OcticCheck {
    bool valid = true;
    std::vector<OcticViolation> violations;
};

inline OcticCheck is_octic(const IncidenceProfile& p) {
    if (p.n_forms != 8) throw WrongPlaneCount(p.n_forms);
    OcticCheck out;
    for (const auto& l : p.lines)
        if (l.q() >= 4) out.violations.push_back({"line", l.planes, l.q()});
    for (const auto& pt : p.points)
        if (pt.p() >= 6) out.violations.push_back({"point", pt.planes, pt.p()});
    out.valid = out.violations.empty();
    return out;
}

enum class IncidenceKind { NewTripleLine, NewPoint, PointCollision, PointOnNewLine };

inline std::string to_string(IncidenceKind k) {
    switch (k) {
        case IncidenceKind::NewTripleLine: return "NewTripleLine";
        case IncidenceKind::NewPoint: return "NewPoint";
        case IncidenceKind::PointCollision: return "PointCollision";
        case IncidenceKind::PointOnNewLine: return "PointOnNewLine";
    }
    return "?";
}

struct PointType {
    int p = 0;
    int j = 0;
    friend auto operator<=>(const PointType&, const PointType&) = default;
};

struct NewIncidence {
    IncidenceKind kind;
    PlaneSet planes;
    bool is_line = false;
    PointType type;                      // special (p, j); for lines p = q
    std::vector<PlaneSet> sources;       // generic points of multiplicity >= 4 landing here
    std::vector<PointType> source_types;
    std::vector<ProjPoint> location;     // the point, or two points spanning the line
};

// Specializes a generic point at w0, dividing out the common vanishing order.
inline ProjPoint limit_point(const ProjPoint& p, const Rational& w0) {
    std::array<Poly, 4> c = p;
    const Poly lin(std::vector<Rational>{-w0, 1});
    auto all_vanish = [&] {
        bool any = false;
        for (const auto& x : c) {
            if (x.is_zero()) continue;
            any = true;
            if (x(w0) != 0) return false;
        }
        return any;
    };
    while (all_vanish())
        for (auto& x : c) x = x / lin;
    std::vector<Rational> v;
    for (const auto& x : c) v.push_back(x(w0));
    return detail::to_point(v);
}

// Generic points with p >= 4 that specialize onto special point `sp`. With a
// parameter value available the test is on coordinates; otherwise on plane sets.
inline std::vector<const MultiplePoint*> landing_points(const IncidenceProfile& generic, const IncidenceProfile& special,
                                                        const MultiplePoint& sp) {
    std::vector<const MultiplePoint*> out;
    for (const auto& gp : generic.points) {
        if (gp.p() < 4) continue;
        bool lands;
        if (special.at && generic.generic)
            lands = limit_point(gp.point, *special.at) == sp.point;
        else
            lands = std::includes(sp.planes.begin(), sp.planes.end(), gp.planes.begin(), gp.planes.end());
        if (lands) out.push_back(&gp);
    }
    return out;
}

inline std::vector<NewIncidence> profile_diff(const IncidenceProfile& generic, const IncidenceProfile& special) {
    std::vector<NewIncidence> out;
    if (generic.n_forms != special.n_forms) throw MathError("profile_diff: different numbers of forms");
    for (const auto& l : special.lines) {
        if (l.q() < 3 || generic.find_line(l.planes)) continue;
        NewIncidence n{IncidenceKind::NewTripleLine, l.planes, true, {l.q(), 0}, {}, {}, {l.basis[0], l.basis[1]}};
        out.push_back(std::move(n));
    }
    for (const auto& sp : special.points) {
        const MultiplePoint* same = generic.find_point(sp.planes);
        if (same && same->j == sp.j) continue;
        NewIncidence n;
        n.planes = sp.planes;
        n.type = {sp.p(), sp.j};
        n.location = {sp.point};
        for (const auto* gp : landing_points(generic, special, sp)) {
            n.sources.push_back(gp->planes);
            n.source_types.push_back({gp->p(), gp->j});
        }
        if (same) {
            n.kind = IncidenceKind::PointOnNewLine;
        } else if (n.sources.size() >= 2) {
            n.kind = IncidenceKind::PointCollision;
        } else if (n.sources.size() == 1 && n.source_types[0].j < sp.j) {
            n.kind = IncidenceKind::PointOnNewLine;
        } else {
            n.kind = IncidenceKind::NewPoint;
        }
        out.push_back(std::move(n));
    }
    return out;
}

struct DegenerateValue {
    Rational w0;
    IncidenceProfile special;
    std::vector<NewIncidence> changes;
};

struct FatalValue {
    Rational w0;
    std::string reason;
};

struct DegenerationScan {
    IncidenceProfile generic;
    std::vector<DegenerateValue> sigma;
    std::vector<FatalValue> fatal;
    std::vector<Poly> unresolved;  // monic factors without rational roots
};

// Rank-drop polynomials of every subset of forms: for generic rank r, the gcd
// of the r x r minors. Its rational roots are the candidate parameter values.
inline std::vector<Poly> rank_drop_conditions(const ParamArrangement& a) {
    std::vector<Poly> out;
    const int n = static_cast<int>(a.size());
    for (int k = 1; k <= n; ++k)
        for (const auto& s : subsets(n, k)) {
            Matrix<Poly> m = coefficient_matrix(a.forms, s);
            for (std::size_t r = std::min<std::size_t>(s.size(), 4); r >= 1; --r) {
                Poly g = minor_gcd(m, r);
                if (g.is_zero()) continue;
                if (g.degree() > 0) out.push_back(g);
                break;
            }
        }
    return out;
}

inline DegenerationScan degenerate_values(const ParamArrangement& a) {
    if (a.size() < 3) throw MathError("degenerate_values needs at least 3 forms");
    DegenerationScan out;
    out.generic = generic_profile(a);
    std::set<Rational> candidates;
    std::vector<Poly> unresolved;
    for (const auto& cond : rank_drop_conditions(a)) {
        auto f = rational_roots(cond);
        for (const auto& [r, m] : f.roots) candidates.insert(r);
        for (const auto& res : f.residual) {
            if (std::find(unresolved.begin(), unresolved.end(), res) == unresolved.end()) unresolved.push_back(res);
        }
    }
    std::sort(unresolved.begin(), unresolved.end(), [](const Poly& x, const Poly& y) {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        return x.coeffs() < y.coeffs();
    });
    out.unresolved = std::move(unresolved);
    for (const auto& w0 : candidates) {
        try {
            auto special = special_profile(a, w0);
            auto changes = profile_diff(out.generic, special);
            if (!changes.empty()) out.sigma.push_back({w0, std::move(special), std::move(changes)});
        } catch (const FormVanishes& e) {
            out.fatal.push_back({w0, e.what()});
        } catch (const CoincidentPlanes& e) {
            out.fatal.push_back({w0, e.what()});
        }
    }
    return out;
}

}  // namespace octic
