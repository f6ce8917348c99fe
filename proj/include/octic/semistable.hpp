#pragma once

#include "octic/classify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

namespace octic {

class UnsupportedConfiguration : public MathError {
public:
    explicit UnsupportedConfiguration(const std::string& what) : MathError("UnsupportedConfiguration: " + what) {}
};

using Betti = std::vector<int>;

// Threefold components.
struct ResolvedCY {
    Betti betti;
};
struct QuadricBundle {
    std::vector<int> split_fibers;  // component count of each split fiber
    int cone_fibers = 0;
};
struct DoubleCoverP2xP1 {
    int pinch_fibers = 0;
};
struct NodeResolution {
    int node_count = 0;
};
using ComponentGeometry = std::variant<ResolvedCY, QuadricBundle, DoubleCoverP2xP1, NodeResolution>;

// Surfaces.
struct ConicBundle {
    std::vector<int> split_fibers;
};
struct SmoothQuadric {};
struct BlownP1xP1 {
    int points = 0;
};
using SurfaceGeometry = std::variant<ConicBundle, SmoothQuadric, BlownP1xP1>;

// Curves.
struct SmoothConic {};

inline Betti betti(const ComponentGeometry& g) {
    struct V {
        Betti operator()(const ResolvedCY& y) const { return y.betti; }
        Betti operator()(const QuadricBundle& q) const {
            int b2 = 1 + (q.cone_fibers == 0 ? 2 : 1);
            for (int c : q.split_fibers) b2 += c - 1;
            return {1, 0, b2, 0, b2, 0, 1};
        }
        Betti operator()(const DoubleCoverP2xP1& d) const { return {1, 0, 2, d.pinch_fibers - 2, 2, 0, 1}; }
        Betti operator()(const NodeResolution&) const { return {1, 0, 3, 0, 3, 0, 1}; }
    };
    return std::visit(V{}, g);
}

inline Betti betti(const SurfaceGeometry& g) {
    struct V {
        Betti operator()(const ConicBundle& c) const {
            int b2 = 2;
            for (int k : c.split_fibers) b2 += k - 1;
            return {1, 0, b2, 0, 1};
        }
        Betti operator()(const SmoothQuadric&) const { return {1, 0, 2, 0, 1}; }
        Betti operator()(const BlownP1xP1& b) const { return {1, 0, 2 + b.points, 0, 1}; }
    };
    return std::visit(V{}, g);
}

inline Betti betti(const SmoothConic&) { return {1, 0, 1}; }

inline std::string kind_name(const ComponentGeometry& g) {
    static const std::array<std::string, 4> names{"ResolvedCY", "QuadricBundle", "DoubleCoverP2xP1", "NodeResolution"};
    return names[g.index()];
}
inline std::string kind_name(const SurfaceGeometry& g) {
    static const std::array<std::string, 3> names{"ConicBundle", "SmoothQuadric", "BlownP1xP1"};
    return names[g.index()];
}

inline int euler_characteristic(const Betti& b) {
    int chi = 0;
    for (std::size_t i = 0; i < b.size(); ++i) chi += (i % 2 ? -1 : 1) * b[i];
    return chi;
}

inline bool palindromic(const Betti& b) { return std::equal(b.begin(), b.end(), b.rbegin()); }

struct FiberComponent {
    std::string label;
    ComponentGeometry geometry;
};

struct DoubleStratum {
    std::array<int, 2> pair;  // component indices, ascending
    SurfaceGeometry geometry;
};

struct TripleStratum {
    std::array<int, 3> triple;
    SmoothConic geometry;
};

struct StrataComplex {
    std::vector<FiberComponent> components;  // Y first
    std::vector<DoubleStratum> double_strata;
    std::vector<TripleStratum> triple_strata;

    std::string label(const std::vector<int>& simplex) const {
        std::string s;
        for (int i : simplex) s += (s.empty() ? "" : "∩") + components.at(i).label;
        return s;
    }
    // Largest p with S^[p] nonempty.
    int depth() const {
        if (!triple_strata.empty()) return 3;
        if (!double_strata.empty()) return 2;
        return components.empty() ? 0 : 1;
    }
    // Simplices of S^[p] (p = 1, 2, 3), sorted component indices.
    std::vector<std::vector<int>> simplices(int p) const {
        std::vector<std::vector<int>> out;
        if (p == 1)
            for (std::size_t i = 0; i < components.size(); ++i) out.push_back({static_cast<int>(i)});
        if (p == 2)
            for (const auto& d : double_strata) out.push_back({d.pair[0], d.pair[1]});
        if (p == 3)
            for (const auto& t : triple_strata) out.push_back({t.triple[0], t.triple[1], t.triple[2]});
        return out;
    }
    std::vector<Betti> bettis(int p) const {
        std::vector<Betti> out;
        if (p == 1)
            for (const auto& c : components) out.push_back(betti(c.geometry));
        if (p == 2)
            for (const auto& d : double_strata) out.push_back(betti(d.geometry));
        if (p == 3)
            for (const auto& t : triple_strata) out.push_back(betti(t.geometry));
        return out;
    }
    // Dimension of H^a(S^[p]).
    int h(int p, int a) const {
        int total = 0;
        for (const auto& b : bettis(p))
            if (a >= 0 && a < static_cast<int>(b.size())) total += b[a];
        return total;
    }

    void validate() const {
        auto find = [&](int p, std::vector<int> s) {
            auto all = simplices(p);
            return std::find(all.begin(), all.end(), s) != all.end();
        };
        int n = static_cast<int>(components.size());
        for (int p = 2; p <= 3; ++p)
            for (const auto& s : simplices(p)) {
                if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
                    throw MathError("stratum " + std::to_string(p) + " indices must be strictly increasing");
                for (int i : s)
                    if (i < 0 || i >= n) throw MathError("stratum refers to a missing component");
                for (std::size_t k = 0; k < s.size() && p == 3; ++k) {
                    auto face = s;
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
                    if (!find(2, face)) throw MathError("triple stratum " + label(s) + " lacks the face " + label(face));
                }
            }
        for (int p = 1; p <= 3; ++p) {
            auto all = simplices(p);
            std::sort(all.begin(), all.end());
            if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw MathError("repeated stratum");
        }
    }
};

namespace detail {

inline std::string q_label(int i) { return "Q" + std::to_string(i + 1); }

}  // namespace detail

// Semistable central fiber after base change and blow-ups of the residual
// double curves. Y is the resolved central double octic; each double curve
// gives a component over it, and nodes give one component on their surface.
inline StrataComplex build_components(const ResidualSingularities& residual, const Betti& y_betti) {
    if (y_betti.size() != 7 || !palindromic(y_betti)) throw InputError("y_betti must be a palindromic 7-vector");
    StrataComplex s;
    s.components.push_back({"Y", ResolvedCY{y_betti}});
    const int n = static_cast<int>(residual.double_curves.size());

    std::vector<std::vector<int>> through(n);
    for (std::size_t t = 0; t < residual.triple_meeting_points.size(); ++t) {
        const auto& tp = residual.triple_meeting_points[t];
        if (tp.size() != 3) throw UnsupportedConfiguration("meeting point of " + std::to_string(tp.size()) + " curves");
        for (int c : tp) {
            if (c < 0 || c >= n) throw InputError("triple meeting refers to a missing curve");
            through[c].push_back(static_cast<int>(t));
        }
    }
    for (auto [a, b] : residual.adjacency) {
        bool inside = std::any_of(residual.triple_meeting_points.begin(), residual.triple_meeting_points.end(),
                                  [&](const std::vector<int>& tp) {
                                      return std::count(tp.begin(), tp.end(), a) && std::count(tp.begin(), tp.end(), b);
                                  });
        if (!inside) throw UnsupportedConfiguration("curves meeting outside a triple point");
    }

    // Curves with more triple meetings are blown up first.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return through[a].size() > through[b].size(); });
    std::vector<int> rank(n);
    for (int k = 0; k < n; ++k) rank[order[k]] = k;

    std::vector<int> first_at(residual.triple_meeting_points.size());
    for (std::size_t t = 0; t < first_at.size(); ++t) {
        const auto& tp = residual.triple_meeting_points[t];
        first_at[t] = *std::min_element(tp.begin(), tp.end(), [&](int a, int b) { return rank[a] < rank[b]; });
    }

    for (int i = 0; i < n; ++i) {
        const auto& curve = residual.double_curves[i];
        int pinch = curve.pinch_points;
        std::vector<int> conic_splits(static_cast<std::size_t>(pinch), 2);
        if (through[i].empty()) {
            if (pinch == 0)
                s.components.push_back({detail::q_label(i), QuadricBundle{}});
            else if (pinch >= 2)
                s.components.push_back({detail::q_label(i), DoubleCoverP2xP1{pinch}});
            else
                throw UnsupportedConfiguration("isolated double curve with a single pinch point");
        } else {
            if (pinch > 2) throw UnsupportedConfiguration("quadric bundle with more than two cone fibers");
            QuadricBundle q;
            q.cone_fibers = pinch;
            for (int t : through[i])
                if (first_at[t] == i) {
                    q.split_fibers.push_back(4);
                    conic_splits.push_back(3);
                }
            s.components.push_back({detail::q_label(i), q});
        }
        s.double_strata.push_back({{0, i + 1}, ConicBundle{conic_splits}});
    }

    for (std::size_t t = 0; t < first_at.size(); ++t) {
        int f = first_at[t] + 1;
        for (int c : residual.triple_meeting_points[t]) {
            int x = c + 1;
            if (x == f) continue;
            std::array<int, 2> pair{std::min(f, x), std::max(f, x)};
            bool dup = std::any_of(s.double_strata.begin(), s.double_strata.end(),
                                   [&](const DoubleStratum& d) { return d.pair == pair; });
            if (dup) throw UnsupportedConfiguration("two triple points share a pair of curves");
            s.double_strata.push_back({pair, SmoothQuadric{}});
            s.triple_strata.push_back({{0, pair[0], pair[1]}, SmoothConic{}});
        }
    }

    if (residual.nodes > 0) {
        int idx = static_cast<int>(s.components.size());
        s.components.push_back({detail::q_label(n), NodeResolution{residual.nodes}});
        s.double_strata.push_back({{0, idx}, BlownP1xP1{residual.nodes}});
    }
    auto by_simplex = [](const auto& a, const auto& b) { return a < b; };
    std::stable_sort(s.double_strata.begin(), s.double_strata.end(),
                     [&](const DoubleStratum& a, const DoubleStratum& b) { return by_simplex(a.pair, b.pair); });
    std::stable_sort(s.triple_strata.begin(), s.triple_strata.end(),
                     [&](const TripleStratum& a, const TripleStratum& b) { return by_simplex(a.triple, b.triple); });
    s.validate();
    return s;
}

}  // namespace octic
