#pragma once

#include "octic/incidence.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

namespace octic::oracle {

// Independent oracle: integer determinants of all 3x3 / 4x4 minors after
// clearing denominators, no elimination.
inline Integer det3(const std::array<std::array<Integer, 4>, 3>& m, int skip) {
    std::array<int, 3> c{};
    for (int k = 0, i = 0; k < 4; ++k)
        if (k != skip) c[i++] = k;
    return m[0][c[0]] * (m[1][c[1]] * m[2][c[2]] - m[1][c[2]] * m[2][c[1]]) -
           m[0][c[1]] * (m[1][c[0]] * m[2][c[2]] - m[1][c[2]] * m[2][c[0]]) +
           m[0][c[2]] * (m[1][c[0]] * m[2][c[1]] - m[1][c[1]] * m[2][c[0]]);
}

inline std::array<Integer, 4> integral(const ConstForm& f) {
    Integer l = 1;
    for (const auto& x : f) l = boost::multiprecision::lcm(l, denominator(x));
    std::array<Integer, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = numerator(Rational(f[k] * l));
    return out;
}

inline bool collinear3(const Arrangement& a, int i, int j, int k) {  // three planes through one line
    std::array<std::array<Integer, 4>, 3> m{integral(a.forms[i]), integral(a.forms[j]), integral(a.forms[k])};
    for (int s = 0; s < 4; ++s)
        if (det3(m, s) != 0) return false;
    return true;
}

inline bool concurrent4(const Arrangement& a, int i, int j, int k, int l) {  // four planes through one point
    std::array<std::array<Integer, 4>, 4> m{integral(a.forms[i]), integral(a.forms[j]), integral(a.forms[k]),
                                            integral(a.forms[l])};
    Integer d = 0;
    for (int c = 0; c < 4; ++c) {
        std::array<std::array<Integer, 4>, 3> rest{m[1], m[2], m[3]};
        Integer minor = det3(rest, c);
        d += (c % 2 ? -1 : 1) * m[0][c] * minor;
    }
    return d == 0;
}

struct Oracle {
    std::set<PlaneSet> triple_lines, multiple_points;
};

inline Oracle brute_force(const Arrangement& a) {
    int n = static_cast<int>(a.size());
    Oracle o;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            PlaneSet s{i, j};
            for (int k = 0; k < n; ++k)
                if (k != i && k != j && collinear3(a, i, j, k)) s.push_back(k);
            std::sort(s.begin(), s.end());
            if (s.size() >= 3) o.triple_lines.insert(s);
        }
    for (const auto& t : subsets(n, 3)) {
        if (collinear3(a, t[0], t[1], t[2])) continue;
        PlaneSet s = t;
        for (int k = 0; k < n; ++k)
            if (std::find(t.begin(), t.end(), k) == t.end() && concurrent4(a, t[0], t[1], t[2], k)) s.push_back(k);
        std::sort(s.begin(), s.end());
        if (s.size() >= 4) o.multiple_points.insert(s);
    }
    return o;
}

inline Oracle observed(const IncidenceProfile& p) {
    Oracle o;
    for (const auto& l : p.lines)
        if (l.q() >= 3) o.triple_lines.insert(l.planes);
    for (const auto& pt : p.points)
        if (pt.p() >= 4) o.multiple_points.insert(pt.planes);
    return o;
}

inline Arrangement random_arrangement(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> d(-2, 2);
    while (true) {
        Arrangement a;
        for (int i = 0; i < n; ++i) a.forms.push_back({d(rng), d(rng), d(rng), d(rng)});
        try {
            profile(a);
            return a;
        } catch (const MathError&) {
        }
    }
}

inline Matrix<Rational> random_invertible(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    while (true) {
        Matrix<Rational> m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = Rational(num(rng), den(rng));
        if (determinant(m) != 0) return m;
    }
}

}  // namespace octic::oracle
