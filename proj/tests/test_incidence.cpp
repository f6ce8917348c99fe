#include "octic/incidence.hpp"

#include "corpus.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace octic;

namespace {

using namespace octic::oracle;

const Poly w = Poly::monomial(1, 1);

}  // namespace

TEST(Profile, FourGeneralPlanes) {
    auto p = profile(specialize(parse_equation("xyzt"), 0));
    EXPECT_EQ(p.lines.size(), 6u);
    EXPECT_EQ(p.points.size(), 4u);
    for (const auto& pt : p.points) EXPECT_EQ(pt.p(), 3);
}

TEST(Profile, NewFourfoldPointAtZero) {
    auto a = parse_equation("xyz(x+y+z+w)");
    auto g = generic_profile(a);
    EXPECT_TRUE(g.generic);
    for (const auto& pt : g.points) EXPECT_LE(pt.p(), 3);
    auto s = special_profile(a, 0);
    const auto* p = s.find_point({0, 1, 2, 3});
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->j, 0);
    EXPECT_EQ(point_string(p->point), "(0:0:0:1)");
}

TEST(Profile, TripleLineAndJ) {
    auto s = profile(specialize(parse_equation("xy(x+y)z(x+y+z)"), 0));
    ASSERT_NE(s.find_line({0, 1, 2}), nullptr);
    const auto* p = s.find_point({0, 1, 2, 3, 4});
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->j, 2);  // lines {1,2,3} and {3,4,5}
}

TEST(Profile, GenericPointCoordinatesTrackParameter) {
    auto g = generic_profile(parse_equation("xyz(x+y+wz)(x+wy+z)"));
    const auto* p = g.find_point({0, 1, 2, 3, 4});
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->point[3], Poly(1));
}

TEST(Profile, Errors) {
    Arrangement a;
    a.forms = {{1, 0, 0, 0}, {2, 0, 0, 0}, {0, 1, 0, 0}};
    EXPECT_THROW(profile(a), CoincidentPlanes);
    a.forms = {{0, 0, 0, 0}, {1, 0, 0, 0}};
    EXPECT_THROW(profile(a), FormVanishes);
    EXPECT_THROW(is_octic(profile(specialize(parse_equation("xyzt"), 0))), WrongPlaneCount);
}

TEST(Octic, ValidAndInvalid) {
    auto good = profile(specialize(parse_equation("xyzt(x+y+z+t)(x+2y+3z+5t)(x-y+7z+11t)(2x+3y-z+13t)"), 0));
    EXPECT_TRUE(is_octic(good).valid);
    auto bad = profile(specialize(parse_equation("xy(x+y)(x-y)zt(x+y+z+t)(x+2y+3z+5t)"), 0));
    auto chk = is_octic(bad);
    EXPECT_FALSE(chk.valid);
    ASSERT_FALSE(chk.violations.empty());
    EXPECT_EQ(chk.violations[0].multiplicity, 4);
}

TEST(Sigma, ExtraDegenerateValuesAreReal) {
    // A.3's family also degenerates at w=1, where x+y, z and x+y+z share a line.
    auto scan = degenerate_values(parse_equation("xy(x+y)z(x+wy+z)"));
    std::vector<Rational> ws;
    for (const auto& dv : scan.sigma) ws.push_back(dv.w0);
    EXPECT_EQ(ws, (std::vector<Rational>{0, 1}));
    auto s1 = special_profile(parse_equation("xy(x+y)z(x+wy+z)"), 1);
    EXPECT_NE(s1.find_line({2, 3, 4}), nullptr);
}

TEST(Sigma, FatalAndIrrational) {
    auto scan = degenerate_values(parse_equation("xyz(x+y+wz)(x+wy+z)"));
    ASSERT_EQ(scan.fatal.size(), 1u);
    EXPECT_EQ(scan.fatal[0].w0, Rational(1));
    auto irr = degenerate_values(parse_equation("xyz(x+y+(w^2-2)t)"));
    EXPECT_TRUE(irr.sigma.empty());
    ASSERT_EQ(irr.unresolved.size(), 1u);
    EXPECT_EQ(irr.unresolved[0], w * w - 2);
    EXPECT_TRUE(degenerate_values(parse_equation("x*y*z*t")).sigma.empty());
}

TEST(ProfileDiff, CollisionAndNewPoint) {
    auto a = parse_equation("xy(x+y)z(x+2y+z+w)");
    auto g = generic_profile(a);
    auto d = profile_diff(g, special_profile(a, 0));
    auto it = std::find_if(d.begin(), d.end(), [](const NewIncidence& n) { return !n.is_line && n.type.p == 5; });
    ASSERT_NE(it, d.end());
    EXPECT_EQ(it->kind, IncidenceKind::PointCollision);
    EXPECT_EQ(it->sources.size(), 2u);

    auto b = parse_equation("xyz(x+y+z+w)");
    auto d2 = profile_diff(generic_profile(b), special_profile(b, 0));
    ASSERT_EQ(d2.size(), 1u);
    EXPECT_EQ(d2[0].kind, IncidenceKind::NewPoint);
}

// Brute-force oracle against every <=5-plane arrangement of the corpus, at the
// degenerate value and at a few generic values, plus random small arrangements.
TEST(ProfileProperty, BruteForceOracle) {
    std::vector<Arrangement> cases;
    for (const auto& eq : local_corpus()) {
        auto a = parse_equation(eq);
        ASSERT_LE(a.size(), 5u);
        for (Rational v : {Rational(0), Rational(3), Rational(-7, 2), Rational(5, 3)}) cases.push_back(specialize(a, v));
    }
    std::mt19937 rng(5);
    for (int it = 0; it < 150; ++it) cases.push_back(random_arrangement(rng, 3 + it % 3));
    for (const auto& a : cases) {
        auto want = brute_force(a);
        auto got = observed(profile(a));
        EXPECT_EQ(got.triple_lines, want.triple_lines) << to_equation(a);
        EXPECT_EQ(got.multiple_points, want.multiple_points) << to_equation(a);
    }
}

TEST(ProfileProperty, ProjectiveInvariance) {
    std::mt19937 rng(99);
    const auto& corpus = local_corpus();
    for (int it = 0; it < 100; ++it) {
        auto base = specialize(parse_equation(corpus[static_cast<std::size_t>(it) % corpus.size()]), 0);
        auto m = random_invertible(rng);
        Arrangement moved{change_coordinates(base.forms, m)};
        auto p = profile(base), q = profile(moved);
        EXPECT_TRUE(same_combinatorics(p, q)) << it;
        // Points move by the inverse transformation: f(M x') = 0 iff x = M x'.
        for (std::size_t k = 0; k < p.points.size(); ++k) {
            std::vector<Rational> image(4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) image[i] += m(i, j) * q.points[k].point[j](0);
            EXPECT_EQ(detail::to_point(image), p.points[k].point);
        }
    }
}

TEST(ProfileProperty, GenericMatchesRandomSpecializations) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
    for (const auto& eq : local_corpus()) {
        auto a = parse_equation(eq);
        auto scan = degenerate_values(a);
        int checked = 0;
        while (checked < 5) {
            Rational v(num(rng), den(rng));
            bool special = std::any_of(scan.sigma.begin(), scan.sigma.end(), [&](const auto& d) { return d.w0 == v; }) ||
                           std::any_of(scan.fatal.begin(), scan.fatal.end(), [&](const auto& d) { return d.w0 == v; });
            if (special) continue;
            auto s = special_profile(a, v);
            EXPECT_TRUE(same_combinatorics(scan.generic, s)) << eq << " at " << to_string(v);
            for (const auto& gp : scan.generic.points) {
                const auto* sp = s.find_point(gp.planes);
                ASSERT_NE(sp, nullptr);
                EXPECT_EQ(limit_point(gp.point, v), sp->point);
            }
            ++checked;
        }
    }
}
