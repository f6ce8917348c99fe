#include "octic/forms.hpp"

#include <gtest/gtest.h>

using namespace octic;

namespace {
const Poly w = Poly::monomial(1, 1);
LinearForm F(Poly x, Poly y, Poly z, Poly t) { return {x, y, z, t}; }
}  // namespace

TEST(Parser, ImplicitProductsOfVariables) {
    auto a = parse_equation("xyzt");
    ASSERT_EQ(a.size(), 4u);
    EXPECT_EQ(a.forms[0], F(1, 0, 0, 0));
    EXPECT_EQ(a.forms[3], F(0, 0, 0, 1));
}

TEST(Parser, ParameterAndConstants) {
    auto a = parse_equation("xy(x+y+w)");
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a.forms[2], F(1, 1, 0, w));  // the constant part is the t coefficient

    auto b = parse_equation("xy(x+y+zw)z");
    EXPECT_EQ(b.forms[2], F(1, 1, w, 0));

    auto c = parse_equation("x*(x + 2y - z + 3/2 w t)");
    EXPECT_EQ(c.forms[1], F(1, 2, -1, Rational(3, 2) * w));
}

TEST(Parser, PrefixesPowersAndScalars) {
    auto a = parse_equation("u^2 = xy(x-y)");
    EXPECT_EQ(a.size(), 3u);
    auto b = parse_equation("xy(x+y)z(x+w^2 y+z) = 0");
    EXPECT_EQ(b.forms[4], F(1, w * w, 1, 0));
    // Scalar factors do not create planes.
    auto c = parse_equation("3 x y (x+y)");
    EXPECT_EQ(c.size(), 3u);
}

TEST(Parser, Errors) {
    EXPECT_THROW(parse_equation("x*y*("), ParseError);
    EXPECT_THROW(parse_equation("x y (x+y"), ParseError);
    EXPECT_THROW(parse_equation("x y q"), ParseError);
    EXPECT_THROW(parse_equation("x (0)"), ParseError);
    try {
        parse_equation("x y (x y + z)");
        FAIL();
    } catch (const NonLinearFactor& e) {
        EXPECT_EQ(e.factor, 2u);
    }
    try {
        parse_equation("x*x*y*z");
        FAIL();
    } catch (const DuplicateFactor& e) {
        EXPECT_EQ(e.first, 0u);
        EXPECT_EQ(e.second, 1u);
    }
    EXPECT_THROW(parse_equation("x (2x) y"), DuplicateFactor);
}

TEST(Printer, RoundTrip) {
    for (const char* eq : {"xy(x+y+w)", "xyz(x+y+z+w)", "xy(x+y)z(x+wy+z)", "xyz(x+y+wz)(x+wy+z)",
                           "xyz(x+y+z)(x-y+w)", "xy(x+y)z(x+2y+z+w)", "x(x+3/2*w^2*y-t)"}) {
        auto a = parse_equation(eq);
        auto b = parse_equation(to_equation(a));
        EXPECT_EQ(a.forms, b.forms) << eq << " -> " << to_equation(a);
    }
    EXPECT_EQ(form_to_string(F(1, w, 0, w + 1)), "x + w*y + (w + 1)*t");
}

TEST(Specialize, ValuesAndVanishing) {
    auto a = parse_equation("xy(x+y+w)");
    auto s = specialize(a, 0);
    EXPECT_EQ(s.forms[2], (ConstForm{1, 1, 0, 0}));
    ParamArrangement bad;
    bad.forms = {F(1, 0, 0, 0), F(w, 0, 0, 0), F(0, 1, 0, 0)};
    EXPECT_THROW(specialize(bad, 0), FormVanishes);
}

TEST(ChangeCoordinates, IdentityAndComposition) {
    auto a = specialize(parse_equation("xyz(x+y+z+t)"), 0);
    auto same = change_coordinates(a.forms, Matrix<Rational>::identity(4));
    EXPECT_EQ(same, a.forms);
    auto m = Matrix<Rational>::from_rows({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}});
    auto moved = change_coordinates(a.forms, m);
    EXPECT_EQ(moved[0], (ConstForm{1, 1, 0, 0}));
}
