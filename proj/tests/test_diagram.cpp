#include "octic/diagram.hpp"

#include <gtest/gtest.h>

using namespace octic;

namespace {

Diagram central(const std::string& eq) { return initial_diagram(specialize(parse_equation(eq), 0)); }

Diagram run(Diagram d, std::initializer_list<const char*> tokens) {
    for (const char* t : tokens) d = apply_blowup(d, parse_center(t));
    return d;
}

}  // namespace

TEST(ParseCenter, TokensAndErrors) {
    auto c = parse_center("L1A");
    EXPECT_EQ(c.shape, CenterShape::Curve);
    EXPECT_EQ(c.generic_multiplicity(), 2);
    EXPECT_EQ(c.token(), "L1A");
    EXPECT_EQ(parse_center("P4321").token(), "P1234");
    EXPECT_THROW(parse_center("L1"), InputError);
    EXPECT_THROW(parse_center("X12"), InputError);
    EXPECT_THROW(parse_center("L11"), InputError);
    EXPECT_THROW(parse_center("L1a"), InputError);
}

TEST(Initial, PlanesLinesPoints) {
    auto d = central("xyz(x+y+z+w)");
    EXPECT_EQ(d.surfaces.size(), 4u);
    EXPECT_EQ(d.curves.size(), 6u);
    EXPECT_EQ(d.points.size(), 1u);  // only the fourfold point is recorded
    for (const auto& [id, c] : d.curves) EXPECT_TRUE(d.is_branch_curve(id));
}

TEST(Context, TripleLineOverDoubleLine) {
    auto d = central("xy(x+y+w)");
    auto ctx = center_context(d, parse_center("L12"));
    EXPECT_EQ(ctx, (CenterContext{2, 3, CentralGeometry::Curve}));
    EXPECT_THROW(center_context(d, parse_center("L14")), CenterNotInDiagram);
}

TEST(Blowup, DoubleLineInsideTripleLineSplitsThirdPlane) {
    auto d = run(central("xy(x+y+w)"), {"L12"});
    ASSERT_EQ(d.event_log.size(), 1u);
    EXPECT_EQ(d.event_log[0].kind, EventKind::SplitComponent);
    EXPECT_EQ(d.event_log[0].surface, "P3'");
    EXPECT_EQ(d.surfaces.at("P3'").origin, SurfaceOrigin::Split);
    EXPECT_EQ(d.surfaces.at("P3'").parent, "P3");
    auto r = residual_report(d);
    EXPECT_EQ(r.double_curves.size(), 3u);
}

TEST(Blowup, FourPlanesThroughPointGiveNodePair) {
    auto d = run(central("xyz(x+y+z+w)"), {"L12", "L13", "L23", "L14", "L24", "L34"});
    auto r = residual_report(d);
    EXPECT_TRUE(r.double_curves.empty());
    EXPECT_EQ(r.nodes, 2);
    ASSERT_TRUE(r.node_surface.has_value());
    int pairs = 0;
    for (const auto& e : d.event_log) pairs += e.kind == EventKind::NewNodePair;
    EXPECT_EQ(pairs, 1);
}

TEST(Blowup, FourfoldPointInFivefoldPoint) {
    auto d = central("xyz(x+y+z)(x+y+w)");
    auto ctx = center_context(d, parse_center("P1234"));
    EXPECT_EQ(ctx, (CenterContext{4, 5, CentralGeometry::Point}));
    d = apply_blowup(d, parse_center("P1234"), ctx);
    EXPECT_TRUE(d.surfaces.count("P5'"));
}

TEST(Blowup, ContextMismatchIsRuleConflict) {
    auto d = central("xy(x+y+w)");
    EXPECT_THROW(apply_blowup(d, parse_center("L12"), CenterContext{3, 3, CentralGeometry::Curve}), RuleConflict);
    EXPECT_THROW(apply_blowup(d, parse_center("L12"), CenterContext{2, 1, CentralGeometry::Curve}), RuleConflict);
    EXPECT_THROW(apply_blowup(d, parse_center("L45")), CenterNotInDiagram);
}

TEST(Blowup, InputDiagramUntouched) {
    auto d = central("xy(x+y+w)");
    auto before = render_dot(d);
    auto after = apply_blowup(d, parse_center("L12"));
    EXPECT_EQ(render_dot(d), before);
    EXPECT_NE(render_dot(after), before);
}

TEST(Dot, DeterministicAndWellFormed) {
    auto a = render_dot(run(central("xyz(x+y+z+w)"), {"L12", "L13"}), "t");
    auto b = render_dot(run(central("xyz(x+y+z+w)"), {"L12", "L13"}), "t");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("graph \"t\" {", 0), 0u);
    EXPECT_EQ(a.back(), '\n');
    EXPECT_NE(a.find("cluster_P1"), std::string::npos);
    EXPECT_EQ(std::count(a.begin(), a.end(), '{'), std::count(a.begin(), a.end(), '}'));
}
