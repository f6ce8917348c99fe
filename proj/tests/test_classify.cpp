#include "octic/classify.hpp"

#include "corpus.hpp"

#include <gtest/gtest.h>

using namespace octic;

namespace {

std::vector<LocalEvent> events_at_zero(const std::string& eq) {
    auto scan = degenerate_values(parse_equation(eq));
    for (const auto& dv : scan.sigma)
        if (dv.w0 == 0) return classify_fiber(scan.generic, dv.special, dv.changes);
    return {};
}

}  // namespace

TEST(Classify, AllElevenLocalTypes) {
    const std::vector<LocalType> want{LocalType::NewL3,    LocalType::NewP40,      LocalType::P51toP52,
                                      LocalType::TwoP41toP52, LocalType::TwoP41toP51, LocalType::P40toP52,
                                      LocalType::NewP41,   LocalType::P40toP41,    LocalType::P40toP51,
                                      LocalType::P50toP52, LocalType::P50toP51};
    const auto& eqs = local_corpus();
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        auto evs = events_at_zero(eqs[i]);
        ASSERT_EQ(evs.size(), 1u) << scenario_ids()[i];
        EXPECT_EQ(evs[0].type, want[i]) << scenario_ids()[i];
    }
}

TEST(Classify, NamesRoundTrip) {
    for (auto t : kAllLocalTypes) EXPECT_EQ(local_type_from_string(to_string(t)), t);
    EXPECT_FALSE(local_type_from_string("P60toP61").has_value());
}

// With the printed coefficients the fifth plane passes through both fourfold
// points' common line and the family repeats the previous type.
TEST(Classify, PrintedFifthFamilyCoincidesWithFourth) {
    auto evs = events_at_zero("xy(x+y)z(x+y+z+w)");
    ASSERT_EQ(evs.size(), 1u);
    EXPECT_EQ(evs[0].type, LocalType::TwoP41toP52);
}

TEST(Classify, NewTripleLineThroughChangedPointIsAbsorbed) {
    // A new L3 appears in the A.3 central fiber, but it lies in the p=5 point.
    auto scan = degenerate_values(parse_equation("xy(x+y)z(x+wy+z)"));
    const auto& dv = scan.sigma.front();
    bool has_line = std::any_of(dv.changes.begin(), dv.changes.end(), [](const auto& c) { return c.is_line; });
    EXPECT_TRUE(has_line);
    auto evs = classify_fiber(scan.generic, dv.special, dv.changes);
    EXPECT_EQ(evs.size(), 1u);
}

TEST(Classify, Unclassifiable) {
    NewIncidence c;
    c.kind = IncidenceKind::NewPoint;
    c.planes = {0, 1, 2, 3, 4, 5};
    c.type = {6, 0};
    EXPECT_THROW(classify_local(c, {}, {}), Unclassifiable);
    c.planes = {0, 1, 2, 3, 4};
    c.type = {5, 0};  // a p=5 point needs a p=4 or p=5 predecessor
    EXPECT_THROW(classify_local(c, {}, {}), Unclassifiable);
}

TEST(Classify, ResidualTableShapes) {
    EXPECT_EQ(residual_outcome(LocalType::NewP40).nodes, 2);
    EXPECT_EQ(residual_outcome(LocalType::P40toP52).pinch_multiset(), (std::vector<int>{0, 0, 0, 2, 2}));
    EXPECT_EQ(residual_outcome(LocalType::P40toP52).triple_meeting_points.size(), 2u);
    EXPECT_EQ(residual_outcome(LocalType::P40toP51).triple_meeting_points.size(), 1u);
    EXPECT_EQ(residual_outcome(LocalType::TwoP41toP51).pinch_multiset(), (std::vector<int>{4}));
    for (auto t : kAllLocalTypes) EXPECT_FALSE(residual_outcome(t).empty()) << to_string(t);
}
