#include "octic/pipeline.hpp"

#include "corpus.hpp"

#include <gtest/gtest.h>

using namespace octic;

TEST(Scenarios, BundledNames) {
    auto names = scenario_names();
    for (const auto& id : scenario_ids()) EXPECT_TRUE(std::count(names.begin(), names.end(), id)) << id;
    for (const char* ex : {"example-6.1", "example-6.2", "example-6.3"})
        EXPECT_TRUE(std::count(names.begin(), names.end(), ex)) << ex;
    for (const auto& n : names) EXPECT_EQ(n.find(".annotations"), std::string::npos);
    EXPECT_THROW(load_scenario("A12"), UnknownScenario);
}

TEST(Scenarios, EquationsMatchCorpus) {
    for (std::size_t i = 0; i < scenario_ids().size(); ++i) {
        auto s = load_scenario(scenario_ids()[i]);
        ASSERT_TRUE(s.equation);
        EXPECT_EQ(to_equation(parse_equation(*s.equation)), to_equation(parse_equation(local_corpus()[i])));
        EXPECT_EQ(s.w0, Rational(0));
    }
}

TEST(Scenarios, TypeAndResidualChecksPass) {
    for (const auto& id : scenario_ids()) {
        auto s = load_scenario(id);
        EXPECT_TRUE(check_type(s, sigma_report(scenario_family(s))).empty()) << id;
        EXPECT_TRUE(check_residual(s, scenario_trace(s).residual).empty()) << id;
    }
}

TEST(Scenarios, ExamplesPassTheirChecks) {
    for (const char* ex : {"example-6.1", "example-6.2", "example-6.3"}) {
        auto s = load_scenario(ex);
        auto strata = scenario_strata(s);
        auto m = check_strata(s, strata);
        auto ml = check_limit(s, scenario_limit(s));
        m.insert(m.end(), ml.begin(), ml.end());
        EXPECT_TRUE(m.empty()) << ex << ": " << (m.empty() ? "" : m.front());
    }
}

TEST(Scenarios, ResidualFromAnotherScenario) {
    auto s = load_scenario("example-6.2");
    ASSERT_TRUE(s.residual_from);
    EXPECT_EQ(scenario_residual(s).pinch_multiset(), (std::vector<int>{4}));
}

TEST(Checks, ReportMismatch) {
    auto s = load_scenario("A7");
    s.expected["residual"]["pinch_multiset"] = Json::array({2});
    auto m = check_residual(s, scenario_trace(s).residual);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_NE(m[0].find("pinch multiset"), std::string::npos);
}

TEST(Json, RoundTripResidual) {
    auto r = scenario_trace(load_scenario("A6")).residual;
    auto back = residual_from_json(to_json(r));
    EXPECT_TRUE(same_outcome(r, back));
    EXPECT_EQ(back.adjacency, r.adjacency);
}

TEST(Json, SigmaReportForFamilyWithExtraValues) {
    auto j = to_json(sigma_report(parse_equation("xyz(x+y+wz)(x+wy+z)")));
    EXPECT_TRUE(j["sigma"].contains("0"));
    EXPECT_TRUE(j["sigma"].contains("-1"));
    EXPECT_EQ(j["fatal"].size(), 1u);
}

TEST(Json, AnnotationsRequireJustification) {
    EXPECT_THROW(annotations_from_json(Json::parse(R"([{"map":[0,2],"rank":1}])")), InputError);
    auto a = annotations_from_json(Json::parse(R"([{"map":[0,2],"rank":1,"justification":"x","with_dual":true}])"));
    EXPECT_TRUE(a[0].with_dual);
}

// The per-type table and the diagram engine are independent routes to the residual.
TEST(Scenarios, EngineAgreesWithTypeTable) {
    for (const auto& id : scenario_ids()) {
        auto s = load_scenario(id);
        auto type = local_type_from_string(s.expected["type"].get<std::string>());
        ASSERT_TRUE(type) << id;
        EXPECT_TRUE(same_outcome(residual_outcome(*type), scenario_trace(s).residual)) << id;
    }
}
