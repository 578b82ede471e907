#include "fixtures.hpp"

#include "gradeq/engine.hpp"
#include "gradeq/errors.hpp"
#include "gradeq/expr.hpp"
#include "gradeq/game.hpp"
#include "gradeq/json_io.hpp"

#include <gtest/gtest.h>

using namespace gradeq;
namespace gt = gradeq::testing;

TEST(Expr, DetStates) {
    EXPECT_EQ(parse_det_state(SemanticsId::Trace, "{0, 2}"), DetState::set({0, 2}));
    EXPECT_EQ(parse_det_state(SemanticsId::Trace, "{}"), DetState::set({}));
    EXPECT_EQ(parse_det_state(SemanticsId::Trace, "3"), DetState::set({3}));
    EXPECT_EQ(parse_det_state(SemanticsId::Bisimilarity, "3"), DetState::single(3));
    EXPECT_EQ(parse_det_state(SemanticsId::Bisimilarity, "{3}"), DetState::single(3));
    EXPECT_EQ(parse_det_state(SemanticsId::ProbabilisticTrace, "{1:1/2, 2:1/2}"),
              DetState::dist({{1, Rational(1, 2)}, {2, Rational(1, 2)}}));
    EXPECT_EQ(parse_det_state(SemanticsId::ProbabilisticTrace, "0"), DetState::dirac(0));
    EXPECT_THROW(parse_det_state(SemanticsId::Trace, "{0,"), ValidationError);
    EXPECT_THROW(parse_det_state(SemanticsId::Trace, "x"), ValidationError);
    EXPECT_THROW(parse_det_state(SemanticsId::Bisimilarity, "{0,1}"), ValidationError);
}

TEST(Expr, RoundTripThroughToString) {
    for (const auto& [id, text] : std::vector<std::pair<SemanticsId, std::string>>{
             {SemanticsId::Trace, "{0,2}"}, {SemanticsId::Trace, "{}"}, {SemanticsId::Bisimilarity, "4"},
             {SemanticsId::ProbabilisticTrace, "{1:1/3,2:2/3}"}}) {
        const auto s = parse_det_state(id, text);
        EXPECT_EQ(parse_det_state(id, to_string(s)), s) << text;
    }
}

TEST(Expr, Relations) {
    const auto z = parse_relation(SemanticsId::Trace, "{1,3} = {3}; {4,6} = {4}");
    ASSERT_EQ(z.size(), 2U);
    EXPECT_EQ(z[1].left, DetState::set({4, 6}));
    EXPECT_TRUE(parse_relation(SemanticsId::Trace, "empty").empty());
    EXPECT_EQ(parse_relation(SemanticsId::Trace, to_string(z)), z);
    const auto sim = parse_relation(SemanticsId::Simulation, "5 <= 1; 6 >= 1");
    EXPECT_EQ(sim[0].direction, Direction::Le);
    EXPECT_EQ(sim[1].direction, Direction::Ge);
    EXPECT_THROW(parse_relation(SemanticsId::Simulation, "5 = 1"), ValidationError);
    EXPECT_THROW(parse_relation(SemanticsId::Trace, "{1} <= {2}"), ValidationError);
    EXPECT_THROW(parse_relation(SemanticsId::Trace, "{1} {2}"), ValidationError);
}

TEST(Json, VerdictShapes) {
    const TransitionSystem sys = gt::sys3();
    const auto alphabet = gradeq::alphabet(sys);
    const auto eqv = verdict_to_json(decide(SemanticsId::Trace, sys, 0, 4, Depth::limit()), alphabet);
    EXPECT_EQ(eqv["result"], "equivalent_limit");
    EXPECT_TRUE(eqv["witness"].is_null());
    const auto fail = verdict_to_json(decide(SemanticsId::Failure, sys, 0, 4, Depth::limit()), alphabet);
    EXPECT_EQ(fail["result"], "distinguished");
    EXPECT_EQ(fail["depth"], 2);
    EXPECT_EQ(fail["witness"]["kind"], "failure_pair");
    EXPECT_EQ(fail["witness"]["word"], Json::array({"a"}));
    const auto bis = verdict_to_json(decide(SemanticsId::Bisimilarity, sys, 0, 4, Depth::limit()), alphabet);
    EXPECT_EQ(bis["witness"]["kind"], "move_tree");
    EXPECT_EQ(bis["witness"]["tree"]["replies"].size(), 2U);
}

TEST(Json, Determinization) {
    const TransitionSystem sys = gt::sys1();
    const std::vector<DetState> seeds{DetState::set({0, 2}), DetState::set({2, 5})};
    const auto j = determinization_to_json(explore(SemanticsId::Trace, sys, seeds));
    EXPECT_EQ(j["states"].size(), 7U);
    EXPECT_EQ(j["states"][0]["state"], "{0,2}");
    EXPECT_EQ(j["states"][0]["edges"].size(), 2U);
    EXPECT_EQ(j["complete"], true);
}

TEST(Json, TranscriptRoundTrip) {
    const auto sys = std::make_shared<const TransitionSystem>(gt::sys3());
    GameSession session(SemanticsId::Simulation, sys, DetState::single(0), DetState::single(4), 3, HumanRole::None);
    play_out(session);
    const auto j = transcript_to_json(session.transcript());
    EXPECT_EQ(transcript_from_json(SemanticsId::Simulation, j), session.transcript());
    EXPECT_EQ(transcript_to_json(transcript_from_json(SemanticsId::Simulation, j)).dump(), j.dump());
}

TEST(Json, RelationForms) {
    const auto from_array = relation_from_json(
        SemanticsId::Trace, Json::parse(R"([{"left":"{1,3}","right":"{3}"},{"left":"{4,6}","right":"{4}","direction":"="}])"));
    const auto from_string = relation_from_json(SemanticsId::Trace, Json("{1,3} = {3}; {4,6} = {4}"));
    EXPECT_EQ(from_array, from_string);
    EXPECT_THROW(relation_from_json(SemanticsId::Trace, Json(3)), ValidationError);
    EXPECT_THROW(move_pair_from_json(SemanticsId::Trace, Json::parse(R"({"left":"{1}"})")), ValidationError);
}
