#include "fixtures.hpp"
#include "random_systems.hpp"
#include "sweeps.hpp"

#include "gradeq/engine.hpp"
#include "gradeq/oracle.hpp"

#include <gtest/gtest.h>

using namespace gradeq;
namespace gt = gradeq::testing;

namespace {

const auto S = [](std::vector<StateId> v) { return DetState::set(std::move(v)); };

std::set<Word> words(std::initializer_list<Word> ws) {
    return {ws};
}

} // namespace

TEST(GammaN, TraceSys1EqualAtDepthOne) {
    const TransitionSystem sys = gt::sys1();
    oracle::Oracle o(SemanticsId::Trace, sys);
    EXPECT_EQ(o.gamma_n(S({0, 2}), 1), o.gamma_n(S({2, 5}), 1));
    EXPECT_EQ(o.gamma_n(S({0, 2}), 0), o.gamma_n(S({4}), 0));
    EXPECT_NE(o.gamma_n(S({0, 2}), 0), o.gamma_n(S({}), 0));
}

TEST(GammaN, BisimilaritySys3SplitsAtTwo) {
    const TransitionSystem sys = gt::sys3();
    oracle::Oracle o(SemanticsId::Bisimilarity, sys);
    EXPECT_EQ(o.gamma_n(DetState::single(0), 1), o.gamma_n(DetState::single(4), 1));
    EXPECT_NE(o.gamma_n(DetState::single(0), 2), o.gamma_n(DetState::single(4), 2));
}

TEST(GammaN, SimulationValuesAreDownsets) {
    const TransitionSystem sys = gt::sys3();
    oracle::Oracle o(SemanticsId::Simulation, sys);
    const auto x = o.gamma_n(DetState::single(0), 2);
    const auto y = o.gamma_n(DetState::single(4), 2);
    EXPECT_TRUE(o.leq(y, x));
    EXPECT_FALSE(o.leq(x, y));
}

TEST(TraceSet, Examples) {
    const auto sys1 = gt::sys1();
    EXPECT_EQ(oracle::trace_set(sys1, {0, 2}, 1), words({{0}, {1}}));
    EXPECT_EQ(oracle::trace_set(sys1, {3}, 0), words({{}}));
    EXPECT_TRUE(oracle::trace_set(sys1, {}, 0).empty());
    EXPECT_EQ(oracle::trace_set(gt::sys3(), {0}, 2), words({{0, 1}, {0, 2}}));
}

TEST(WordDistribution, Examples) {
    const auto sys4 = gt::sys4();
    const std::map<Word, Rational> expected{{{0, 1}, Rational(1, 2)}, {{0, 2}, Rational(1, 2)}};
    EXPECT_EQ(oracle::word_distribution(sys4, DetState::dirac(0), 2), expected);
    EXPECT_EQ(oracle::word_distribution(sys4, DetState::dirac(4), 2), expected);
    EXPECT_EQ(oracle::word_distribution(sys4, DetState::dirac(3), 0), (std::map<Word, Rational>{{{}, Rational(1)}}));
}

TEST(FailurePairs, Examples) {
    const auto sys2 = gt::sys2();
    EXPECT_EQ(oracle::failure_pairs(sys2, {0, 1, 2}, 1), oracle::failure_pairs(sys2, {0, 2}, 1));
    EXPECT_EQ(oracle::failure_pairs(sys2, {0, 1, 2}, 3), oracle::failure_pairs(sys2, {0, 2}, 3));
    EXPECT_TRUE(oracle::failure_pairs(sys2, {0}, 0).empty());
    const auto sys3 = gt::sys3();
    const auto x = oracle::failure_pairs(sys3, {0}, 2);
    const auto y = oracle::failure_pairs(sys3, {4}, 2);
    EXPECT_NE(x, y);
    EXPECT_EQ(x.at({0}), (std::vector<LabelSet>{{0}}));
    EXPECT_EQ(y.at({0}), (std::vector<LabelSet>{{0, 1}, {0, 2}}));
}

TEST(NaiveSimulation, Sys3) {
    const auto sys3 = gt::sys3();
    for (std::size_t k = 0; k <= 4; ++k) {
        EXPECT_TRUE(oracle::naive_simulation(sys3, k).get(4, 0));
    }
    EXPECT_FALSE(oracle::naive_simulation(sys3, 2).get(0, 4));
    const auto r0 = oracle::naive_simulation(sys3, 0);
    EXPECT_EQ(r0, BitMatrix(9, true));
    const auto fix = oracle::simulation_fixpoint(sys3);
    for (StateId x = 0; x < 9; ++x) {
        EXPECT_TRUE(fix.get(2, x)); // deadlock below everything
    }
}

TEST(OracleProperty, LevelsMatchGammaN) {
    std::mt19937_64 rng(41);
    gt::SweepStats total;
    for (int k = 0; k < 60; ++k) {
        const TransitionSystem sys = k % 2 ? gt::random_lts(rng, {6, 3, 3, true}) : gt::random_lts(rng);
        for (const auto id : gt::applicable(sys)) {
            total.merge(gt::level_vs_oracle(id, sys, 4));
        }
    }
    for (int k = 0; k < 30; ++k) {
        const TransitionSystem sys = gt::random_pts(rng);
        total.merge(gt::level_vs_oracle(SemanticsId::ProbabilisticTrace, sys, 4));
    }
    EXPECT_EQ(total.mismatches, 0U) << total.first_mismatch;
    EXPECT_GT(total.comparisons, 10000U);
}

TEST(OracleProperty, PathOraclesAgreeWithGammaN) {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 120; ++k) {
        const auto lts = gt::random_lts(rng);
        const TransitionSystem sys = lts;
        oracle::Oracle trace(SemanticsId::Trace, sys);
        oracle::Oracle failure(SemanticsId::Failure, sys);
        const auto s = gt::random_subset(rng, lts.num_states(), true);
        const auto t = gt::random_subset(rng, lts.num_states(), true);
        for (std::size_t n = 0; n <= 4; ++n) {
            // trace values at depth n determine the length-n traces exactly
            const bool tr = trace.gamma_n(S(s), n) == trace.gamma_n(S(t), n);
            EXPECT_EQ(tr, oracle::trace_set(lts, s, n) == oracle::trace_set(lts, t, n));
            bool all = true;
            for (std::size_t m = 0; m <= n; ++m) {
                all = all && oracle::trace_set(lts, s, m) == oracle::trace_set(lts, t, m);
            }
            const bool fp = oracle::failure_pairs(lts, s, n) == oracle::failure_pairs(lts, t, n);
            EXPECT_EQ(failure.gamma_n(S(s), n) == failure.gamma_n(S(t), n), all && fp);
        }
    }
}

TEST(OracleProperty, TraceEqualityIsNotCumulative) {
    // a deadlocked state and the empty set have the same (empty) set of length-1 traces
    const auto lts = gt::sys1();
    const TransitionSystem sys = lts;
    oracle::Oracle o(SemanticsId::Trace, sys);
    EXPECT_EQ(o.gamma_n(S({1}), 1), o.gamma_n(S({}), 1));
    EXPECT_NE(oracle::trace_set(lts, {1}, 0), oracle::trace_set(lts, {}, 0));
}

TEST(OracleProperty, DistributionsAgreeWithGammaNAndSumToOne) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 120; ++k) {
        const auto pts = gt::random_pts(rng);
        const TransitionSystem sys = pts;
        oracle::Oracle o(SemanticsId::ProbabilisticTrace, sys);
        const auto s = gt::random_distribution(rng, pts.num_states());
        const auto t = gt::random_distribution(rng, pts.num_states());
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto ds = oracle::word_distribution(pts, s, n);
            Rational sum = 0;
            for (const auto& [w, p] : ds) {
                sum += p;
            }
            EXPECT_EQ(sum, Rational(1));
            bool all = true;
            for (std::size_t m = 0; m <= n; ++m) {
                all = all && oracle::word_distribution(pts, s, m) == oracle::word_distribution(pts, t, m);
            }
            EXPECT_EQ(o.gamma_n(s, n) == o.gamma_n(t, n), all);
        }
    }
}

TEST(OracleProperty, NaiveSimulationStabilizesAndIsTransitive) {
    std::mt19937_64 rng(44);
    for (int k = 0; k < 200; ++k) {
        const auto lts = gt::random_lts(rng);
        std::size_t iterations = 0;
        const auto fix = oracle::simulation_fixpoint(lts, &iterations);
        const auto n = lts.num_states();
        EXPECT_LE(iterations, n * n);
        for (StateId x = 0; x < n; ++x) {
            for (StateId y = 0; y < n; ++y) {
                for (StateId z = 0; z < n; ++z) {
                    EXPECT_TRUE(!(fix.get(x, y) && fix.get(y, z)) || fix.get(x, z));
                }
            }
        }
        // the engine's preorder on singletons is the same relation
        std::vector<DetState> seeds;
        for (StateId x = 0; x < n; ++x) {
            seeds.push_back(DetState::single(x));
        }
        const TransitionSystem sys = lts;
        const auto g = explore(SemanticsId::Simulation, sys, seeds);
        const auto chain = refine_to_fixpoint(g, initial_relation(g, StartMode::FiniteDepth));
        for (StateId x = 0; x < n; ++x) {
            for (StateId y = 0; y < n; ++y) {
                EXPECT_EQ(chain.back().related(g.id_of(seeds[x]), g.id_of(seeds[y])), fix.get(x, y));
            }
        }
    }
}
