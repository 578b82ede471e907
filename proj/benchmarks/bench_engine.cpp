#include "random_systems.hpp"

#include "gradeq/engine.hpp"
#include "gradeq/game.hpp"

#include <benchmark/benchmark.h>

using namespace gradeq;
namespace gt = gradeq::testing;

namespace {

/// A fixed random LTS with `n` states over three labels.
LabelledTransitionSystem lts_of_size(std::size_t n, bool serial) {
    std::mt19937_64 rng(1000 + n);
    return gt::random_lts(rng, {n, 3, 3, serial, true});
}

void BM_DecideLimit(benchmark::State& state, SemanticsId id) {
    const auto lts = lts_of_size(static_cast<std::size_t>(state.range(0)), true);
    const TransitionSystem sys = lts;
    std::size_t det = 0;
    for (auto _ : state) {
        const auto v = decide(id, sys, 0, 1, Depth::limit());
        benchmark::DoNotOptimize(v);
        det = explore(id, sys, std::vector<DetState>{eta(id, 0), eta(id, 1)}).size();
    }
    state.counters["det_states"] = static_cast<double>(det);
}

void BM_ExploreTrace(benchmark::State& state) {
    const TransitionSystem sys = lts_of_size(static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state) {
        auto g = explore(SemanticsId::Trace, sys, std::vector<DetState>{DetState::set({0})});
        benchmark::DoNotOptimize(g);
    }
}

void BM_ProbabilisticDepth(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const TransitionSystem sys = gt::random_pts(rng, {6, 2, 2, true, true});
    const auto depth = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const auto v = decide(SemanticsId::ProbabilisticTrace, sys, 0, 1, Depth::finite(depth));
        benchmark::DoNotOptimize(v);
    }
}

void BM_EngineGame(benchmark::State& state) {
    const auto sys = std::make_shared<const TransitionSystem>(lts_of_size(static_cast<std::size_t>(state.range(0)), true));
    for (auto _ : state) {
        GameSession session(SemanticsId::Bisimilarity, sys, DetState::single(0), DetState::single(1), std::nullopt,
                            HumanRole::None);
        benchmark::DoNotOptimize(play_out(session));
    }
}

} // namespace

BENCHMARK_CAPTURE(BM_DecideLimit, bisimilarity, SemanticsId::Bisimilarity)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK_CAPTURE(BM_DecideLimit, trace, SemanticsId::Trace)->RangeMultiplier(2)->Range(4, 16);
BENCHMARK_CAPTURE(BM_DecideLimit, failure, SemanticsId::Failure)->RangeMultiplier(2)->Range(4, 16);
BENCHMARK_CAPTURE(BM_DecideLimit, simulation, SemanticsId::Simulation)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_ExploreTrace)->RangeMultiplier(2)->Range(4, 16);
BENCHMARK(BM_ProbabilisticDepth)->DenseRange(2, 8, 2);
BENCHMARK(BM_EngineGame)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK_MAIN();
