#pragma once

#include "random_systems.hpp"

#include "gradeq/engine.hpp"
#include "gradeq/errors.hpp"
#include "gradeq/game.hpp"
#include "gradeq/oracle.hpp"

#include <memory>
#include <sstream>
#include <string>

namespace gradeq::testing {

struct SweepStats {
    std::size_t systems = 0;
    std::size_t comparisons = 0;
    std::size_t mismatches = 0;
    std::size_t skipped = 0;
    std::string first_mismatch;

    void merge(const SweepStats& other) {
        systems += other.systems;
        comparisons += other.comparisons;
        mismatches += other.mismatches;
        skipped += other.skipped;
        if (first_mismatch.empty()) {
            first_mismatch = other.first_mismatch;
        }
    }
};

/// Engine level-n relatedness against oracle value equality for every explored
/// pair whose level-n relation is exact, n <= max_n. Seeds are eta of every state.
inline SweepStats level_vs_oracle(SemanticsId id, const TransitionSystem& sys, std::size_t max_n,
                                  std::size_t budget = 20000) {
    SweepStats stats;
    std::vector<DetState> seeds;
    for (StateId x = 0; x < num_states(sys); ++x) {
        seeds.push_back(eta(id, x));
    }
    ExploreOptions options;
    options.budget = budget;
    options.max_depth = max_n;
    DetGraph g;
    try {
        g = explore(id, sys, seeds, options);
    } catch (const BudgetExceeded&) {
        ++stats.skipped;
        return stats;
    }
    ++stats.systems;
    LevelSequence levels(g, initial_relation(g, StartMode::FiniteDepth));
    oracle::Oracle oracle(id, sys);
    for (std::size_t n = 0; n <= max_n; ++n) {
        const auto& rel = levels.at(n);
        std::vector<oracle::ValueId> values(g.size());
        std::vector<bool> exact(g.size());
        for (DetId i = 0; i < g.size(); ++i) {
            exact[i] = g.node(i).depth + n <= max_n;
            if (exact[i]) {
                values[i] = oracle.gamma_n(g.node(i).state, n);
            }
        }
        for (DetId i = 0; i < g.size(); ++i) {
            for (DetId j = 0; j < g.size() && exact[i]; ++j) {
                if (!exact[j]) {
                    continue;
                }
                ++stats.comparisons;
                bool agree = rel.equivalent(i, j) == (values[i] == values[j]);
                if (id == SemanticsId::Simulation) {
                    agree = agree && rel.related(i, j) == oracle.leq(values[i], values[j]);
                }
                if (!agree) {
                    ++stats.mismatches;
                    if (stats.first_mismatch.empty()) {
                        std::ostringstream out;
                        out << to_string(id) << " n=" << n << " " << to_string(g.node(i).state) << " vs "
                            << to_string(g.node(j).state);
                        stats.first_mismatch = out.str();
                    }
                }
            }
        }
    }
    return stats;
}

/// Greatest-fixpoint relatedness in strict infinite mode against the winner of
/// engine-vs-engine infinite play, for every pair of states.
inline SweepStats fixpoint_vs_infinite_game(SemanticsId id, const std::shared_ptr<const TransitionSystem>& sys,
                                            std::size_t budget = 300) {
    SweepStats stats;
    const auto n = num_states(*sys);
    std::vector<DetState> seeds;
    for (StateId x = 0; x < n; ++x) {
        seeds.push_back(eta(id, x));
    }
    std::unique_ptr<Analysis> analysis;
    try {
        ExploreOptions options;
        options.budget = budget;
        analysis = std::make_unique<Analysis>(id, sys, seeds, options, StartMode::StrictInfinite);
    } catch (const BudgetExceeded&) {
        ++stats.skipped;
        return stats;
    }
    ++stats.systems;
    const auto& gfp = analysis->fixpoint();
    GameOptions game_options;
    game_options.budget = budget;
    for (StateId x = 0; x < n; ++x) {
        for (StateId y = x; y < n; ++y) {
            const bool related = gfp.equivalent(analysis->id(seeds[x]), analysis->id(seeds[y]));
            GameSession session(id, sys, seeds[x], seeds[y], std::nullopt, HumanRole::None, game_options);
            const auto outcome = play_out(session);
            ++stats.comparisons;
            if (related != (outcome.winner == Player::Duplicator)) {
                ++stats.mismatches;
                if (stats.first_mismatch.empty()) {
                    stats.first_mismatch = std::string(to_string(id)) + " " + std::to_string(x) + " vs " +
                                           std::to_string(y) + ": " + outcome.reason;
                }
            }
        }
    }
    return stats;
}

} // namespace gradeq::testing
