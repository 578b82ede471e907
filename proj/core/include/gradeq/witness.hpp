#pragma once

#include "gradeq/rational.hpp"
#include "gradeq/semantics.hpp"
#include "gradeq/systems.hpp"

#include <variant>
#include <vector>

namespace gradeq {

using Word = std::vector<Label>;

enum class Side { Left, Right };

/// A word that is a trace of exactly one side.
struct WordWitness {
    Word word;
    friend bool operator==(const WordWitness&, const WordWitness&) = default;
};

/// A word whose probability differs between the two sides.
struct WordProbabilityWitness {
    Word word;
    Rational left;
    Rational right;
    friend bool operator==(const WordProbabilityWitness&, const WordProbabilityWitness&) = default;
};

/// (word, refusal) that is a failure pair of exactly one side.
struct FailurePairWitness {
    Word word;
    LabelSet refusal;
    friend bool operator==(const FailurePairWitness&, const FailurePairWitness&) = default;
};

/// Spoiler's winning challenge tree in the branching-time games.
///
/// At configuration (left, right) Spoiler moves on `side` with `label` to
/// `chosen`. `replies` holds one subtree per answer the opponent has (all
/// `label`-successors on the other side, ascending); each subtree's
/// configuration is the pair reached after that answer. No replies means the
/// opponent cannot answer.
struct MoveTree {
    DetState left;
    DetState right;
    Side side = Side::Left;
    Label label = 0;
    DetState chosen;
    std::vector<MoveTree> replies;

    [[nodiscard]] std::size_t depth() const;
    friend bool operator==(const MoveTree&, const MoveTree&) = default;
};

/// Similarity fails in one direction: Spoiler keeps moving on `spoiler_side`,
/// which is the side that is not simulated by the other.
struct SimulationWitness {
    Side spoiler_side = Side::Left;
    MoveTree tree;
    friend bool operator==(const SimulationWitness&, const SimulationWitness&) = default;
};

using Witness = std::variant<WordWitness, WordProbabilityWitness, FailurePairWitness, MoveTree, SimulationWitness>;

/// Replays a challenge tree against the LTS. Checks that every challenge is a
/// real transition, that replies enumerate exactly the opponent's answers, and
/// that every leaf leaves the opponent without an answer. For Simulation,
/// `fixed_side` pins the side Spoiler must always move on.
bool replay_move_tree(const LabelledTransitionSystem& lts, const MoveTree& tree,
                      std::optional<Side> fixed_side = std::nullopt);

} // namespace gradeq
