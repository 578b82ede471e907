#pragma once

#include "gradeq/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gradeq {

using StateId = std::uint32_t;
using Label = std::uint32_t;

/// Sorted, duplicate-free list of label indices.
using LabelSet = std::vector<Label>;

struct Transition {
    StateId source = 0;
    Label label = 0;
    StateId target = 0;

    auto operator<=>(const Transition&) const = default;
};

/// Finite LTS. Labels are opaque strings; transitions are kept sorted by
/// (source, label, target) and deduplicated.
class LabelledTransitionSystem {
  public:
    LabelledTransitionSystem() = default;

    /// Validates indices and alphabet uniqueness. Duplicate transitions are
    /// dropped; their count is reported through `duplicates_dropped()`.
    LabelledTransitionSystem(std::size_t num_states, std::vector<std::string> alphabet,
                             std::vector<Transition> transitions, StateId initial = 0);

    [[nodiscard]] std::size_t num_states() const { return num_states_; }
    [[nodiscard]] const std::vector<std::string>& alphabet() const { return alphabet_; }
    [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }
    [[nodiscard]] StateId initial() const { return initial_; }
    [[nodiscard]] std::size_t duplicates_dropped() const { return duplicates_dropped_; }

    /// Outgoing transitions of `state`, sorted by (label, target).
    [[nodiscard]] std::span<const Transition> successors(StateId state) const;

    /// Labels with at least one outgoing transition at `state`.
    [[nodiscard]] LabelSet enabled(StateId state) const;

    [[nodiscard]] std::optional<Label> label_index(std::string_view name) const;

    friend bool operator==(const LabelledTransitionSystem& a, const LabelledTransitionSystem& b) {
        return a.num_states_ == b.num_states_ && a.alphabet_ == b.alphabet_ && a.transitions_ == b.transitions_ &&
               a.initial_ == b.initial_;
    }

  private:
    std::size_t num_states_ = 0;
    std::vector<std::string> alphabet_;
    std::vector<Transition> transitions_;
    std::vector<std::size_t> offsets_; // CSR offsets into transitions_, size num_states_ + 1
    StateId initial_ = 0;
    std::size_t duplicates_dropped_ = 0;
};

struct WeightedEdge {
    Label label = 0;
    StateId target = 0;
    Rational weight;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Generative probabilistic transition system: every state carries a
/// distribution over (label, target) with positive rational weights summing to 1.
class ProbabilisticTransitionSystem {
  public:
    ProbabilisticTransitionSystem() = default;

    /// Rows are canonicalised (sorted, duplicate (label, target) entries summed)
    /// and validated. Throws ValidationError naming the first offending state.
    ProbabilisticTransitionSystem(std::size_t num_states, std::vector<std::string> alphabet,
                                  std::vector<std::vector<WeightedEdge>> rows);

    [[nodiscard]] std::size_t num_states() const { return rows_.size(); }
    [[nodiscard]] const std::vector<std::string>& alphabet() const { return alphabet_; }
    [[nodiscard]] std::span<const WeightedEdge> row(StateId state) const;
    [[nodiscard]] std::optional<Label> label_index(std::string_view name) const;

    friend bool operator==(const ProbabilisticTransitionSystem&, const ProbabilisticTransitionSystem&) = default;

  private:
    std::vector<std::string> alphabet_;
    std::vector<std::vector<WeightedEdge>> rows_;
};

using TransitionSystem = std::variant<LabelledTransitionSystem, ProbabilisticTransitionSystem>;

std::size_t num_states(const TransitionSystem& sys);
const std::vector<std::string>& alphabet(const TransitionSystem& sys);

struct ParseDiagnostics {
    std::vector<std::string> warnings;
};

/// Aldebaran format: `des (init, m, n)` followed by exactly m lines
/// `(src, "label", dst)`. Labels are numbered by first occurrence;
/// `extra_labels` are appended afterwards (for actions no transition uses).
LabelledTransitionSystem parse_aut(std::string_view text, ParseDiagnostics* diagnostics = nullptr,
                                   const std::vector<std::string>& extra_labels = {});

/// Canonical rendering: transitions ordered by (label, source, target) so that
/// first-occurrence order reproduces the alphabet when parsed back.
std::string render_aut(const LabelledTransitionSystem& lts);

/// Line format: `pts n <labels...>` then `src label p/q dst` lines.
/// Blank lines and lines starting with '#' are ignored.
ProbabilisticTransitionSystem parse_pts(std::string_view text);

std::string render_pts(const ProbabilisticTransitionSystem& pts);

/// Least superset of `seeds` closed under transitions (sorted).
std::vector<StateId> reachable(const TransitionSystem& sys, std::span<const StateId> seeds);

/// States without outgoing transitions. Empty iff the LTS is serial.
std::vector<StateId> deadlock_states(const LabelledTransitionSystem& lts);

/// Coproduct of two LTS: states of `right` are shifted by `left.num_states()`,
/// alphabets merged by name (left order first).
LabelledTransitionSystem disjoint_union(const LabelledTransitionSystem& left, const LabelledTransitionSystem& right);
ProbabilisticTransitionSystem disjoint_union(const ProbabilisticTransitionSystem& left,
                                             const ProbabilisticTransitionSystem& right);

} // namespace gradeq
