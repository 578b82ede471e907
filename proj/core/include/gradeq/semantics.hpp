#pragma once

#include "gradeq/rational.hpp"
#include "gradeq/systems.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gradeq {

enum class SemanticsId { Bisimilarity, Trace, SerialTrace, ProbabilisticTrace, Simulation, Failure };

inline constexpr SemanticsId kAllSemantics[] = {SemanticsId::Bisimilarity,       SemanticsId::Trace,
                                                SemanticsId::SerialTrace,        SemanticsId::ProbabilisticTrace,
                                                SemanticsId::Simulation,         SemanticsId::Failure};

std::string_view to_string(SemanticsId id);

/// Accepts the names produced by to_string plus short aliases
/// (bisim, sim, prob, serial, failures).
std::optional<SemanticsId> parse_semantics(std::string_view name);

/// Whether M0 maps the one-point set to a one-point set on reachable states,
/// i.e. whether the depth-0 observation is constant.
bool has_trivial_depth0(SemanticsId id);

/// Instances whose infinite game is meaningful (strict infinite-depth mode).
bool supports_strict_infinite(SemanticsId id);

/// Throws InstanceError unless `sys` has the branching discipline `id` needs.
void check_instance(SemanticsId id, const TransitionSystem& sys);

namespace detail {
struct DetSingle {
    StateId state = 0;
    friend bool operator==(const DetSingle&, const DetSingle&) = default;
    friend bool operator<(const DetSingle& a, const DetSingle& b) { return a.state < b.state; }
};
struct DetSet {
    std::vector<StateId> states; // sorted, unique
    friend bool operator==(const DetSet&, const DetSet&) = default;
    friend bool operator<(const DetSet& a, const DetSet& b) { return a.states < b.states; }
};
struct DetDist {
    std::vector<std::pair<StateId, Rational>> weights; // sorted by state, positive, sum 1
    friend bool operator==(const DetDist&, const DetDist&) = default;
    friend bool operator<(const DetDist& a, const DetDist& b) { return a.weights < b.weights; }
};
} // namespace detail

/// Canonical element of M0X reachable in the pre-determinization.
class DetState {
  public:
    using Single = detail::DetSingle;
    using Set = detail::DetSet;
    using Dist = detail::DetDist;

    DetState() = default;

    static DetState single(StateId state);
    /// Sorts and deduplicates.
    static DetState set(std::vector<StateId> states);
    /// Sorts, merges repeated states and drops zero weights. Does not check the sum.
    static DetState dist(std::vector<std::pair<StateId, Rational>> weights);
    static DetState dirac(StateId state);

    [[nodiscard]] bool is_single() const { return std::holds_alternative<Single>(value_); }
    [[nodiscard]] bool is_set() const { return std::holds_alternative<Set>(value_); }
    [[nodiscard]] bool is_dist() const { return std::holds_alternative<Dist>(value_); }

    [[nodiscard]] StateId as_single() const { return std::get<Single>(value_).state; }
    [[nodiscard]] const std::vector<StateId>& as_set() const { return std::get<Set>(value_).states; }
    [[nodiscard]] const std::vector<std::pair<StateId, Rational>>& as_dist() const {
        return std::get<Dist>(value_).weights;
    }

    /// States in the support, ascending.
    [[nodiscard]] std::vector<StateId> support() const;

    friend bool operator==(const DetState&, const DetState&) = default;
    friend bool operator<(const DetState& a, const DetState& b) { return a.value_ < b.value_; }
    friend bool operator!=(const DetState& a, const DetState& b) { return !(a == b); }

  private:
    std::variant<Single, Set, Dist> value_;
};

/// `3`, `{0,2}` or `{0:1/2, 3:1/2}`.
std::string to_string(const DetState& state);

/// Throws ValidationError if `state` is not a well-formed reachable element for (id, sys).
void validate_det_state(SemanticsId id, const TransitionSystem& sys, const DetState& state);

/// One successor of a determinized state. `weight` is only meaningful for the
/// probabilistic instance (the label's total probability).
template <class Target>
struct ProfileEdge {
    Label label = 0;
    Target target{};
    Rational weight;

    friend bool operator==(const ProfileEdge&, const ProfileEdge&) = default;
};

/// Normal form of the determinized successor structure of a DetState.
///
/// Per instance:
///  - Bisimilarity, Simulation: the raw transitions (label, Single), sorted.
///  - Trace, Failure: exactly one edge per alphabet label, possibly to the empty set.
///  - SerialTrace: one edge per enabled label, all targets non-empty.
///  - ProbabilisticTrace: one edge per label of positive weight, target the conditional distribution.
///  - Failure additionally: `refusals` holds the ⊆-maximal refusal sets (sorted).
template <class Target>
struct BasicProfile {
    std::vector<ProfileEdge<Target>> edges;
    std::vector<LabelSet> refusals;

    friend bool operator==(const BasicProfile&, const BasicProfile&) = default;
};

using SuccessorProfile = BasicProfile<DetState>;

DetState eta(SemanticsId id, StateId state);

/// Determinized successor structure of `state`.
SuccessorProfile step(SemanticsId id, const TransitionSystem& sys, const DetState& state);

/// Depth-0 observation: constant for instances with trivial M0 1, emptiness otherwise.
struct Depth0Key {
    std::uint8_t value = 0;
    friend auto operator<=>(const Depth0Key&, const Depth0Key&) = default;
};

Depth0Key depth0_key(SemanticsId id, const DetState& state);

namespace detail {
/// `step` without the instance and DetState checks; callers validate once up front.
SuccessorProfile step_unchecked(SemanticsId id, const TransitionSystem& sys, const DetState& state);
} // namespace detail

/// All DetStates occurring in `profile`, deduplicated, ascending.
std::vector<DetState> continuations(const SuccessorProfile& profile);

/// ⊆-maximal elements of `sets`, sorted and deduplicated.
std::vector<LabelSet> maximal_sets(std::vector<LabelSet> sets);

/// Whether `inner` ⊆ `outer` for sorted label sets.
bool is_subset(const LabelSet& inner, const LabelSet& outer);

/// Componentwise comparison of two profiles under a relation on continuations.
///
/// `related(u, v)` must be reflexive. For Simulation the relation is a preorder
/// and the result is directed: whether `p` is simulated by `q`. For every other
/// instance `related` is expected to be symmetric.
template <class Target, class Relation>
bool profiles_match(SemanticsId id, const BasicProfile<Target>& p, const BasicProfile<Target>& q,
                    Relation&& related) {
    switch (id) {
    case SemanticsId::Bisimilarity:
    case SemanticsId::Simulation: {
        auto covered = [&](const BasicProfile<Target>& from, const BasicProfile<Target>& to, bool forward) {
            return std::all_of(from.edges.begin(), from.edges.end(), [&](const auto& e) {
                return std::any_of(to.edges.begin(), to.edges.end(), [&](const auto& f) {
                    return e.label == f.label && (forward ? related(e.target, f.target) : related(f.target, e.target));
                });
            });
        };
        if (!covered(p, q, true)) {
            return false;
        }
        return id == SemanticsId::Simulation || covered(q, p, false);
    }
    case SemanticsId::Trace:
    case SemanticsId::SerialTrace:
    case SemanticsId::Failure:
    case SemanticsId::ProbabilisticTrace: {
        if (p.edges.size() != q.edges.size()) {
            return false;
        }
        for (std::size_t k = 0; k < p.edges.size(); ++k) {
            const auto& e = p.edges[k];
            const auto& f = q.edges[k];
            if (e.label != f.label) {
                return false;
            }
            if (id == SemanticsId::ProbabilisticTrace && e.weight != f.weight) {
                return false;
            }
            if (!related(e.target, f.target) || !related(f.target, e.target)) {
                return false;
            }
        }
        return id != SemanticsId::Failure || p.refusals == q.refusals;
    }
    }
    return false;
}

} // namespace gradeq
