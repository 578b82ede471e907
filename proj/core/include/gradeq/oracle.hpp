#pragma once

#include "gradeq/engine.hpp"
#include "gradeq/semantics.hpp"
#include "gradeq/systems.hpp"
#include "gradeq/witness.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

// Brute-force reference semantics. Exponential; meant for small systems and
// shallow depths (tests and the `oracle` CLI subcommand).

namespace gradeq::oracle {

/// Hash-consed id of a depth-n behaviour value; equal ids mean equal values
/// (within one Oracle).
using ValueId = std::uint32_t;

/// Depth-n behaviour by unfolding step n times and replacing continuations
/// with their depth-(n-1) values. Simulation values are downsets represented
/// by their maximal generators.
class Oracle {
  public:
    Oracle(SemanticsId id, const TransitionSystem& sys);

    ValueId gamma_n(const DetState& state, std::size_t n);
    /// Simulation only: downset inclusion of two values of equal depth.
    bool leq(ValueId v, ValueId w);
    [[nodiscard]] std::size_t arena_size() const { return nodes_.size(); }

  private:
    struct Node {
        std::size_t depth = 0;
        std::vector<std::uint32_t> ints; // (label, child) pairs, or the depth-0 key
        std::vector<Rational> weights;   // ProbabilisticTrace label weights
        std::vector<LabelSet> refusals;  // Failure

        friend bool operator<(const Node& a, const Node& b) {
            return std::tie(a.depth, a.ints, a.weights, a.refusals) < std::tie(b.depth, b.ints, b.weights, b.refusals);
        }
    };

    ValueId intern(Node node);

    SemanticsId id_;
    const TransitionSystem* sys_;
    std::vector<Node> nodes_;
    std::map<Node, ValueId> ids_;
    std::map<std::pair<DetState, std::size_t>, ValueId> memo_;
    std::map<std::pair<ValueId, ValueId>, bool> leq_memo_;
};

/// Words of length exactly n labelling a path from some state of `states`.
std::set<Word> trace_set(const LabelledTransitionSystem& lts, const std::vector<StateId>& states, std::size_t n);

/// Distribution over length-n words generated from `dist`.
std::map<Word, Rational> word_distribution(const ProbabilisticTransitionSystem& pts, const DetState& dist,
                                           std::size_t n);

/// For every word w with |w| <= n-1 that labels a path from `states`: the
/// ⊆-maximal refusal sets of the states reached by w.
std::map<Word, std::vector<LabelSet>> failure_pairs(const LabelledTransitionSystem& lts,
                                                    const std::vector<StateId>& states, std::size_t n);

/// Whether (w, B) is a failure pair of some state in `states`.
bool is_failure_pair(const LabelledTransitionSystem& lts, const std::vector<StateId>& states, const Word& word,
                     const LabelSet& refusal);

/// R_0 total, R_{k+1}(x, y) iff every move of x is answered by y into R_k.
/// Returns R_n over the states of `lts`.
BitMatrix naive_simulation(const LabelledTransitionSystem& lts, std::size_t n);

/// Iterates naive_simulation to its fixpoint; `iterations` receives the
/// number of rounds needed.
BitMatrix simulation_fixpoint(const LabelledTransitionSystem& lts, std::size_t* iterations = nullptr);

/// Checks a witness against the path-based semantics of (s, t).
bool witness_is_valid(SemanticsId id, const TransitionSystem& sys, const DetState& s, const DetState& t,
                      const Witness& witness);

} // namespace gradeq::oracle
