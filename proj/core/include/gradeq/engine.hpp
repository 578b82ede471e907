#pragma once

#include "gradeq/semantics.hpp"
#include "gradeq/systems.hpp"
#include "gradeq/witness.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gradeq {

using DetId = std::uint32_t;

inline constexpr std::size_t kDefaultBudget = 100000;

struct ExploreOptions {
    std::size_t budget = kDefaultBudget;
    /// Stop expanding at this BFS depth. Nodes at the limit are kept as an
    /// unexpanded frontier; level-k relations are exact for nodes at depth d
    /// whenever d + k <= max_depth.
    std::optional<std::size_t> max_depth;
};

struct DetNode {
    DetState state;
    std::size_t depth = 0;
    /// Missing on the frontier of a depth-bounded exploration.
    std::optional<BasicProfile<DetId>> profile;
    /// Interned antichain (Failure) so refinement compares integers.
    std::uint32_t refusal_class = 0;
    /// Interned label weight per profile edge (ProbabilisticTrace).
    std::vector<std::uint32_t> weight_class;
};

/// Reachable part of the pre-determinization. Ids are assigned in BFS order,
/// seeds first.
class DetGraph {
  public:
    DetGraph() = default;

    [[nodiscard]] SemanticsId semantics() const { return semantics_; }
    [[nodiscard]] const std::vector<std::string>& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] const DetNode& node(DetId id) const { return nodes_.at(id); }
    [[nodiscard]] const std::vector<DetNode>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<DetId>& seeds() const { return seeds_; }
    [[nodiscard]] const BasicProfile<DetId>& profile(DetId id) const;
    [[nodiscard]] std::optional<DetId> find(const DetState& state) const;
    /// Throws ValidationError if `state` was not explored.
    [[nodiscard]] DetId id_of(const DetState& state) const;
    /// No unexpanded frontier.
    [[nodiscard]] bool complete() const { return complete_; }
    /// Interned antichain for a refusal class.
    [[nodiscard]] const std::vector<LabelSet>& refusals(std::uint32_t refusal_class) const {
        return refusal_classes_.at(refusal_class);
    }

  private:
    friend DetGraph explore(SemanticsId, const TransitionSystem&, std::span<const DetState>, const ExploreOptions&);

    SemanticsId semantics_ = SemanticsId::Bisimilarity;
    std::vector<std::string> alphabet_;
    std::vector<DetNode> nodes_;
    std::vector<DetId> seeds_;
    std::map<DetState, DetId> index_;
    std::vector<std::vector<LabelSet>> refusal_classes_;
    bool complete_ = true;
};

/// BFS closure of `seeds` under step. Throws BudgetExceeded when more than
/// `options.budget` det states would be created.
DetGraph explore(SemanticsId id, const TransitionSystem& sys, std::span<const DetState> seeds,
                 const ExploreOptions& options = {});

/// Square bit matrix.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t n, bool value);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
    }
    void set(std::size_t i, std::size_t j, bool value);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

enum class RelationMode { Partition, Preorder };

/// Relation over the det ids of one graph.
struct RelationState {
    RelationMode mode = RelationMode::Partition;
    std::size_t level = 0;
    /// Partition: block per det id, numbered by first occurrence.
    std::vector<std::uint32_t> blocks;
    /// Preorder: order.get(i, j) means i is simulated by j.
    BitMatrix order;
    /// Set when a strict infinite-depth start was requested for an instance
    /// whose depth-0 observation is not constant.
    bool degenerate = false;

    /// Directed for Preorder.
    [[nodiscard]] bool related(DetId i, DetId j) const {
        return mode == RelationMode::Partition ? blocks[i] == blocks[j] : order.get(i, j);
    }
    /// Related in both directions.
    [[nodiscard]] bool equivalent(DetId i, DetId j) const { return related(i, j) && related(j, i); }
    [[nodiscard]] std::size_t size() const { return mode == RelationMode::Partition ? blocks.size() : order.size(); }
    [[nodiscard]] std::size_t num_blocks() const;

    /// Same relation; the level is ignored.
    [[nodiscard]] bool same_relation(const RelationState& other) const {
        return mode == other.mode && blocks == other.blocks && order == other.order;
    }
};

enum class StartMode { FiniteDepth, StrictInfinite };

/// FiniteDepth: kernel of depth0_key. StrictInfinite: the total relation,
/// flagged degenerate for Trace and Failure; Simulation throws InstanceError.
RelationState initial_relation(const DetGraph& g, StartMode mode);

/// The next game level: (i, j) related iff their profiles match under `r`.
/// Unlike refine_once the result is not intersected with `r`; for Trace and
/// Failure successive levels need not be nested.
RelationState next_level(const DetGraph& g, const RelationState& r);

/// One step of the greatest-fixpoint iteration: related in `r` and profiles
/// match under `r`.
RelationState refine_once(const DetGraph& g, const RelationState& r);

/// Iterates refine_once to its fixpoint. Returns every intermediate relation,
/// starting with `start`; the last one is the fixpoint.
std::vector<RelationState> refine_to_fixpoint(const DetGraph& g, RelationState start);

/// Lazily computed game levels W_0 = start, W_{n+1} = next_level(W_n).
/// The sequence over a finite graph is eventually periodic; once a level
/// repeats no further relations are computed.
class LevelSequence {
  public:
    LevelSequence(const DetGraph& g, RelationState start);

    const RelationState& at(std::size_t n);
    /// Distinct levels computed so far once the period is known, else nullopt.
    [[nodiscard]] std::optional<std::size_t> period_end() const { return period_end_; }
    /// Least n <= max_level with (i, j) not equivalent at level n.
    std::optional<std::size_t> distinguishing_depth(DetId i, DetId j, std::optional<std::size_t> max_level);
    /// Least n <= max_level with i not related to j (directed).
    std::optional<std::size_t> directed_depth(DetId i, DetId j, std::optional<std::size_t> max_level);

  private:
    void compute_until(std::size_t n);
    [[nodiscard]] std::size_t physical(std::size_t n) const;

    const DetGraph* graph_;
    std::vector<RelationState> levels_;
    std::optional<std::size_t> period_end_;
    std::size_t cycle_start_ = 0;
};

/// Requested observation depth.
struct Depth {
    enum class Kind { Finite, Limit, StrictInfinite };
    Kind kind = Kind::Limit;
    std::size_t rounds = 0;

    static Depth finite(std::size_t n) { return {Kind::Finite, n}; }
    static Depth limit() { return {Kind::Limit, 0}; }
    static Depth strict_infinite() { return {Kind::StrictInfinite, 0}; }

    friend bool operator==(const Depth&, const Depth&) = default;
};

/// Parses `n`, `limit` or `infinite`.
Depth parse_depth(std::string_view text);
std::string to_string(const Depth& depth);

struct Verdict {
    enum class Kind { EquivalentUpTo, EquivalentLimit, Distinguished };
    Kind kind = Kind::EquivalentLimit;
    /// EquivalentUpTo: the requested n. Distinguished: least distinguishing depth.
    std::size_t depth = 0;
    std::optional<Witness> witness;
    bool infinite_mode_degenerate = false;

    [[nodiscard]] bool equivalent() const { return kind != Kind::Distinguished; }
};

/// Graph plus cached relations for one semantics and a growing seed set.
/// Used by decide and by game sessions.
class Analysis {
  public:
    Analysis(SemanticsId id, std::shared_ptr<const TransitionSystem> sys, std::vector<DetState> seeds,
             ExploreOptions options = {}, StartMode start = StartMode::FiniteDepth);

    [[nodiscard]] SemanticsId semantics() const { return id_; }
    [[nodiscard]] const TransitionSystem& system() const { return *sys_; }
    [[nodiscard]] const DetGraph& graph() const { return graph_; }
    [[nodiscard]] StartMode start_mode() const { return start_; }

    /// Re-explores if some state is unknown, or in a depth-bounded analysis
    /// lies too deep for `levels_needed` levels of its continuations. Cached
    /// relations are dropped and previously returned ids may change.
    void ensure(std::span<const DetState> states, std::size_t levels_needed = 0);
    [[nodiscard]] DetId id(const DetState& state) const { return graph_.id_of(state); }

    LevelSequence& levels();
    /// Intersected refinement chain from the start relation; back() is the gfp.
    const std::vector<RelationState>& chain();
    const RelationState& fixpoint() { return chain().back(); }

  private:
    void rebuild();

    SemanticsId id_;
    std::shared_ptr<const TransitionSystem> sys_;
    std::vector<DetState> seeds_;
    ExploreOptions options_;
    StartMode start_;
    DetGraph graph_;
    std::unique_ptr<LevelSequence> levels_;
    std::optional<std::vector<RelationState>> chain_;
};

/// Decides equivalence of eta(x) and eta(y).
Verdict decide(SemanticsId id, const TransitionSystem& sys, StateId x, StateId y, Depth depth,
               std::size_t budget = kDefaultBudget);

Verdict decide_pair_detstates(SemanticsId id, const TransitionSystem& sys, const DetState& s, const DetState& t,
                              Depth depth, std::size_t budget = kDefaultBudget);

/// Verdict for det ids of an existing analysis.
Verdict decide_in(Analysis& analysis, DetId i, DetId j, Depth depth);

/// Walks the levels down from `level`, where (i, j) must be unrelated
/// (directed for Simulation), and builds Spoiler's evidence.
Witness extract_witness(const DetGraph& g, LevelSequence& levels, DetId i, DetId j, std::size_t level);

/// Pairs of continuations (per label, left from the first component) of every
/// explored configuration related by `r`, restricted to pairs related by `r`.
/// Reflexive pairs are included; duplicates removed; sorted by det ids.
std::vector<std::pair<DetState, DetState>> extract_duplicator_strategy(const DetGraph& g, const RelationState& r);

/// Continuation pairs of the configuration (i, j): for every label, each
/// left continuation paired with each right continuation, in ascending
/// (label, left id, right id) order without repetitions.
std::vector<std::pair<DetId, DetId>> candidate_pairs(const DetGraph& g, DetId i, DetId j);

std::string determinization_to_dot(const DetGraph& g);

} // namespace gradeq
