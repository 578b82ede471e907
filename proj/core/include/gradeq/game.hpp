#pragma once

#include "gradeq/engine.hpp"
#include "gradeq/semantics.hpp"
#include "gradeq/systems.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gradeq {

enum class Player { Spoiler, Duplicator };
enum class HumanRole { Spoiler, Duplicator, None };

/// Claim attached to a pair. Simulation uses Le (left simulated by right) and
/// Ge; every other semantics uses Equal.
enum class Direction { Equal, Le, Ge };

std::string_view to_string(Player p);
std::string_view to_string(HumanRole r);
std::string_view to_string(Direction d);
std::optional<HumanRole> parse_human_role(std::string_view text);

struct MovePair {
    DetState left;
    DetState right;
    Direction direction = Direction::Equal;

    friend bool operator==(const MovePair&, const MovePair&) = default;
    friend bool operator<(const MovePair& a, const MovePair& b) {
        return std::tie(a.left, a.right, a.direction) < std::tie(b.left, b.right, b.direction);
    }
};

/// Duplicator's move Z.
using MoveRelation = std::vector<MovePair>;

struct Configuration {
    DetState left;
    DetState right;
    /// Equal until Spoiler commits to a side in the simulation game.
    Direction claim = Direction::Equal;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend bool operator<(const Configuration& a, const Configuration& b) {
        return std::tie(a.left, a.right, a.claim) < std::tie(b.left, b.right, b.claim);
    }
};

struct Admissibility {
    bool admissible = false;
    std::string explanation;
};

/// Whether playing `z` at `config` entails equality (or the claimed
/// inequality) of the two successor structures. Throws ValidationError on a
/// malformed relation.
Admissibility check_admissible(SemanticsId id, const TransitionSystem& sys, const Configuration& config,
                               const MoveRelation& z);

/// A continuation pair offered to the UI: the two `label`-continuations.
struct CandidatePair {
    Label label = 0;
    DetState left;
    DetState right;
};

/// Per label, every left continuation paired with every right continuation.
std::vector<CandidatePair> configuration_candidates(SemanticsId id, const TransitionSystem& sys,
                                                    const Configuration& config);

enum class Phase { AwaitDuplicator, AwaitSpoiler, Finished };
std::string_view to_string(Phase p);

enum class EventKind {
    Relation, // Duplicator played an admissible Z
    Rejected, // Duplicator proposed an inadmissible Z (a strike)
    Pick,     // Spoiler picked a pair from Z
    Resign,   // Duplicator gave up
    Cycle,    // infinite game: the configuration repeated, Duplicator survives forever
    Cap,      // infinite game: engine play reached the round cap
};
std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view text);

struct TranscriptEvent {
    std::size_t round = 1; // 1-based round the event belongs to
    Player actor = Player::Duplicator;
    EventKind kind = EventKind::Relation;
    MoveRelation relation;       // Relation, Rejected
    std::optional<MovePair> pick; // Pick
    std::string note;            // explanation for Rejected
    Configuration config;        // configuration after the event

    friend bool operator==(const TranscriptEvent&, const TranscriptEvent&) = default;
};

struct Outcome {
    Player winner = Player::Duplicator;
    std::string reason;
};

struct GameOptions {
    std::size_t budget = kDefaultBudget;
    std::size_t max_strikes = 3;
};

/// Round structure: Duplicator plays Z, Spoiler picks a pair of Z which
/// becomes the next configuration. When the rounds run out the depth-0
/// observations are compared. A player who cannot move loses.
class GameSession {
  public:
    /// `rounds` nullopt is the infinite game. Throws InstanceError for the
    /// infinite game on semantics without a non-trivial infinite variant.
    GameSession(SemanticsId id, std::shared_ptr<const TransitionSystem> sys, DetState left, DetState right,
                std::optional<std::size_t> rounds, HumanRole human_role, GameOptions options = {});

    [[nodiscard]] SemanticsId semantics() const { return id_; }
    [[nodiscard]] const TransitionSystem& system() const { return *sys_; }
    [[nodiscard]] const Configuration& initial() const { return initial_; }
    [[nodiscard]] const Configuration& config() const { return config_; }
    [[nodiscard]] std::optional<std::size_t> rounds() const { return rounds_; }
    [[nodiscard]] std::optional<std::size_t> rounds_left() const;
    /// Rounds completed so far.
    [[nodiscard]] std::size_t rounds_played() const { return played_; }
    [[nodiscard]] Phase phase() const { return phase_; }
    [[nodiscard]] HumanRole human_role() const { return human_role_; }
    [[nodiscard]] const std::optional<Outcome>& outcome() const { return outcome_; }
    [[nodiscard]] const MoveRelation& pending() const { return pending_; }
    [[nodiscard]] const std::vector<TranscriptEvent>& transcript() const { return transcript_; }
    [[nodiscard]] std::size_t strikes() const { return strikes_; }
    [[nodiscard]] const GameOptions& options() const { return options_; }
    /// Player to move, nullopt when finished.
    [[nodiscard]] std::optional<Player> to_move() const;
    [[nodiscard]] bool engine_to_move() const;
    /// Size of the engine's determinization cache.
    [[nodiscard]] std::size_t det_state_count() const { return analysis_->graph().size(); }

    [[nodiscard]] Admissibility check(const MoveRelation& z) const;
    [[nodiscard]] std::vector<CandidatePair> candidates() const;

    /// Plays Z. An inadmissible Z is recorded as a strike and returned with
    /// its explanation; at `max_strikes` Duplicator forfeits.
    Admissibility duplicator_move(MoveRelation z);
    void spoiler_pick(MovePair pair);
    void resign();

    /// Canonical Duplicator move, nullopt to resign.
    std::optional<MoveRelation> engine_duplicator_move();
    /// Pair of the pending Z that Spoiler should challenge.
    MovePair engine_spoiler_move();
    /// Plays one engine turn for the side to move.
    void play_engine_turn();

    /// The current configuration already occurred at the start of an earlier round.
    [[nodiscard]] bool configuration_repeats() const;

    /// Infinite game only: ends the play in Duplicator's favour because the
    /// current configuration already occurred at the start of an earlier round.
    void claim_cycle();
    /// Infinite game only: ends engine play at a round cap.
    void claim_cap(std::size_t cap);

    /// Verdict of the engine for the current configuration under the
    /// remaining rounds (limit verdict for the infinite game).
    Verdict engine_verdict();

  private:
    void finish(Player winner, std::string reason);
    void record(EventKind kind, Player actor, MoveRelation relation, std::optional<MovePair> pick, std::string note);
    void after_round();
    void require_phase(Phase phase, const char* action) const;
    /// Relations the engine Duplicator tries, preferred first.
    std::vector<const RelationState*> duplicator_levels();
    MoveRelation restricted_kernel(const RelationState& rel, DetId i, DetId j) const;
    [[nodiscard]] bool pair_survives(const RelationState& rel, const MovePair& pair) const;

    SemanticsId id_;
    std::shared_ptr<const TransitionSystem> sys_;
    Configuration initial_;
    Configuration config_;
    std::optional<std::size_t> rounds_;
    std::size_t played_ = 0;
    HumanRole human_role_;
    GameOptions options_;
    Phase phase_ = Phase::AwaitDuplicator;
    std::optional<Outcome> outcome_;
    MoveRelation pending_;
    std::vector<TranscriptEvent> transcript_;
    std::size_t strikes_ = 0;
    std::vector<Configuration> seen_; // configurations at the start of each round
    std::unique_ptr<Analysis> analysis_;
};

/// Engine against engine until the game ends. For the infinite game the play
/// stops with Duplicator winning once a configuration repeats or after `cap`
/// rounds (default 2 * |det states|).
Outcome play_out(GameSession& session, std::optional<std::size_t> cap = std::nullopt);

/// Rebuilds a session by applying `events` to a fresh session; throws
/// GameError if an event does not replay to the recorded configuration.
std::unique_ptr<GameSession> replay_transcript(SemanticsId id, std::shared_ptr<const TransitionSystem> sys,
                                               const DetState& left, const DetState& right,
                                               std::optional<std::size_t> rounds, HumanRole human_role,
                                               const std::vector<TranscriptEvent>& events, GameOptions options = {});

} // namespace gradeq
