#include "gradeq/game.hpp"

#include "gradeq/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace gradeq {

std::string_view to_string(Player p) {
    return p == Player::Spoiler ? "spoiler" : "duplicator";
}

std::string_view to_string(HumanRole r) {
    switch (r) {
    case HumanRole::Spoiler:
        return "spoiler";
    case HumanRole::Duplicator:
        return "duplicator";
    case HumanRole::None:
        return "none";
    }
    return "?";
}

std::string_view to_string(Direction d) {
    switch (d) {
    case Direction::Equal:
        return "=";
    case Direction::Le:
        return "<=";
    case Direction::Ge:
        return ">=";
    }
    return "?";
}

std::optional<HumanRole> parse_human_role(std::string_view text) {
    if (text == "spoiler") {
        return HumanRole::Spoiler;
    }
    if (text == "duplicator") {
        return HumanRole::Duplicator;
    }
    if (text == "none") {
        return HumanRole::None;
    }
    return std::nullopt;
}

std::string_view to_string(Phase p) {
    switch (p) {
    case Phase::AwaitDuplicator:
        return "await_duplicator";
    case Phase::AwaitSpoiler:
        return "await_spoiler";
    case Phase::Finished:
        return "finished";
    }
    return "?";
}

namespace {

constexpr std::pair<EventKind, std::string_view> kEventNames[] = {
    {EventKind::Relation, "relation"}, {EventKind::Rejected, "rejected"}, {EventKind::Pick, "pick"},
    {EventKind::Resign, "resign"},     {EventKind::Cycle, "cycle"},       {EventKind::Cap, "cap"},
};

} // namespace

std::string_view to_string(EventKind k) {
    for (const auto& [kind, name] : kEventNames) {
        if (kind == k) {
            return name;
        }
    }
    return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
    for (const auto& [kind, name] : kEventNames) {
        if (name == text) {
            return kind;
        }
    }
    return std::nullopt;
}

// --- admissibility ---------------------------------------------------------------

namespace {

std::string label_name(const TransitionSystem& sys, Label a) {
    return alphabet(sys)[a];
}

std::string states_string(const std::vector<StateId>& states) {
    return to_string(DetState::set(states));
}

/// Largest set equal to `start` in the join-semilattice congruence generated by z.
std::vector<char> saturate(std::size_t n, const std::vector<StateId>& start, const MoveRelation& z) {
    std::vector<char> in(n, 0);
    for (const auto x : start) {
        in[x] = 1;
    }
    const auto contained = [&](const std::vector<StateId>& u) {
        return std::all_of(u.begin(), u.end(), [&](StateId x) { return in[x] != 0; });
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : z) {
            for (const auto& [from, to] : {std::pair{&p.left, &p.right}, std::pair{&p.right, &p.left}}) {
                if (!contained(from->as_set())) {
                    continue;
                }
                for (const auto y : to->as_set()) {
                    if (!in[y]) {
                        in[y] = 1;
                        changed = true;
                    }
                }
            }
        }
    }
    return in;
}

bool semilattice_equal(std::size_t n, const std::vector<StateId>& u, const std::vector<StateId>& v,
                       const MoveRelation& z) {
    const auto su = saturate(n, u, z);
    const auto sv = saturate(n, v, z);
    return std::all_of(u.begin(), u.end(), [&](StateId x) { return sv[x] != 0; }) &&
           std::all_of(v.begin(), v.end(), [&](StateId x) { return su[x] != 0; });
}

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<std::size_t> parent_;
};

std::string labels_string(const TransitionSystem& sys, const SuccessorProfile& p) {
    std::string out = "{";
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
        out += (k ? "," : "") + label_name(sys, p.edges[k].label);
    }
    return out + "}";
}

Admissibility ok() {
    return {true, ""};
}

Admissibility reject(std::string why) {
    return {false, std::move(why)};
}

Admissibility check_linear(SemanticsId id, const TransitionSystem& sys, const SuccessorProfile& ps,
                           const SuccessorProfile& pt, const MoveRelation& z) {
    if (ps.edges.size() != pt.edges.size() ||
        !std::equal(ps.edges.begin(), ps.edges.end(), pt.edges.begin(),
                    [](const auto& e, const auto& f) { return e.label == f.label; })) {
        return reject("enabled actions differ: " + labels_string(sys, ps) + " vs " + labels_string(sys, pt));
    }
    if (id == SemanticsId::Failure && ps.refusals != pt.refusals) {
        return reject("the refusal sets of the two positions differ; no relation can equate them");
    }
    const auto n = num_states(sys);
    for (std::size_t k = 0; k < ps.edges.size(); ++k) {
        const auto& u = ps.edges[k].target.as_set();
        const auto& v = pt.edges[k].target.as_set();
        if (!semilattice_equal(n, u, v, z)) {
            return reject("after " + label_name(sys, ps.edges[k].label) + ": " + states_string(u) + " and " +
                          states_string(v) + " are not equated by the claimed pairs");
        }
    }
    return ok();
}

Admissibility check_bisimilarity(const TransitionSystem& sys, const SuccessorProfile& ps, const SuccessorProfile& pt,
                                 const MoveRelation& z) {
    UnionFind uf(num_states(sys));
    for (const auto& p : z) {
        uf.unite(p.left.as_single(), p.right.as_single());
    }
    const auto covered = [&](const SuccessorProfile& from, const SuccessorProfile& to, const char* side,
                             std::string* why) {
        for (const auto& e : from.edges) {
            const bool answered = std::any_of(to.edges.begin(), to.edges.end(), [&](const auto& f) {
                return f.label == e.label && uf.find(e.target.as_single()) == uf.find(f.target.as_single());
            });
            if (!answered) {
                *why = std::string(side) + " move " + label_name(sys, e.label) + " to " + to_string(e.target) +
                       " has no answer claimed equivalent";
                return false;
            }
        }
        return true;
    };
    std::string why;
    if (!covered(ps, pt, "left", &why) || !covered(pt, ps, "right", &why)) {
        return reject(why);
    }
    return ok();
}

Admissibility check_probabilistic(const TransitionSystem& sys, const SuccessorProfile& ps, const SuccessorProfile& pt,
                                  const MoveRelation& z) {
    std::map<DetState, std::size_t> index;
    const auto slot = [&](const DetState& d) {
        return index.emplace(d, index.size()).first->second;
    };
    for (const auto& p : z) {
        slot(p.left);
        slot(p.right);
    }
    for (const auto* prof : {&ps, &pt}) {
        for (const auto& e : prof->edges) {
            slot(e.target);
        }
    }
    UnionFind uf(index.size());
    for (const auto& p : z) {
        uf.unite(index.at(p.left), index.at(p.right));
    }
    if (ps.edges.size() != pt.edges.size() ||
        !std::equal(ps.edges.begin(), ps.edges.end(), pt.edges.begin(),
                    [](const auto& e, const auto& f) { return e.label == f.label; })) {
        return reject("enabled actions differ: " + labels_string(sys, ps) + " vs " + labels_string(sys, pt));
    }
    for (std::size_t k = 0; k < ps.edges.size(); ++k) {
        const auto& e = ps.edges[k];
        const auto& f = pt.edges[k];
        if (e.weight != f.weight) {
            return reject("action " + label_name(sys, e.label) + " has probability " + to_string(e.weight) +
                          " on the left and " + to_string(f.weight) + " on the right");
        }
        if (uf.find(index.at(e.target)) != uf.find(index.at(f.target))) {
            return reject("after " + label_name(sys, e.label) + ": " + to_string(e.target) + " and " +
                          to_string(f.target) + " are not claimed equivalent");
        }
    }
    return ok();
}

Admissibility check_simulation(const TransitionSystem& sys, const Configuration& config, const SuccessorProfile& ps,
                               const SuccessorProfile& pt, const MoveRelation& z) {
    const auto n = num_states(sys);
    std::vector<std::vector<StateId>> below(n); // edge u -> v means u <= v
    for (const auto& p : z) {
        if (config.claim != Direction::Equal && p.direction != config.claim) {
            return reject("Spoiler is committed to the " + std::string(config.claim == Direction::Le ? "left" : "right") +
                          " side; every claim must be " + std::string(to_string(config.claim)));
        }
        const auto u = p.left.as_single();
        const auto v = p.right.as_single();
        if (p.direction == Direction::Le) {
            below[u].push_back(v);
        } else {
            below[v].push_back(u);
        }
    }
    const auto leq = [&](StateId from, StateId to) {
        std::vector<char> seen(n, 0);
        std::deque<StateId> queue{from};
        seen[from] = 1;
        while (!queue.empty()) {
            const auto x = queue.front();
            queue.pop_front();
            if (x == to) {
                return true;
            }
            for (const auto y : below[x]) {
                if (!seen[y]) {
                    seen[y] = 1;
                    queue.push_back(y);
                }
            }
        }
        return false;
    };
    if (config.claim != Direction::Ge) {
        for (const auto& e : ps.edges) {
            const bool answered = std::any_of(pt.edges.begin(), pt.edges.end(), [&](const auto& f) {
                return f.label == e.label && leq(e.target.as_single(), f.target.as_single());
            });
            if (!answered) {
                return reject("left move " + label_name(sys, e.label) + " to " + to_string(e.target) +
                              " has no right answer claimed to simulate it");
            }
        }
    }
    if (config.claim != Direction::Le) {
        for (const auto& f : pt.edges) {
            const bool answered = std::any_of(ps.edges.begin(), ps.edges.end(), [&](const auto& e) {
                return e.label == f.label && leq(f.target.as_single(), e.target.as_single());
            });
            if (!answered) {
                return reject("right move " + label_name(sys, f.label) + " to " + to_string(f.target) +
                              " has no left answer claimed to simulate it");
            }
        }
    }
    return ok();
}

} // namespace

Admissibility check_admissible(SemanticsId id, const TransitionSystem& sys, const Configuration& config,
                               const MoveRelation& z) {
    for (const auto& p : z) {
        validate_det_state(id, sys, p.left);
        validate_det_state(id, sys, p.right);
        const bool directed = p.direction != Direction::Equal;
        if (directed != (id == SemanticsId::Simulation)) {
            throw ValidationError(id == SemanticsId::Simulation ? "simulation claims must be <= or >="
                                                                : "claims must be equalities for this semantics");
        }
    }
    const auto ps = step(id, sys, config.left);
    const auto pt = step(id, sys, config.right);
    switch (id) {
    case SemanticsId::Bisimilarity:
        return check_bisimilarity(sys, ps, pt, z);
    case SemanticsId::Simulation:
        return check_simulation(sys, config, ps, pt, z);
    case SemanticsId::ProbabilisticTrace:
        return check_probabilistic(sys, ps, pt, z);
    default:
        return check_linear(id, sys, ps, pt, z);
    }
}

std::vector<CandidatePair> configuration_candidates(SemanticsId id, const TransitionSystem& sys,
                                                    const Configuration& config) {
    const auto ps = step(id, sys, config.left);
    const auto pt = step(id, sys, config.right);
    std::vector<CandidatePair> result;
    std::set<std::pair<DetState, DetState>> seen;
    for (Label a = 0; a < alphabet(sys).size(); ++a) {
        for (const auto& e : ps.edges) {
            if (e.label != a) {
                continue;
            }
            for (const auto& f : pt.edges) {
                if (f.label == a && seen.emplace(e.target, f.target).second) {
                    result.push_back({a, e.target, f.target});
                }
            }
        }
    }
    return result;
}

// --- sessions --------------------------------------------------------------------

GameSession::GameSession(SemanticsId id, std::shared_ptr<const TransitionSystem> sys, DetState left, DetState right,
                         std::optional<std::size_t> rounds, HumanRole human_role, GameOptions options)
    : id_(id), sys_(std::move(sys)), rounds_(rounds), human_role_(human_role), options_(options) {
    check_instance(id_, *sys_);
    validate_det_state(id_, *sys_, left);
    validate_det_state(id_, *sys_, right);
    if (!rounds_ && !supports_strict_infinite(id_)) {
        if (id_ == SemanticsId::Simulation) {
            throw InstanceError("the infinite game is not available for simulation; play a finite number of rounds");
        }
        throw InstanceError("the infinite " + std::string(to_string(id_)) +
                            " game is degenerate: Duplicator wins every position by bluffing");
    }
    initial_ = Configuration{std::move(left), std::move(right), Direction::Equal};
    config_ = initial_;
    ExploreOptions explore_options;
    explore_options.budget = options_.budget;
    explore_options.max_depth = rounds_;
    analysis_ = std::make_unique<Analysis>(id_, sys_, std::vector<DetState>{config_.left, config_.right},
                                           explore_options,
                                           rounds_ ? StartMode::FiniteDepth : StartMode::StrictInfinite);
    seen_.push_back(config_);
    if (rounds_ && *rounds_ == 0) {
        after_round();
    }
}

std::optional<std::size_t> GameSession::rounds_left() const {
    if (!rounds_) {
        return std::nullopt;
    }
    return *rounds_ - played_;
}

std::optional<Player> GameSession::to_move() const {
    switch (phase_) {
    case Phase::AwaitDuplicator:
        return Player::Duplicator;
    case Phase::AwaitSpoiler:
        return Player::Spoiler;
    case Phase::Finished:
        return std::nullopt;
    }
    return std::nullopt;
}

bool GameSession::engine_to_move() const {
    const auto p = to_move();
    if (!p) {
        return false;
    }
    switch (human_role_) {
    case HumanRole::None:
        return true;
    case HumanRole::Spoiler:
        return *p == Player::Duplicator;
    case HumanRole::Duplicator:
        return *p == Player::Spoiler;
    }
    return false;
}

Admissibility GameSession::check(const MoveRelation& z) const {
    return check_admissible(id_, *sys_, config_, z);
}

std::vector<CandidatePair> GameSession::candidates() const {
    return configuration_candidates(id_, *sys_, config_);
}

void GameSession::require_phase(Phase phase, const char* action) const {
    if (phase_ != phase) {
        throw GameError(std::string("cannot ") + action + " while the session is in phase " +
                        std::string(to_string(phase_)));
    }
}

void GameSession::record(EventKind kind, Player actor, MoveRelation relation, std::optional<MovePair> pick,
                         std::string note) {
    TranscriptEvent event;
    event.round = played_ + 1;
    event.actor = actor;
    event.kind = kind;
    event.relation = std::move(relation);
    event.pick = std::move(pick);
    event.note = std::move(note);
    event.config = config_;
    transcript_.push_back(std::move(event));
}

void GameSession::finish(Player winner, std::string reason) {
    phase_ = Phase::Finished;
    pending_.clear();
    outcome_ = Outcome{winner, std::move(reason)};
}

Admissibility GameSession::duplicator_move(MoveRelation z) {
    require_phase(Phase::AwaitDuplicator, "play a relation");
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());
    auto verdict = check(z);
    if (!verdict.admissible) {
        ++strikes_;
        record(EventKind::Rejected, Player::Duplicator, std::move(z), std::nullopt, verdict.explanation);
        if (strikes_ >= options_.max_strikes) {
            finish(Player::Spoiler, "Duplicator cannot move: " + std::to_string(strikes_) + " inadmissible relations");
        }
        return verdict;
    }
    strikes_ = 0;
    const bool empty = z.empty();
    pending_ = z;
    phase_ = Phase::AwaitSpoiler;
    record(EventKind::Relation, Player::Duplicator, std::move(z), std::nullopt, "");
    if (empty) {
        finish(Player::Duplicator, "Spoiler cannot move: the relation is empty");
    }
    return verdict;
}

void GameSession::spoiler_pick(MovePair pair) {
    require_phase(Phase::AwaitSpoiler, "pick a pair");
    if (std::find(pending_.begin(), pending_.end(), pair) == pending_.end()) {
        throw GameError("pair " + to_string(pair.left) + " " + std::string(to_string(pair.direction)) + " " +
                        to_string(pair.right) + " is not in Duplicator's relation");
    }
    config_ = Configuration{pair.left, pair.right, id_ == SemanticsId::Simulation ? pair.direction : Direction::Equal};
    pending_.clear();
    record(EventKind::Pick, Player::Spoiler, {}, pair, "");
    ++played_;
    after_round();
}

void GameSession::after_round() {
    if (rounds_ && played_ == *rounds_) {
        if (depth0_key(id_, config_.left) == depth0_key(id_, config_.right)) {
            finish(Player::Duplicator, "bluff called: depth-0 observations agree");
        } else {
            finish(Player::Spoiler, "bluff called: depth-0 observations of " + to_string(config_.left) + " and " +
                                        to_string(config_.right) + " differ");
        }
        return;
    }
    phase_ = Phase::AwaitDuplicator;
    seen_.push_back(config_);
}

void GameSession::resign() {
    require_phase(Phase::AwaitDuplicator, "resign");
    record(EventKind::Resign, Player::Duplicator, {}, std::nullopt, "");
    finish(Player::Spoiler, "Duplicator resigned");
}

bool GameSession::configuration_repeats() const {
    return std::count(seen_.begin(), seen_.end(), config_) >= 2;
}

void GameSession::claim_cycle() {
    require_phase(Phase::AwaitDuplicator, "claim a cycle");
    if (rounds_) {
        throw GameError("cycles only end the infinite game");
    }
    if (!configuration_repeats()) {
        throw GameError("configuration " + to_string(config_.left) + ", " + to_string(config_.right) +
                        " has not occurred before");
    }
    record(EventKind::Cycle, Player::Duplicator, {}, std::nullopt, "");
    finish(Player::Duplicator, "configuration repeats: the play continues forever");
}

void GameSession::claim_cap(std::size_t cap) {
    require_phase(Phase::AwaitDuplicator, "stop at the round cap");
    if (rounds_) {
        throw GameError("the round cap only ends the infinite game");
    }
    if (played_ < cap) {
        throw GameError("round cap " + std::to_string(cap) + " not reached");
    }
    record(EventKind::Cap, Player::Duplicator, {}, std::nullopt, std::to_string(cap));
    finish(Player::Duplicator, "round cap " + std::to_string(cap) + " reached");
}

// --- engine players --------------------------------------------------------------

std::vector<const RelationState*> GameSession::duplicator_levels() {
    std::vector<const RelationState*> result;
    if (!rounds_) {
        const auto& chain = analysis_->chain();
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            result.push_back(&*it);
        }
        return result;
    }
    std::set<const RelationState*> seen;
    auto& levels = analysis_->levels();
    for (std::size_t m = *rounds_left(); m-- > 0;) {
        const auto* rel = &levels.at(m);
        if (seen.insert(rel).second) {
            result.push_back(rel);
        }
    }
    return result;
}

MoveRelation GameSession::restricted_kernel(const RelationState& rel, DetId i, DetId j) const {
    const auto& g = analysis_->graph();
    MoveRelation z;
    for (const auto& [u, v] : candidate_pairs(g, i, j)) {
        if (u == v) {
            continue;
        }
        const auto& su = g.node(u).state;
        const auto& sv = g.node(v).state;
        if (id_ != SemanticsId::Simulation) {
            if (rel.related(u, v)) {
                z.push_back({su, sv, Direction::Equal});
            }
            continue;
        }
        if (config_.claim != Direction::Ge && rel.related(u, v)) {
            z.push_back({su, sv, Direction::Le});
        }
        if (config_.claim != Direction::Le && rel.related(v, u)) {
            z.push_back({su, sv, Direction::Ge});
        }
    }
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());
    return z;
}

std::optional<MoveRelation> GameSession::engine_duplicator_move() {
    require_phase(Phase::AwaitDuplicator, "compute a Duplicator move");
    const std::vector<DetState> states{config_.left, config_.right};
    analysis_->ensure(states, rounds_left().value_or(0));
    const auto i = analysis_->id(config_.left);
    const auto j = analysis_->id(config_.right);
    for (const auto* rel : duplicator_levels()) {
        auto z = restricted_kernel(*rel, i, j);
        if (check(z).admissible) {
            return z;
        }
    }
    return std::nullopt;
}

bool GameSession::pair_survives(const RelationState& rel, const MovePair& pair) const {
    const auto u = analysis_->id(pair.left);
    const auto v = analysis_->id(pair.right);
    switch (pair.direction) {
    case Direction::Le:
        return rel.related(u, v);
    case Direction::Ge:
        return rel.related(v, u);
    case Direction::Equal:
        return rel.equivalent(u, v);
    }
    return true;
}

MovePair GameSession::engine_spoiler_move() {
    require_phase(Phase::AwaitSpoiler, "compute a Spoiler move");
    if (pending_.empty()) {
        throw GameError("Spoiler cannot move: the relation is empty");
    }
    std::vector<DetState> states;
    for (const auto& p : pending_) {
        states.push_back(p.left);
        states.push_back(p.right);
    }
    const std::size_t after = rounds_ ? *rounds_left() - 1 : 0;
    analysis_->ensure(states, after);

    // depth at which a pair is first refuted, among pairs that lose for Duplicator
    std::optional<std::size_t> best_depth;
    const MovePair* best = nullptr;
    for (const auto& p : pending_) {
        std::optional<std::size_t> depth;
        if (rounds_) {
            auto& levels = analysis_->levels();
            if (pair_survives(levels.at(after), p)) {
                continue;
            }
            for (std::size_t k = 0; k <= after && !depth; ++k) {
                if (!pair_survives(levels.at(k), p)) {
                    depth = k;
                }
            }
        } else {
            const auto& chain = analysis_->chain();
            if (pair_survives(chain.back(), p)) {
                continue;
            }
            for (std::size_t k = 0; k < chain.size() && !depth; ++k) {
                if (!pair_survives(chain[k], p)) {
                    depth = k;
                }
            }
        }
        if (!best || *depth < *best_depth) {
            best = &p;
            best_depth = depth;
        }
    }
    return best ? *best : pending_.front();
}

void GameSession::play_engine_turn() {
    if (phase_ == Phase::AwaitDuplicator) {
        auto z = engine_duplicator_move();
        if (!z) {
            resign();
            return;
        }
        const auto result = duplicator_move(std::move(*z));
        if (!result.admissible) {
            throw std::logic_error("engine relation rejected: " + result.explanation);
        }
        return;
    }
    if (phase_ == Phase::AwaitSpoiler) {
        spoiler_pick(engine_spoiler_move());
        return;
    }
    throw GameError("the game is over");
}

Verdict GameSession::engine_verdict() {
    const std::vector<DetState> states{config_.left, config_.right};
    const auto left = rounds_left().value_or(0);
    analysis_->ensure(states, left);
    const auto depth = rounds_ ? Depth::finite(left) : Depth::strict_infinite();
    return decide_in(*analysis_, analysis_->id(config_.left), analysis_->id(config_.right), depth);
}

Outcome play_out(GameSession& session, std::optional<std::size_t> cap) {
    const std::size_t limit = cap.value_or(2 * session.det_state_count());
    std::set<Configuration> seen;
    while (session.phase() != Phase::Finished) {
        if (!session.rounds() && session.phase() == Phase::AwaitDuplicator) {
            if (!seen.insert(session.config()).second) {
                session.claim_cycle();
                break;
            }
            if (session.rounds_played() >= limit) {
                session.claim_cap(limit);
                break;
            }
        }
        session.play_engine_turn();
    }
    return *session.outcome();
}

std::unique_ptr<GameSession> replay_transcript(SemanticsId id, std::shared_ptr<const TransitionSystem> sys,
                                               const DetState& left, const DetState& right,
                                               std::optional<std::size_t> rounds, HumanRole human_role,
                                               const std::vector<TranscriptEvent>& events, GameOptions options) {
    auto session = std::make_unique<GameSession>(id, std::move(sys), left, right, rounds, human_role, options);
    for (std::size_t k = 0; k < events.size(); ++k) {
        const auto& event = events[k];
        const auto fail = [&](const std::string& why) {
            throw GameError("transcript event " + std::to_string(k + 1) + " (" + std::string(to_string(event.kind)) +
                            ") does not replay: " + why);
        };
        if (session->phase() == Phase::Finished) {
            fail("the game is already over");
        }
        try {
            switch (event.kind) {
            case EventKind::Relation:
                if (!session->duplicator_move(event.relation).admissible) {
                    fail("relation is inadmissible");
                }
                break;
            case EventKind::Rejected:
                if (session->duplicator_move(event.relation).admissible) {
                    fail("relation is admissible");
                }
                break;
            case EventKind::Pick:
                if (!event.pick) {
                    fail("missing pair");
                }
                session->spoiler_pick(*event.pick);
                break;
            case EventKind::Resign:
                session->resign();
                break;
            case EventKind::Cycle:
                session->claim_cycle();
                break;
            case EventKind::Cap:
                session->claim_cap(std::stoul(event.note));
                break;
            }
        } catch (const GameError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
        auto expected = event;
        std::sort(expected.relation.begin(), expected.relation.end());
        expected.relation.erase(std::unique(expected.relation.begin(), expected.relation.end()),
                                expected.relation.end());
        if (!(session->transcript().back() == expected)) {
            fail("recorded round, actor, note or configuration differs");
        }
    }
    return session;
}

} // namespace gradeq
