#include "gradeq/engine.hpp"

#include "gradeq/errors.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gradeq {

// --- DetGraph ------------------------------------------------------------------

const BasicProfile<DetId>& DetGraph::profile(DetId id) const {
    const auto& node = nodes_.at(id);
    if (!node.profile) {
        throw std::logic_error("det state " + to_string(node.state) + " is on the unexpanded frontier");
    }
    return *node.profile;
}

std::optional<DetId> DetGraph::find(const DetState& state) const {
    const auto it = index_.find(state);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

DetId DetGraph::id_of(const DetState& state) const {
    const auto id = find(state);
    if (!id) {
        throw ValidationError("det state " + to_string(state) + " was not explored");
    }
    return *id;
}

DetGraph explore(SemanticsId id, const TransitionSystem& sys, std::span<const DetState> seeds,
                 const ExploreOptions& options) {
    check_instance(id, sys);
    for (const auto& seed : seeds) {
        validate_det_state(id, sys, seed);
    }

    DetGraph g;
    g.semantics_ = id;
    g.alphabet_ = alphabet(sys);
    std::map<std::vector<LabelSet>, std::uint32_t> refusal_ids;
    std::map<Rational, std::uint32_t> weight_ids;
    std::size_t cursor = 0;

    const auto intern = [&](const DetState& state, std::size_t depth) -> DetId {
        const auto [it, inserted] = g.index_.emplace(state, static_cast<DetId>(g.nodes_.size()));
        if (inserted) {
            if (g.nodes_.size() >= options.budget) {
                throw BudgetExceeded(options.budget, g.nodes_.size() + 1 - cursor);
            }
            DetNode node;
            node.state = state;
            node.depth = depth;
            g.nodes_.push_back(std::move(node));
        }
        return it->second;
    };

    for (const auto& seed : seeds) {
        g.seeds_.push_back(intern(seed, 0));
    }
    for (; cursor < g.nodes_.size(); ++cursor) {
        const std::size_t depth = g.nodes_[cursor].depth;
        if (options.max_depth && depth >= *options.max_depth) {
            g.complete_ = false;
            continue;
        }
        auto step_profile = detail::step_unchecked(id, sys, g.nodes_[cursor].state);
        BasicProfile<DetId> profile;
        std::vector<std::uint32_t> weights;
        for (auto& e : step_profile.edges) {
            const DetId target = intern(e.target, depth + 1);
            const auto [wit, unused] = weight_ids.emplace(e.weight, static_cast<std::uint32_t>(weight_ids.size()));
            weights.push_back(wit->second);
            profile.edges.push_back({e.label, target, std::move(e.weight)});
        }
        std::sort(profile.edges.begin(), profile.edges.end(), [](const auto& a, const auto& b) {
            return std::tie(a.label, a.target) < std::tie(b.label, b.target);
        });
        if (id == SemanticsId::ProbabilisticTrace) {
            // one edge per label, so sorting did not permute relative to step's label order
            g.nodes_[cursor].weight_class = std::move(weights);
        }
        const auto [rit, inserted] =
            refusal_ids.emplace(step_profile.refusals, static_cast<std::uint32_t>(refusal_ids.size()));
        if (inserted) {
            g.refusal_classes_.push_back(step_profile.refusals);
        }
        profile.refusals = std::move(step_profile.refusals);
        g.nodes_[cursor].refusal_class = rit->second;
        g.nodes_[cursor].profile = std::move(profile);
    }
    return g;
}

// --- relations -------------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t n, bool value) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {
    if (value) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                set(i, j, true);
            }
        }
    }
}

void BitMatrix::set(std::size_t i, std::size_t j, bool value) {
    auto& word = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    word = value ? (word | mask) : (word & ~mask);
}

std::size_t RelationState::num_blocks() const {
    if (mode == RelationMode::Partition) {
        return blocks.empty() ? 0 : *std::max_element(blocks.begin(), blocks.end()) + 1;
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        bool fresh = true;
        for (std::size_t j = 0; j < i && fresh; ++j) {
            fresh = !equivalent(static_cast<DetId>(i), static_cast<DetId>(j));
        }
        count += fresh ? 1 : 0;
    }
    return count;
}

namespace {

constexpr std::uint32_t kFrontierMark = 0xffffffffU;

std::vector<std::uint32_t> number_by_first_occurrence(const std::vector<std::vector<std::uint32_t>>& signatures) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> blocks;
    blocks.reserve(signatures.size());
    for (const auto& sig : signatures) {
        const auto [it, unused] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size()));
        blocks.push_back(it->second);
    }
    return blocks;
}

std::vector<std::uint32_t> signature(const DetGraph& g, const RelationState& r, DetId i) {
    const auto& node = g.node(i);
    if (!node.profile) {
        return {kFrontierMark, i};
    }
    std::vector<std::uint32_t> sig;
    const auto& edges = node.profile->edges;
    if (g.semantics() == SemanticsId::Bisimilarity) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> moves;
        for (const auto& e : edges) {
            moves.emplace_back(e.label, r.blocks[e.target]);
        }
        std::sort(moves.begin(), moves.end());
        moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
        for (const auto& [label, block] : moves) {
            sig.push_back(label);
            sig.push_back(block);
        }
        return sig;
    }
    sig.push_back(node.refusal_class);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        sig.push_back(edges[k].label);
        sig.push_back(node.weight_class.empty() ? 0 : node.weight_class[k]);
        sig.push_back(r.blocks[edges[k].target]);
    }
    return sig;
}

RelationState step_relation(const DetGraph& g, const RelationState& r, bool intersect) {
    RelationState next;
    next.mode = r.mode;
    next.level = r.level + 1;
    next.degenerate = r.degenerate;
    const auto n = static_cast<DetId>(g.size());
    if (r.mode == RelationMode::Partition) {
        std::vector<std::vector<std::uint32_t>> sigs(n);
        for (DetId i = 0; i < n; ++i) {
            auto sig = signature(g, r, i);
            if (intersect) {
                sig.insert(sig.begin(), r.blocks[i]);
            }
            sigs[i] = std::move(sig);
        }
        next.blocks = number_by_first_occurrence(sigs);
        return next;
    }
    next.order = BitMatrix(n, false);
    const auto related = [&](DetId a, DetId b) { return r.order.get(a, b); };
    for (DetId i = 0; i < n; ++i) {
        for (DetId j = 0; j < n; ++j) {
            bool value = false;
            if (i == j) {
                value = true;
            } else if (g.node(i).profile && g.node(j).profile && (!intersect || r.order.get(i, j))) {
                value = profiles_match(SemanticsId::Simulation, *g.node(i).profile, *g.node(j).profile, related);
            }
            next.order.set(i, j, value);
        }
    }
    return next;
}

} // namespace

RelationState initial_relation(const DetGraph& g, StartMode mode) {
    const auto id = g.semantics();
    RelationState r;
    if (id == SemanticsId::Simulation) {
        if (mode == StartMode::StrictInfinite) {
            throw InstanceError("strict infinite-depth mode is undefined for simulation; use depth 'limit'");
        }
        r.mode = RelationMode::Preorder;
        r.order = BitMatrix(g.size(), true);
        return r;
    }
    r.mode = RelationMode::Partition;
    if (mode == StartMode::StrictInfinite) {
        r.blocks.assign(g.size(), 0);
        r.degenerate = !has_trivial_depth0(id);
        return r;
    }
    std::vector<std::vector<std::uint32_t>> keys;
    for (const auto& node : g.nodes()) {
        keys.push_back({depth0_key(id, node.state).value});
    }
    r.blocks = number_by_first_occurrence(keys);
    return r;
}

RelationState next_level(const DetGraph& g, const RelationState& r) {
    return step_relation(g, r, false);
}

RelationState refine_once(const DetGraph& g, const RelationState& r) {
    return step_relation(g, r, true);
}

std::vector<RelationState> refine_to_fixpoint(const DetGraph& g, RelationState start) {
    std::vector<RelationState> chain;
    chain.push_back(std::move(start));
    while (true) {
        auto next = refine_once(g, chain.back());
        if (next.same_relation(chain.back())) {
            return chain;
        }
        chain.push_back(std::move(next));
    }
}

// --- LevelSequence ---------------------------------------------------------------

LevelSequence::LevelSequence(const DetGraph& g, RelationState start) : graph_(&g) {
    levels_.push_back(std::move(start));
}

void LevelSequence::compute_until(std::size_t n) {
    while (!period_end_ && levels_.size() <= n) {
        auto next = next_level(*graph_, levels_.back());
        for (std::size_t k = levels_.size(); k-- > 0;) {
            if (levels_[k].same_relation(next)) {
                cycle_start_ = k;
                period_end_ = levels_.size();
                break;
            }
        }
        if (!period_end_) {
            levels_.push_back(std::move(next));
        }
    }
}

std::size_t LevelSequence::physical(std::size_t n) const {
    if (n < levels_.size()) {
        return n;
    }
    return cycle_start_ + (n - cycle_start_) % (*period_end_ - cycle_start_);
}

const RelationState& LevelSequence::at(std::size_t n) {
    compute_until(n);
    return levels_[physical(n)];
}

std::optional<std::size_t> LevelSequence::distinguishing_depth(DetId i, DetId j,
                                                                std::optional<std::size_t> max_level) {
    for (std::size_t n = 0; !max_level || n <= *max_level; ++n) {
        compute_until(n);
        if (period_end_ && n >= *period_end_) {
            return std::nullopt;
        }
        if (!levels_[n].equivalent(i, j)) {
            return n;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> LevelSequence::directed_depth(DetId i, DetId j, std::optional<std::size_t> max_level) {
    for (std::size_t n = 0; !max_level || n <= *max_level; ++n) {
        compute_until(n);
        if (period_end_ && n >= *period_end_) {
            return std::nullopt;
        }
        if (!levels_[n].related(i, j)) {
            return n;
        }
    }
    return std::nullopt;
}

// --- Depth -----------------------------------------------------------------------

Depth parse_depth(std::string_view text) {
    if (text == "limit") {
        return Depth::limit();
    }
    if (text == "infinite" || text == "inf") {
        return Depth::strict_infinite();
    }
    std::size_t n = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, n);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ValidationError("depth must be a non-negative integer, 'limit' or 'infinite', got '" +
                              std::string(text) + "'");
    }
    return Depth::finite(n);
}

std::string to_string(const Depth& depth) {
    switch (depth.kind) {
    case Depth::Kind::Finite:
        return std::to_string(depth.rounds);
    case Depth::Kind::Limit:
        return "limit";
    case Depth::Kind::StrictInfinite:
        return "infinite";
    }
    return "?";
}

// --- Analysis --------------------------------------------------------------------

Analysis::Analysis(SemanticsId id, std::shared_ptr<const TransitionSystem> sys, std::vector<DetState> seeds,
                   ExploreOptions options, StartMode start)
    : id_(id), sys_(std::move(sys)), seeds_(std::move(seeds)), options_(options), start_(start) {
    if (start_ == StartMode::StrictInfinite && id_ == SemanticsId::Simulation) {
        throw InstanceError("strict infinite-depth mode is undefined for simulation; use depth 'limit'");
    }
    rebuild();
}

void Analysis::rebuild() {
    graph_ = explore(id_, *sys_, seeds_, options_);
    levels_.reset();
    chain_.reset();
}

void Analysis::ensure(std::span<const DetState> states, std::size_t levels_needed) {
    bool changed = false;
    for (const auto& s : states) {
        const auto found = graph_.find(s);
        const bool usable =
            found && (!options_.max_depth || graph_.node(*found).depth + levels_needed <= *options_.max_depth);
        if (!usable && std::find(seeds_.begin(), seeds_.end(), s) == seeds_.end()) {
            seeds_.push_back(s);
            changed = true;
        }
    }
    if (changed) {
        rebuild();
    }
}

LevelSequence& Analysis::levels() {
    if (!levels_) {
        levels_ = std::make_unique<LevelSequence>(graph_, initial_relation(graph_, start_));
    }
    return *levels_;
}

const std::vector<RelationState>& Analysis::chain() {
    if (!chain_) {
        chain_ = refine_to_fixpoint(graph_, initial_relation(graph_, start_));
    }
    return *chain_;
}

// --- decide ----------------------------------------------------------------------

Verdict decide_in(Analysis& analysis, DetId i, DetId j, Depth depth) {
    Verdict verdict;
    const bool strict = depth.kind == Depth::Kind::StrictInfinite;
    if (strict != (analysis.start_mode() == StartMode::StrictInfinite)) {
        throw std::logic_error("analysis start mode does not match the requested depth");
    }
    std::optional<std::size_t> split;
    if (depth.kind == Depth::Kind::Finite) {
        // levels need not be nested (Trace): the verdict is read off level n itself
        if (analysis.levels().at(depth.rounds).equivalent(i, j)) {
            verdict.kind = Verdict::Kind::EquivalentUpTo;
            verdict.depth = depth.rounds;
            return verdict;
        }
        split = analysis.levels().distinguishing_depth(i, j, depth.rounds);
    } else {
        const auto& chain = analysis.chain();
        verdict.infinite_mode_degenerate = chain.back().degenerate;
        if (chain.back().equivalent(i, j)) {
            verdict.kind = Verdict::Kind::EquivalentLimit;
            return verdict;
        }
        for (std::size_t k = 0; k < chain.size(); ++k) {
            if (!chain[k].equivalent(i, j)) {
                split = k;
                break;
            }
        }
    }
    verdict.kind = Verdict::Kind::Distinguished;
    verdict.depth = *split;
    verdict.witness = extract_witness(analysis.graph(), analysis.levels(), i, j, *split);
    return verdict;
}

namespace {

Verdict decide_seeds(SemanticsId id, const TransitionSystem& sys, std::vector<DetState> seeds, Depth depth,
                     std::size_t budget) {
    check_instance(id, sys);
    ExploreOptions options;
    options.budget = budget;
    if (depth.kind == Depth::Kind::Finite) {
        options.max_depth = depth.rounds;
    }
    const auto start = depth.kind == Depth::Kind::StrictInfinite ? StartMode::StrictInfinite : StartMode::FiniteDepth;
    // non-owning: the analysis does not outlive this call
    std::shared_ptr<const TransitionSystem> view(&sys, [](const TransitionSystem*) {});
    Analysis analysis(id, view, seeds, options, start);
    return decide_in(analysis, analysis.id(seeds[0]), analysis.id(seeds[1]), depth);
}

} // namespace

Verdict decide(SemanticsId id, const TransitionSystem& sys, StateId x, StateId y, Depth depth, std::size_t budget) {
    const auto n = num_states(sys);
    for (const auto s : {x, y}) {
        if (s >= n) {
            throw ValidationError("state " + std::to_string(s) + " out of range [0," + std::to_string(n) + ")");
        }
    }
    return decide_seeds(id, sys, {eta(id, x), eta(id, y)}, depth, budget);
}

Verdict decide_pair_detstates(SemanticsId id, const TransitionSystem& sys, const DetState& s, const DetState& t,
                              Depth depth, std::size_t budget) {
    return decide_seeds(id, sys, {s, t}, depth, budget);
}

// --- witnesses -------------------------------------------------------------------

std::size_t MoveTree::depth() const {
    std::size_t deepest = 0;
    for (const auto& r : replies) {
        deepest = std::max(deepest, r.depth());
    }
    return deepest + 1;
}

namespace {

bool covered(const LabelSet& set, const std::vector<LabelSet>& family) {
    return std::any_of(family.begin(), family.end(), [&](const LabelSet& f) { return is_subset(set, f); });
}

/// A ⊆-small refusal set that one antichain admits and the other does not.
LabelSet separating_refusal(const std::vector<LabelSet>& left, const std::vector<LabelSet>& right) {
    for (const auto& [mine, theirs] : {std::pair{&left, &right}, std::pair{&right, &left}}) {
        for (const auto& f : *mine) {
            if (covered(f, *theirs)) {
                continue;
            }
            LabelSet current = f;
            for (const auto label : f) {
                LabelSet smaller;
                std::copy_if(current.begin(), current.end(), std::back_inserter(smaller),
                             [&](Label l) { return l != label; });
                if (!covered(smaller, *theirs)) {
                    current = std::move(smaller);
                }
            }
            return current;
        }
    }
    throw std::logic_error("refusal antichains do not differ");
}

const ProfileEdge<DetId>* edge_with_label(const BasicProfile<DetId>& p, Label label) {
    for (const auto& e : p.edges) {
        if (e.label == label) {
            return &e;
        }
    }
    return nullptr;
}

Witness linear_witness(const DetGraph& g, LevelSequence& levels, DetId a, DetId b, std::size_t k) {
    const auto id = g.semantics();
    const bool prob = id == SemanticsId::ProbabilisticTrace;
    Word word;
    Rational pl = 1;
    Rational pr = 1;
    while (true) {
        if (levels.at(k).equivalent(a, b)) {
            throw std::logic_error("witness walk reached a related pair");
        }
        if (k == 0) {
            if (id == SemanticsId::Failure) {
                return FailurePairWitness{word, {}};
            }
            if (id == SemanticsId::Trace) {
                return WordWitness{word};
            }
            throw std::logic_error("depth-0 observation is constant for this semantics");
        }
        const auto& pa = g.profile(a);
        const auto& pb = g.profile(b);
        if (id == SemanticsId::Failure && g.node(a).refusal_class != g.node(b).refusal_class) {
            return FailurePairWitness{word, separating_refusal(pa.refusals, pb.refusals)};
        }
        const auto& below = levels.at(k - 1);
        bool descended = false;
        for (Label label = 0; label < g.alphabet().size() && !descended; ++label) {
            const auto* ea = edge_with_label(pa, label);
            const auto* eb = edge_with_label(pb, label);
            if (!ea && !eb) {
                continue;
            }
            if (!ea || !eb || (prob && ea->weight != eb->weight)) {
                word.push_back(label);
                if (prob) {
                    return WordProbabilityWitness{word, ea ? Rational(pl * ea->weight) : Rational(0),
                                                  eb ? Rational(pr * eb->weight) : Rational(0)};
                }
                return WordWitness{word};
            }
            if (!below.equivalent(ea->target, eb->target)) {
                word.push_back(label);
                if (prob) {
                    pl *= ea->weight;
                    pr *= eb->weight;
                }
                a = ea->target;
                b = eb->target;
                --k;
                descended = true;
            }
        }
        if (!descended) {
            throw std::logic_error("profiles match one level down");
        }
    }
}

MoveTree challenge_tree(const DetGraph& g, LevelSequence& levels, DetId a, DetId b, std::size_t k,
                        std::optional<Side> fixed) {
    if (k == 0) {
        throw std::logic_error("branching-time levels start total");
    }
    const auto& below = levels.at(k - 1);
    for (const Side side : {Side::Left, Side::Right}) {
        if (fixed && side != *fixed) {
            continue;
        }
        const DetId from = side == Side::Left ? a : b;
        const DetId other = side == Side::Left ? b : a;
        for (const auto& e : g.profile(from).edges) {
            std::vector<DetId> answers;
            for (const auto& f : g.profile(other).edges) {
                if (f.label == e.label) {
                    answers.push_back(f.target);
                }
            }
            std::sort(answers.begin(), answers.end(),
                      [&](DetId x, DetId y) { return g.node(x).state < g.node(y).state; });
            const bool refuted = std::none_of(answers.begin(), answers.end(),
                                              [&](DetId f) { return below.related(e.target, f); });
            if (!refuted) {
                continue;
            }
            MoveTree tree;
            tree.left = g.node(a).state;
            tree.right = g.node(b).state;
            tree.side = side;
            tree.label = e.label;
            tree.chosen = g.node(e.target).state;
            for (const DetId f : answers) {
                tree.replies.push_back(side == Side::Left ? challenge_tree(g, levels, e.target, f, k - 1, fixed)
                                                          : challenge_tree(g, levels, f, e.target, k - 1, fixed));
            }
            return tree;
        }
    }
    throw std::logic_error("no refuting challenge at this level");
}

} // namespace

Witness extract_witness(const DetGraph& g, LevelSequence& levels, DetId i, DetId j, std::size_t level) {
    switch (g.semantics()) {
    case SemanticsId::Bisimilarity:
        if (levels.at(level).equivalent(i, j)) {
            throw ValidationError("pair is related at level " + std::to_string(level));
        }
        return challenge_tree(g, levels, i, j, level, std::nullopt);
    case SemanticsId::Simulation: {
        const auto& rel = levels.at(level);
        if (!rel.related(i, j)) {
            return SimulationWitness{Side::Left, challenge_tree(g, levels, i, j, level, Side::Left)};
        }
        if (!rel.related(j, i)) {
            return SimulationWitness{Side::Right, challenge_tree(g, levels, i, j, level, Side::Right)};
        }
        throw ValidationError("pair is related at level " + std::to_string(level));
    }
    default:
        if (levels.at(level).equivalent(i, j)) {
            throw ValidationError("pair is related at level " + std::to_string(level));
        }
        return linear_witness(g, levels, i, j, level);
    }
}

bool replay_move_tree(const LabelledTransitionSystem& lts, const MoveTree& tree, std::optional<Side> fixed_side) {
    if (!tree.left.is_single() || !tree.right.is_single() || !tree.chosen.is_single()) {
        return false;
    }
    if (fixed_side && tree.side != *fixed_side) {
        return false;
    }
    const StateId from = tree.side == Side::Left ? tree.left.as_single() : tree.right.as_single();
    const StateId other = tree.side == Side::Left ? tree.right.as_single() : tree.left.as_single();
    if (from >= lts.num_states() || other >= lts.num_states()) {
        return false;
    }
    const auto moves = lts.successors(from);
    const bool real = std::any_of(moves.begin(), moves.end(), [&](const Transition& t) {
        return t.label == tree.label && t.target == tree.chosen.as_single();
    });
    if (!real) {
        return false;
    }
    std::vector<StateId> answers;
    for (const auto& t : lts.successors(other)) {
        if (t.label == tree.label) {
            answers.push_back(t.target);
        }
    }
    if (answers.size() != tree.replies.size()) {
        return false;
    }
    for (std::size_t k = 0; k < answers.size(); ++k) {
        const auto& reply = tree.replies[k];
        const auto expected_left = tree.side == Side::Left ? tree.chosen : DetState::single(answers[k]);
        const auto expected_right = tree.side == Side::Left ? DetState::single(answers[k]) : tree.chosen;
        if (reply.left != expected_left || reply.right != expected_right) {
            return false;
        }
        if (!replay_move_tree(lts, reply, fixed_side)) {
            return false;
        }
    }
    return true;
}

// --- strategies and export -------------------------------------------------------

std::vector<std::pair<DetId, DetId>> candidate_pairs(const DetGraph& g, DetId i, DetId j) {
    std::vector<std::pair<DetId, DetId>> result;
    std::set<std::pair<DetId, DetId>> seen;
    const auto& pi = g.profile(i);
    const auto& pj = g.profile(j);
    for (Label label = 0; label < g.alphabet().size(); ++label) {
        for (const auto& e : pi.edges) {
            if (e.label != label) {
                continue;
            }
            for (const auto& f : pj.edges) {
                if (f.label == label && seen.emplace(e.target, f.target).second) {
                    result.emplace_back(e.target, f.target);
                }
            }
        }
    }
    return result;
}

std::vector<std::pair<DetState, DetState>> extract_duplicator_strategy(const DetGraph& g, const RelationState& r) {
    std::set<std::pair<DetId, DetId>> pairs;
    const auto n = static_cast<DetId>(g.size());
    for (DetId i = 0; i < n; ++i) {
        for (DetId j = 0; j < n; ++j) {
            if (!r.related(i, j) || !g.node(i).profile || !g.node(j).profile) {
                continue;
            }
            for (const auto& [u, v] : candidate_pairs(g, i, j)) {
                if (r.related(u, v)) {
                    pairs.emplace(u, v);
                }
            }
        }
    }
    std::vector<std::pair<DetState, DetState>> result;
    for (const auto& [u, v] : pairs) {
        result.emplace_back(g.node(u).state, g.node(v).state);
    }
    return result;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

std::string label_set_string(const DetGraph& g, const LabelSet& set) {
    std::string out = "{";
    for (std::size_t k = 0; k < set.size(); ++k) {
        out += (k ? "," : "") + g.alphabet()[set[k]];
    }
    return out + "}";
}

} // namespace

std::string determinization_to_dot(const DetGraph& g) {
    std::ostringstream out;
    out << "digraph determinization {\n  rankdir=LR;\n";
    const std::set<DetId> seeds(g.seeds().begin(), g.seeds().end());
    for (DetId i = 0; i < g.size(); ++i) {
        const auto& node = g.node(i);
        std::string label = to_string(node.state);
        if (node.profile && g.semantics() == SemanticsId::Failure) {
            label += "\\nrefuses";
            for (const auto& set : node.profile->refusals) {
                label += " " + label_set_string(g, set);
            }
        }
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\"";
        if (seeds.count(i)) {
            out << ", shape=doublecircle";
        }
        if (!node.profile) {
            out << ", style=dashed";
        }
        out << "];\n";
    }
    for (DetId i = 0; i < g.size(); ++i) {
        if (!g.node(i).profile) {
            continue;
        }
        for (const auto& e : g.node(i).profile->edges) {
            std::string label = g.alphabet()[e.label];
            if (g.semantics() == SemanticsId::ProbabilisticTrace) {
                label += " " + to_string(e.weight);
            }
            out << "  n" << i << " -> n" << e.target << " [label=\"" << dot_escape(label) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace gradeq
