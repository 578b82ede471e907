#include "gradeq/oracle.hpp"

#include "gradeq/errors.hpp"

#include <algorithm>
#include <functional>

namespace gradeq::oracle {

Oracle::Oracle(SemanticsId id, const TransitionSystem& sys) : id_(id), sys_(&sys) {
    check_instance(id, sys);
}

ValueId Oracle::intern(Node node) {
    const auto it = ids_.find(node);
    if (it != ids_.end()) {
        return it->second;
    }
    const auto id = static_cast<ValueId>(nodes_.size());
    nodes_.push_back(node);
    ids_.emplace(std::move(node), id);
    return id;
}

ValueId Oracle::gamma_n(const DetState& state, std::size_t n) {
    const auto key = std::make_pair(state, n);
    if (const auto it = memo_.find(key); it != memo_.end()) {
        return it->second;
    }
    Node node;
    node.depth = n;
    if (n == 0) {
        node.ints.push_back(depth0_key(id_, state).value);
    } else {
        auto profile = step(id_, *sys_, state);
        std::vector<std::pair<std::uint32_t, ValueId>> moves;
        for (const auto& e : profile.edges) {
            moves.emplace_back(e.label, gamma_n(e.target, n - 1));
            if (id_ == SemanticsId::ProbabilisticTrace) {
                node.weights.push_back(e.weight);
            }
        }
        if (id_ == SemanticsId::Bisimilarity || id_ == SemanticsId::Simulation) {
            std::sort(moves.begin(), moves.end());
            moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
        }
        if (id_ == SemanticsId::Simulation) {
            std::vector<std::pair<std::uint32_t, ValueId>> maximal;
            for (const auto& m : moves) {
                const bool dominated = std::any_of(moves.begin(), moves.end(), [&](const auto& o) {
                    return o.first == m.first && o.second != m.second && leq(m.second, o.second);
                });
                if (!dominated) {
                    maximal.push_back(m);
                }
            }
            moves = std::move(maximal);
        }
        for (const auto& [label, child] : moves) {
            node.ints.push_back(label);
            node.ints.push_back(child);
        }
        node.refusals = std::move(profile.refusals);
    }
    const auto value = intern(std::move(node));
    memo_.emplace(key, value);
    return value;
}

bool Oracle::leq(ValueId v, ValueId w) {
    if (v == w) {
        return true;
    }
    const auto key = std::make_pair(v, w);
    if (const auto it = leq_memo_.find(key); it != leq_memo_.end()) {
        return it->second;
    }
    // copies: recursive calls may grow nodes_
    const Node a = nodes_.at(v);
    const Node b = nodes_.at(w);
    if (a.depth != b.depth) {
        throw std::logic_error("comparing oracle values of different depth");
    }
    bool result = true;
    if (a.depth == 0) {
        result = a.ints == b.ints;
    } else {
        for (std::size_t k = 0; k < a.ints.size() && result; k += 2) {
            bool answered = false;
            for (std::size_t m = 0; m < b.ints.size() && !answered; m += 2) {
                answered = a.ints[k] == b.ints[m] && leq(a.ints[k + 1], b.ints[m + 1]);
            }
            result = answered;
        }
    }
    leq_memo_.emplace(key, result);
    return result;
}

std::set<Word> trace_set(const LabelledTransitionSystem& lts, const std::vector<StateId>& states, std::size_t n) {
    std::set<Word> result;
    Word word;
    std::function<void(StateId)> walk = [&](StateId x) {
        if (word.size() == n) {
            result.insert(word);
            return;
        }
        for (const auto& t : lts.successors(x)) {
            word.push_back(t.label);
            walk(t.target);
            word.pop_back();
        }
    };
    for (const auto x : states) {
        walk(x);
    }
    return result;
}

std::map<Word, Rational> word_distribution(const ProbabilisticTransitionSystem& pts, const DetState& dist,
                                           std::size_t n) {
    std::map<std::pair<Word, StateId>, Rational> layer;
    for (const auto& [x, w] : dist.as_dist()) {
        layer[{Word{}, x}] += w;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::map<std::pair<Word, StateId>, Rational> next;
        for (const auto& [key, p] : layer) {
            for (const auto& e : pts.row(key.second)) {
                Word word = key.first;
                word.push_back(e.label);
                next[{std::move(word), e.target}] += p * e.weight;
            }
        }
        layer = std::move(next);
    }
    std::map<Word, Rational> result;
    for (const auto& [key, p] : layer) {
        result[key.first] += p;
    }
    return result;
}

namespace {

LabelSet refused(const LabelledTransitionSystem& lts, StateId x) {
    const auto enabled = lts.enabled(x);
    LabelSet result;
    for (Label a = 0; a < lts.alphabet().size(); ++a) {
        if (!std::binary_search(enabled.begin(), enabled.end(), a)) {
            result.push_back(a);
        }
    }
    return result;
}

} // namespace

std::map<Word, std::vector<LabelSet>> failure_pairs(const LabelledTransitionSystem& lts,
                                                    const std::vector<StateId>& states, std::size_t n) {
    std::map<Word, std::vector<LabelSet>> result;
    std::set<std::pair<Word, StateId>> layer;
    for (const auto x : states) {
        layer.emplace(Word{}, x);
    }
    for (std::size_t k = 0; k + 1 <= n; ++k) {
        for (const auto& [word, x] : layer) {
            result[word].push_back(refused(lts, x));
        }
        std::set<std::pair<Word, StateId>> next;
        for (const auto& [word, x] : layer) {
            for (const auto& t : lts.successors(x)) {
                Word longer = word;
                longer.push_back(t.label);
                next.emplace(std::move(longer), t.target);
            }
        }
        layer = std::move(next);
    }
    for (auto& [word, sets] : result) {
        sets = maximal_sets(std::move(sets));
    }
    return result;
}

bool is_failure_pair(const LabelledTransitionSystem& lts, const std::vector<StateId>& states, const Word& word,
                     const LabelSet& refusal) {
    std::set<StateId> current(states.begin(), states.end());
    for (const auto label : word) {
        std::set<StateId> next;
        for (const auto x : current) {
            for (const auto& t : lts.successors(x)) {
                if (t.label == label) {
                    next.insert(t.target);
                }
            }
        }
        current = std::move(next);
    }
    return std::any_of(current.begin(), current.end(), [&](StateId x) {
        const auto enabled = lts.enabled(x);
        return std::none_of(refusal.begin(), refusal.end(),
                            [&](Label a) { return std::binary_search(enabled.begin(), enabled.end(), a); });
    });
}

namespace {

BitMatrix simulation_round(const LabelledTransitionSystem& lts, const BitMatrix& r) {
    const auto n = lts.num_states();
    BitMatrix next(n, false);
    for (StateId x = 0; x < n; ++x) {
        for (StateId y = 0; y < n; ++y) {
            bool ok = true;
            for (const auto& t : lts.successors(x)) {
                bool answered = false;
                for (const auto& u : lts.successors(y)) {
                    answered = answered || (u.label == t.label && r.get(t.target, u.target));
                }
                if (!answered) {
                    ok = false;
                    break;
                }
            }
            next.set(x, y, ok);
        }
    }
    return next;
}

} // namespace

BitMatrix naive_simulation(const LabelledTransitionSystem& lts, std::size_t n) {
    BitMatrix r(lts.num_states(), true);
    for (std::size_t k = 0; k < n; ++k) {
        r = simulation_round(lts, r);
    }
    return r;
}

BitMatrix simulation_fixpoint(const LabelledTransitionSystem& lts, std::size_t* iterations) {
    BitMatrix r(lts.num_states(), true);
    std::size_t rounds = 0;
    while (true) {
        auto next = simulation_round(lts, r);
        if (next == r) {
            break;
        }
        r = std::move(next);
        ++rounds;
    }
    if (iterations) {
        *iterations = rounds;
    }
    return r;
}

bool witness_is_valid(SemanticsId id, const TransitionSystem& sys, const DetState& s, const DetState& t,
                      const Witness& witness) {
    if (const auto* w = std::get_if<WordWitness>(&witness)) {
        if (id != SemanticsId::Trace && id != SemanticsId::SerialTrace) {
            return false;
        }
        const auto& lts = std::get<LabelledTransitionSystem>(sys);
        const bool left = trace_set(lts, s.as_set(), w->word.size()).count(w->word) > 0;
        const bool right = trace_set(lts, t.as_set(), w->word.size()).count(w->word) > 0;
        return left != right;
    }
    if (const auto* w = std::get_if<WordProbabilityWitness>(&witness)) {
        if (id != SemanticsId::ProbabilisticTrace) {
            return false;
        }
        const auto& pts = std::get<ProbabilisticTransitionSystem>(sys);
        const auto lookup = [&](const DetState& d) {
            const auto dist = word_distribution(pts, d, w->word.size());
            const auto it = dist.find(w->word);
            return it == dist.end() ? Rational(0) : it->second;
        };
        return lookup(s) == w->left && lookup(t) == w->right && w->left != w->right;
    }
    if (const auto* w = std::get_if<FailurePairWitness>(&witness)) {
        if (id != SemanticsId::Failure) {
            return false;
        }
        const auto& lts = std::get<LabelledTransitionSystem>(sys);
        return is_failure_pair(lts, s.as_set(), w->word, w->refusal) !=
               is_failure_pair(lts, t.as_set(), w->word, w->refusal);
    }
    if (const auto* w = std::get_if<MoveTree>(&witness)) {
        return id == SemanticsId::Bisimilarity && w->left == s && w->right == t &&
               replay_move_tree(std::get<LabelledTransitionSystem>(sys), *w);
    }
    const auto& w = std::get<SimulationWitness>(witness);
    return id == SemanticsId::Simulation && w.tree.left == s && w.tree.right == t &&
           replay_move_tree(std::get<LabelledTransitionSystem>(sys), w.tree, w.spoiler_side);
}

} // namespace gradeq::oracle
