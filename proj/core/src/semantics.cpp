#include "gradeq/semantics.hpp"

#include "gradeq/errors.hpp"

#include <map>
#include <set>

namespace gradeq {

std::string_view to_string(SemanticsId id) {
    switch (id) {
    case SemanticsId::Bisimilarity:
        return "bisimilarity";
    case SemanticsId::Trace:
        return "trace";
    case SemanticsId::SerialTrace:
        return "serial-trace";
    case SemanticsId::ProbabilisticTrace:
        return "probabilistic-trace";
    case SemanticsId::Simulation:
        return "simulation";
    case SemanticsId::Failure:
        return "failure";
    }
    return "?";
}

std::optional<SemanticsId> parse_semantics(std::string_view name) {
    static const std::map<std::string_view, SemanticsId> names = {
        {"bisimilarity", SemanticsId::Bisimilarity},
        {"bisim", SemanticsId::Bisimilarity},
        {"trace", SemanticsId::Trace},
        {"serial-trace", SemanticsId::SerialTrace},
        {"serial", SemanticsId::SerialTrace},
        {"probabilistic-trace", SemanticsId::ProbabilisticTrace},
        {"prob", SemanticsId::ProbabilisticTrace},
        {"simulation", SemanticsId::Simulation},
        {"sim", SemanticsId::Simulation},
        {"failure", SemanticsId::Failure},
        {"failures", SemanticsId::Failure},
    };
    const auto it = names.find(name);
    if (it == names.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool has_trivial_depth0(SemanticsId id) {
    return id != SemanticsId::Trace && id != SemanticsId::Failure;
}

bool supports_strict_infinite(SemanticsId id) {
    return id == SemanticsId::Bisimilarity || id == SemanticsId::SerialTrace ||
           id == SemanticsId::ProbabilisticTrace;
}

void check_instance(SemanticsId id, const TransitionSystem& sys) {
    const bool is_pts = std::holds_alternative<ProbabilisticTransitionSystem>(sys);
    if (id == SemanticsId::ProbabilisticTrace) {
        if (!is_pts) {
            throw InstanceError("probabilistic-trace semantics needs a probabilistic transition system");
        }
        return;
    }
    if (is_pts) {
        throw InstanceError(std::string(to_string(id)) + " semantics needs a labelled transition system");
    }
    if (id == SemanticsId::SerialTrace) {
        const auto dead = deadlock_states(std::get<LabelledTransitionSystem>(sys));
        if (!dead.empty()) {
            throw InstanceError("serial-trace semantics needs a serial LTS; state " + std::to_string(dead.front()) +
                                " is a deadlock");
        }
    }
}

// --- DetState ------------------------------------------------------------------

DetState DetState::single(StateId state) {
    DetState d;
    d.value_ = Single{state};
    return d;
}

DetState DetState::set(std::vector<StateId> states) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    DetState d;
    d.value_ = Set{std::move(states)};
    return d;
}

DetState DetState::dist(std::vector<std::pair<StateId, Rational>> weights) {
    std::map<StateId, Rational> merged;
    for (auto& [state, weight] : weights) {
        merged[state] += weight;
    }
    Dist dist;
    for (auto& [state, weight] : merged) {
        if (weight != 0) {
            dist.weights.emplace_back(state, weight);
        }
    }
    DetState d;
    d.value_ = std::move(dist);
    return d;
}

DetState DetState::dirac(StateId state) {
    return dist({{state, Rational(1)}});
}

std::vector<StateId> DetState::support() const {
    if (is_single()) {
        return {as_single()};
    }
    if (is_set()) {
        return as_set();
    }
    std::vector<StateId> result;
    for (const auto& [state, weight] : as_dist()) {
        result.push_back(state);
    }
    return result;
}

std::string to_string(const DetState& state) {
    if (state.is_single()) {
        return std::to_string(state.as_single());
    }
    std::string out = "{";
    bool first = true;
    if (state.is_set()) {
        for (const auto x : state.as_set()) {
            out += (first ? "" : ",") + std::to_string(x);
            first = false;
        }
    } else {
        for (const auto& [x, w] : state.as_dist()) {
            out += (first ? "" : ", ") + std::to_string(x) + ":" + to_string(w);
            first = false;
        }
    }
    return out + "}";
}

void validate_det_state(SemanticsId id, const TransitionSystem& sys, const DetState& state) {
    const auto n = num_states(sys);
    for (const auto x : state.support()) {
        if (x >= n) {
            throw ValidationError("state " + std::to_string(x) + " out of range [0," + std::to_string(n) + ")");
        }
    }
    switch (id) {
    case SemanticsId::Bisimilarity:
    case SemanticsId::Simulation:
        if (!state.is_single()) {
            throw ValidationError(std::string(to_string(id)) + " positions are single states, got " +
                                  to_string(state));
        }
        return;
    case SemanticsId::Trace:
    case SemanticsId::Failure:
        if (!state.is_set()) {
            throw ValidationError(std::string(to_string(id)) + " positions are state sets, got " + to_string(state));
        }
        return;
    case SemanticsId::SerialTrace:
        if (!state.is_set() || state.as_set().empty()) {
            throw ValidationError("serial-trace positions are non-empty state sets, got " + to_string(state));
        }
        return;
    case SemanticsId::ProbabilisticTrace: {
        if (!state.is_dist() || state.as_dist().empty()) {
            throw ValidationError("probabilistic-trace positions are distributions, got " + to_string(state));
        }
        Rational sum = 0;
        for (const auto& [x, w] : state.as_dist()) {
            if (w <= 0) {
                throw ValidationError("distribution weights must be positive in " + to_string(state));
            }
            sum += w;
        }
        if (sum != 1) {
            throw ValidationError("distribution " + to_string(state) + " sums to " + to_string(sum));
        }
        return;
    }
    }
}

DetState eta(SemanticsId id, StateId state) {
    switch (id) {
    case SemanticsId::Bisimilarity:
    case SemanticsId::Simulation:
        return DetState::single(state);
    case SemanticsId::ProbabilisticTrace:
        return DetState::dirac(state);
    default:
        return DetState::set({state});
    }
}

// --- step ----------------------------------------------------------------------

std::vector<LabelSet> maximal_sets(std::vector<LabelSet> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<LabelSet> result;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
            dominated = i != j && sets[i].size() < sets[j].size() && is_subset(sets[i], sets[j]);
        }
        if (!dominated) {
            result.push_back(sets[i]);
        }
    }
    return result;
}

bool is_subset(const LabelSet& inner, const LabelSet& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

namespace {

SuccessorProfile step_lts(SemanticsId id, const LabelledTransitionSystem& lts, const DetState& state) {
    SuccessorProfile profile;
    if (state.is_single()) {
        for (const auto& t : lts.successors(state.as_single())) {
            profile.edges.push_back({t.label, DetState::single(t.target), Rational(0)});
        }
        return profile;
    }
    const auto& members = state.as_set();
    const auto labels = lts.alphabet().size();
    std::vector<std::vector<StateId>> targets(labels);
    std::vector<LabelSet> refusals;
    for (const auto x : members) {
        for (const auto& t : lts.successors(x)) {
            targets[t.label].push_back(t.target);
        }
        if (id == SemanticsId::Failure) {
            const auto enabled = lts.enabled(x);
            LabelSet refused;
            for (Label a = 0; a < labels; ++a) {
                if (!std::binary_search(enabled.begin(), enabled.end(), a)) {
                    refused.push_back(a);
                }
            }
            refusals.push_back(std::move(refused));
        }
    }
    for (Label a = 0; a < labels; ++a) {
        if (id == SemanticsId::SerialTrace && targets[a].empty()) {
            continue;
        }
        profile.edges.push_back({a, DetState::set(std::move(targets[a])), Rational(0)});
    }
    if (id == SemanticsId::Failure) {
        profile.refusals = maximal_sets(std::move(refusals));
    }
    return profile;
}

SuccessorProfile step_pts(const ProbabilisticTransitionSystem& pts, const DetState& state) {
    const auto labels = pts.alphabet().size();
    std::vector<Rational> mass(labels);
    std::vector<std::vector<std::pair<StateId, Rational>>> joint(labels);
    for (const auto& [x, w] : state.as_dist()) {
        for (const auto& e : pts.row(x)) {
            const Rational p = w * e.weight;
            mass[e.label] += p;
            joint[e.label].emplace_back(e.target, p);
        }
    }
    SuccessorProfile profile;
    for (Label a = 0; a < labels; ++a) {
        if (mass[a] == 0) {
            continue;
        }
        for (auto& [target, p] : joint[a]) {
            p /= mass[a];
        }
        profile.edges.push_back({a, DetState::dist(std::move(joint[a])), mass[a]});
    }
    return profile;
}

} // namespace

SuccessorProfile step(SemanticsId id, const TransitionSystem& sys, const DetState& state) {
    check_instance(id, sys);
    validate_det_state(id, sys, state);
    return detail::step_unchecked(id, sys, state);
}

SuccessorProfile detail::step_unchecked(SemanticsId id, const TransitionSystem& sys, const DetState& state) {
    if (id == SemanticsId::ProbabilisticTrace) {
        return step_pts(std::get<ProbabilisticTransitionSystem>(sys), state);
    }
    return step_lts(id, std::get<LabelledTransitionSystem>(sys), state);
}

Depth0Key depth0_key(SemanticsId id, const DetState& state) {
    if (has_trivial_depth0(id)) {
        return Depth0Key{0};
    }
    return Depth0Key{static_cast<std::uint8_t>(state.as_set().empty() ? 0 : 1)};
}

std::vector<DetState> continuations(const SuccessorProfile& profile) {
    std::vector<DetState> result;
    for (const auto& e : profile.edges) {
        result.push_back(e.target);
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

} // namespace gradeq
