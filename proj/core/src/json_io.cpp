#include "gradeq/json_io.hpp"

#include "gradeq/errors.hpp"
#include "gradeq/expr.hpp"

namespace gradeq {

namespace {

Json word_json(const Word& word, const std::vector<std::string>& alphabet) {
    Json out = Json::array();
    for (const auto a : word) {
        out.push_back(alphabet.at(a));
    }
    return out;
}

Json tree_json(const MoveTree& tree, const std::vector<std::string>& alphabet) {
    Json replies = Json::array();
    for (const auto& r : tree.replies) {
        replies.push_back(tree_json(r, alphabet));
    }
    return {{"left", to_string(tree.left)},
            {"right", to_string(tree.right)},
            {"side", tree.side == Side::Left ? "left" : "right"},
            {"label", alphabet.at(tree.label)},
            {"chosen", to_string(tree.chosen)},
            {"replies", std::move(replies)}};
}

Direction parse_direction(const std::string& text) {
    if (text == "=") {
        return Direction::Equal;
    }
    if (text == "<=") {
        return Direction::Le;
    }
    if (text == ">=") {
        return Direction::Ge;
    }
    throw ValidationError("unknown direction '" + text + "'");
}

Player parse_player(const std::string& text) {
    if (text == "spoiler") {
        return Player::Spoiler;
    }
    if (text == "duplicator") {
        return Player::Duplicator;
    }
    throw ValidationError("unknown player '" + text + "'");
}

} // namespace

Json witness_to_json(const Witness& witness, const std::vector<std::string>& alphabet) {
    return std::visit(
        [&](const auto& w) -> Json {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, WordWitness>) {
                return {{"kind", "word"}, {"word", word_json(w.word, alphabet)}};
            } else if constexpr (std::is_same_v<T, WordProbabilityWitness>) {
                return {{"kind", "word_probability"},
                        {"word", word_json(w.word, alphabet)},
                        {"left", to_string(w.left)},
                        {"right", to_string(w.right)}};
            } else if constexpr (std::is_same_v<T, FailurePairWitness>) {
                return {{"kind", "failure_pair"},
                        {"word", word_json(w.word, alphabet)},
                        {"refusal", word_json(w.refusal, alphabet)}};
            } else if constexpr (std::is_same_v<T, MoveTree>) {
                return {{"kind", "move_tree"}, {"tree", tree_json(w, alphabet)}};
            } else {
                return {{"kind", "simulation_chain"},
                        {"spoiler_side", w.spoiler_side == Side::Left ? "left" : "right"},
                        {"tree", tree_json(w.tree, alphabet)}};
            }
        },
        witness);
}

Json verdict_to_json(const Verdict& verdict, const std::vector<std::string>& alphabet) {
    Json out;
    switch (verdict.kind) {
    case Verdict::Kind::EquivalentUpTo:
        out["result"] = "equivalent_up_to";
        break;
    case Verdict::Kind::EquivalentLimit:
        out["result"] = "equivalent_limit";
        break;
    case Verdict::Kind::Distinguished:
        out["result"] = "distinguished";
        break;
    }
    out["equivalent"] = verdict.equivalent();
    if (verdict.kind != Verdict::Kind::EquivalentLimit) {
        out["depth"] = verdict.depth;
    }
    out["witness"] = verdict.witness ? witness_to_json(*verdict.witness, alphabet) : Json(nullptr);
    out["infinite_mode_degenerate"] = verdict.infinite_mode_degenerate;
    return out;
}

Json determinization_to_json(const DetGraph& g) {
    Json states = Json::array();
    for (DetId i = 0; i < g.size(); ++i) {
        const auto& node = g.node(i);
        Json entry{{"id", i}, {"state", to_string(node.state)}, {"depth", node.depth}, {"expanded", node.profile.has_value()}};
        if (node.profile) {
            Json edges = Json::array();
            for (const auto& e : node.profile->edges) {
                Json edge{{"label", g.alphabet().at(e.label)}, {"target", e.target}};
                if (g.semantics() == SemanticsId::ProbabilisticTrace) {
                    edge["weight"] = to_string(e.weight);
                }
                edges.push_back(std::move(edge));
            }
            entry["edges"] = std::move(edges);
            if (g.semantics() == SemanticsId::Failure) {
                Json refusals = Json::array();
                for (const auto& set : node.profile->refusals) {
                    refusals.push_back(word_json(set, g.alphabet()));
                }
                entry["refusals"] = std::move(refusals);
            }
        }
        states.push_back(std::move(entry));
    }
    return {{"semantics", std::string(to_string(g.semantics()))},
            {"alphabet", g.alphabet()},
            {"seeds", g.seeds()},
            {"complete", g.complete()},
            {"states", std::move(states)}};
}

Json system_to_json(const TransitionSystem& sys) {
    Json transitions = Json::array();
    Json out;
    if (const auto* lts = std::get_if<LabelledTransitionSystem>(&sys)) {
        for (const auto& t : lts->transitions()) {
            transitions.push_back({{"source", t.source}, {"label", lts->alphabet()[t.label]}, {"target", t.target}});
        }
        out = {{"kind", "lts"}, {"initial", lts->initial()}};
    } else {
        const auto& pts = std::get<ProbabilisticTransitionSystem>(sys);
        for (StateId x = 0; x < pts.num_states(); ++x) {
            for (const auto& e : pts.row(x)) {
                transitions.push_back({{"source", x},
                                       {"label", pts.alphabet()[e.label]},
                                       {"target", e.target},
                                       {"weight", to_string(e.weight)}});
            }
        }
        out = {{"kind", "pts"}};
    }
    out["states"] = num_states(sys);
    out["alphabet"] = alphabet(sys);
    out["transitions"] = std::move(transitions);
    return out;
}

Json move_pair_to_json(const MovePair& pair) {
    return {{"left", to_string(pair.left)}, {"right", to_string(pair.right)}, {"direction", to_string(pair.direction)}};
}

MovePair move_pair_from_json(SemanticsId id, const Json& j) {
    if (!j.is_object() || !j.contains("left") || !j.contains("right")) {
        throw ValidationError("a pair needs 'left' and 'right'");
    }
    MovePair pair;
    pair.left = parse_det_state(id, j.at("left").get<std::string>());
    pair.right = parse_det_state(id, j.at("right").get<std::string>());
    pair.direction = j.contains("direction") ? parse_direction(j.at("direction").get<std::string>())
                                             : Direction::Equal;
    return pair;
}

Json relation_to_json(const MoveRelation& z) {
    Json out = Json::array();
    for (const auto& p : z) {
        out.push_back(move_pair_to_json(p));
    }
    return out;
}

MoveRelation relation_from_json(SemanticsId id, const Json& j) {
    if (j.is_string()) {
        return parse_relation(id, j.get<std::string>());
    }
    if (!j.is_array()) {
        throw ValidationError("a relation is an array of pairs or a relation expression");
    }
    MoveRelation z;
    for (const auto& p : j) {
        z.push_back(move_pair_from_json(id, p));
    }
    return z;
}

Json configuration_to_json(const Configuration& c) {
    return {{"left", to_string(c.left)}, {"right", to_string(c.right)}, {"claim", to_string(c.claim)}};
}

Json transcript_to_json(const std::vector<TranscriptEvent>& events) {
    Json out = Json::array();
    for (const auto& e : events) {
        Json entry{{"round", e.round},
                   {"actor", to_string(e.actor)},
                   {"kind", to_string(e.kind)},
                   {"config", configuration_to_json(e.config)}};
        if (e.kind == EventKind::Relation || e.kind == EventKind::Rejected) {
            entry["relation"] = relation_to_json(e.relation);
        }
        if (e.pick) {
            entry["pick"] = move_pair_to_json(*e.pick);
        }
        if (!e.note.empty()) {
            entry["note"] = e.note;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<TranscriptEvent> transcript_from_json(SemanticsId id, const Json& j) {
    if (!j.is_array()) {
        throw ValidationError("a transcript is an array of events");
    }
    std::vector<TranscriptEvent> events;
    for (const auto& entry : j) {
        TranscriptEvent e;
        e.round = entry.at("round").get<std::size_t>();
        e.actor = parse_player(entry.at("actor").get<std::string>());
        const auto kind = parse_event_kind(entry.at("kind").get<std::string>());
        if (!kind) {
            throw ValidationError("unknown event kind '" + entry.at("kind").get<std::string>() + "'");
        }
        e.kind = *kind;
        if (entry.contains("relation")) {
            e.relation = relation_from_json(id, entry.at("relation"));
        }
        if (entry.contains("pick")) {
            e.pick = move_pair_from_json(id, entry.at("pick"));
        }
        e.note = entry.value("note", "");
        const auto& c = entry.at("config");
        e.config.left = parse_det_state(id, c.at("left").get<std::string>());
        e.config.right = parse_det_state(id, c.at("right").get<std::string>());
        e.config.claim = parse_direction(c.value("claim", "="));
        events.push_back(std::move(e));
    }
    return events;
}

} // namespace gradeq
