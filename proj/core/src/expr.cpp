#include "gradeq/expr.hpp"

#include "gradeq/errors.hpp"

#include <charconv>

namespace gradeq {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

StateId parse_index(std::string_view text, std::string_view whole) {
    text = trim(text);
    StateId value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ValidationError("bad state index '" + std::string(text) + "' in '" + std::string(whole) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = text.find(sep);
        parts.push_back(text.substr(0, pos));
        if (pos == std::string_view::npos) {
            return parts;
        }
        text.remove_prefix(pos + 1);
    }
}

} // namespace

DetState parse_det_state(SemanticsId id, std::string_view text) {
    const auto whole = text;
    text = trim(text);
    if (text.empty()) {
        throw ValidationError("empty det state expression");
    }
    if (text.front() != '{') {
        return eta(id, parse_index(text, whole));
    }
    if (text.back() != '}') {
        throw ValidationError("unterminated det state '" + std::string(whole) + "'");
    }
    const auto body = trim(text.substr(1, text.size() - 2));
    if (body.find(':') != std::string_view::npos) {
        std::vector<std::pair<StateId, Rational>> weights;
        for (const auto part : split(body, ',')) {
            const auto colon = part.find(':');
            if (colon == std::string_view::npos) {
                throw ValidationError("expected state:weight in '" + std::string(whole) + "'");
            }
            weights.emplace_back(parse_index(part.substr(0, colon), whole),
                                 parse_rational(trim(part.substr(colon + 1))));
        }
        return DetState::dist(std::move(weights));
    }
    std::vector<StateId> states;
    if (!body.empty()) {
        for (const auto part : split(body, ',')) {
            states.push_back(parse_index(part, whole));
        }
    }
    switch (id) {
    case SemanticsId::Bisimilarity:
    case SemanticsId::Simulation:
        if (states.size() != 1) {
            throw ValidationError(std::string(to_string(id)) + " positions are single states, got '" +
                                  std::string(whole) + "'");
        }
        return DetState::single(states.front());
    case SemanticsId::ProbabilisticTrace:
        if (states.size() != 1) {
            throw ValidationError("write distributions as {i:p, j:q}, got '" + std::string(whole) + "'");
        }
        return DetState::dirac(states.front());
    default:
        return DetState::set(std::move(states));
    }
}

MovePair parse_move_pair(SemanticsId id, std::string_view text) {
    struct Op {
        std::string_view token;
        Direction direction;
    };
    for (const Op op : {Op{"<=", Direction::Le}, Op{">=", Direction::Ge}, Op{"=", Direction::Equal}}) {
        const auto pos = text.find(op.token);
        if (pos == std::string_view::npos) {
            continue;
        }
        MovePair pair{parse_det_state(id, text.substr(0, pos)), parse_det_state(id, text.substr(pos + op.token.size())),
                      op.direction};
        if ((id == SemanticsId::Simulation) != (op.direction != Direction::Equal)) {
            throw ValidationError(id == SemanticsId::Simulation ? "simulation claims use <= or >=, got '" +
                                                                      std::string(trim(text)) + "'"
                                                                : "claims use =, got '" + std::string(trim(text)) + "'");
        }
        return pair;
    }
    throw ValidationError("expected a pair like '{1,3} = {3}', got '" + std::string(trim(text)) + "'");
}

MoveRelation parse_relation(SemanticsId id, std::string_view text) {
    text = trim(text);
    MoveRelation z;
    if (text.empty() || text == "empty") {
        return z;
    }
    for (const auto part : split(text, ';')) {
        if (!trim(part).empty()) {
            z.push_back(parse_move_pair(id, part));
        }
    }
    return z;
}

std::string to_string(const MovePair& pair) {
    return to_string(pair.left) + " " + std::string(to_string(pair.direction)) + " " + to_string(pair.right);
}

std::string to_string(const MoveRelation& relation) {
    if (relation.empty()) {
        return "empty";
    }
    std::string out;
    for (std::size_t k = 0; k < relation.size(); ++k) {
        out += (k ? "; " : "") + to_string(relation[k]);
    }
    return out;
}

} // namespace gradeq
