#include "gradeq/systems.hpp"

#include "gradeq/errors.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace gradeq {

namespace {

void check_unique_alphabet(const std::vector<std::string>& alphabet) {
    std::set<std::string_view> seen;
    for (const auto& label : alphabet) {
        if (!seen.insert(label).second) {
            throw ValidationError("duplicate alphabet entry '" + label + "'");
        }
    }
}

std::optional<Label> find_label(const std::vector<std::string>& alphabet, std::string_view name) {
    const auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) {
        return std::nullopt;
    }
    return static_cast<Label>(it - alphabet.begin());
}

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        lines.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) {
            break;
        }
        text.remove_prefix(nl + 1);
    }
    return lines;
}

std::optional<std::uint64_t> parse_index(std::string_view s) {
    s = trim(s);
    std::uint64_t value = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

/// Reads `(a, b, c)` where the middle component is returned raw.
struct Triple {
    std::string_view first, middle, last;
};

std::optional<Triple> split_triple(std::string_view line) {
    line = trim(line);
    if (line.size() < 2 || line.front() != '(' || line.back() != ')') {
        return std::nullopt;
    }
    line = line.substr(1, line.size() - 2);
    const auto first_comma = line.find(',');
    const auto last_comma = line.rfind(',');
    if (first_comma == std::string_view::npos || last_comma == first_comma) {
        return std::nullopt;
    }
    return Triple{line.substr(0, first_comma), line.substr(first_comma + 1, last_comma - first_comma - 1),
                  line.substr(last_comma + 1)};
}

std::optional<std::string> parse_aut_label(std::string_view raw) {
    raw = trim(raw);
    if (raw.empty()) {
        return std::nullopt;
    }
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') {
            return std::nullopt;
        }
        return std::string(raw.substr(1, raw.size() - 2));
    }
    if (raw.find_first_of(",\" \t") != std::string_view::npos) {
        return std::nullopt;
    }
    return std::string(raw);
}

bool needs_quotes(const std::string& label) {
    return label.empty() || label.find_first_of(", \t\"()") != std::string::npos;
}

} // namespace

// --- LabelledTransitionSystem -------------------------------------------------

LabelledTransitionSystem::LabelledTransitionSystem(std::size_t num_states, std::vector<std::string> alphabet,
                                                   std::vector<Transition> transitions, StateId initial)
    : num_states_(num_states), alphabet_(std::move(alphabet)), transitions_(std::move(transitions)),
      initial_(initial) {
    check_unique_alphabet(alphabet_);
    if (num_states_ == 0) {
        throw ValidationError("an LTS needs at least one state");
    }
    if (initial_ >= num_states_) {
        throw ValidationError("initial state " + std::to_string(initial_) + " out of range [0," +
                              std::to_string(num_states_) + ")");
    }
    for (const auto& t : transitions_) {
        if (t.source >= num_states_ || t.target >= num_states_) {
            throw ValidationError("transition (" + std::to_string(t.source) + ", " + std::to_string(t.label) + ", " +
                                  std::to_string(t.target) + ") has a state index out of range");
        }
        if (t.label >= alphabet_.size()) {
            throw ValidationError("transition label index " + std::to_string(t.label) + " out of range");
        }
    }
    std::sort(transitions_.begin(), transitions_.end());
    const auto before = transitions_.size();
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    duplicates_dropped_ = before - transitions_.size();

    offsets_.assign(num_states_ + 1, 0);
    for (const auto& t : transitions_) {
        ++offsets_[t.source + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) {
        offsets_[i] += offsets_[i - 1];
    }
}

std::span<const Transition> LabelledTransitionSystem::successors(StateId state) const {
    if (state >= num_states_) {
        throw ValidationError("state " + std::to_string(state) + " out of range");
    }
    return std::span<const Transition>(transitions_).subspan(offsets_[state], offsets_[state + 1] - offsets_[state]);
}

LabelSet LabelledTransitionSystem::enabled(StateId state) const {
    LabelSet labels;
    for (const auto& t : successors(state)) {
        if (labels.empty() || labels.back() != t.label) {
            labels.push_back(t.label);
        }
    }
    return labels;
}

std::optional<Label> LabelledTransitionSystem::label_index(std::string_view name) const {
    return find_label(alphabet_, name);
}

// --- ProbabilisticTransitionSystem ---------------------------------------------

ProbabilisticTransitionSystem::ProbabilisticTransitionSystem(std::size_t num_states,
                                                             std::vector<std::string> alphabet,
                                                             std::vector<std::vector<WeightedEdge>> rows)
    : alphabet_(std::move(alphabet)), rows_(std::move(rows)) {
    check_unique_alphabet(alphabet_);
    if (num_states == 0) {
        throw ValidationError("a PTS needs at least one state");
    }
    if (rows_.size() > num_states) {
        throw ValidationError("more rows than states");
    }
    rows_.resize(num_states);
    for (std::size_t x = 0; x < rows_.size(); ++x) {
        std::map<std::pair<Label, StateId>, Rational> merged;
        for (const auto& e : rows_[x]) {
            if (e.label >= alphabet_.size()) {
                throw ValidationError("state " + std::to_string(x) + ": label index out of range");
            }
            if (e.target >= num_states) {
                throw ValidationError("state " + std::to_string(x) + ": target " + std::to_string(e.target) +
                                      " out of range");
            }
            if (e.weight <= 0) {
                throw ValidationError("state " + std::to_string(x) + ": weight " + to_string(e.weight) +
                                      " is not positive");
            }
            merged[{e.label, e.target}] += e.weight;
        }
        Rational sum = 0;
        auto& row = rows_[x];
        row.clear();
        for (auto& [key, weight] : merged) {
            sum += weight;
            row.push_back(WeightedEdge{key.first, key.second, weight});
        }
        if (sum != 1) {
            throw ValidationError("weights at state " + std::to_string(x) + " sum to " + to_string(sum));
        }
    }
}

std::span<const WeightedEdge> ProbabilisticTransitionSystem::row(StateId state) const {
    if (state >= rows_.size()) {
        throw ValidationError("state " + std::to_string(state) + " out of range");
    }
    return rows_[state];
}

std::optional<Label> ProbabilisticTransitionSystem::label_index(std::string_view name) const {
    return find_label(alphabet_, name);
}

std::size_t num_states(const TransitionSystem& sys) {
    return std::visit([](const auto& s) { return s.num_states(); }, sys);
}

const std::vector<std::string>& alphabet(const TransitionSystem& sys) {
    return std::visit([](const auto& s) -> const std::vector<std::string>& { return s.alphabet(); }, sys);
}

// --- .aut ----------------------------------------------------------------------

LabelledTransitionSystem parse_aut(std::string_view text, ParseDiagnostics* diagnostics,
                                   const std::vector<std::string>& extra_labels) {
    const auto lines = split_lines(text);
    std::size_t lineno = 0;
    auto next_nonblank = [&]() -> std::optional<std::string_view> {
        while (lineno < lines.size()) {
            const auto line = trim(lines[lineno++]);
            if (!line.empty()) {
                return line;
            }
        }
        return std::nullopt;
    };

    const auto header = next_nonblank();
    if (!header || header->substr(0, 3) != "des") {
        throw ParseError(lineno, "expected header 'des (init, m, n)'");
    }
    const auto triple = split_triple(header->substr(3));
    if (!triple) {
        throw ParseError(lineno, "malformed header '" + std::string(*header) + "'");
    }
    const auto init = parse_index(triple->first);
    const auto count = parse_index(triple->middle);
    const auto states = parse_index(triple->last);
    if (!init || !count || !states) {
        throw ParseError(lineno, "malformed header '" + std::string(*header) + "'");
    }
    if (*states == 0 || *init >= *states) {
        throw ParseError(lineno, "initial state " + std::to_string(*init) + " out of range [0," +
                                     std::to_string(*states) + ")");
    }

    std::vector<std::string> alphabet;
    std::vector<Transition> transitions;
    std::set<Transition> seen;
    std::size_t read = 0;
    while (const auto line = next_nonblank()) {
        ++read;
        if (read > *count) {
            throw ParseError(lineno, "transition count mismatch: header declares " + std::to_string(*count));
        }
        const auto parts = split_triple(*line);
        if (!parts) {
            throw ParseError(lineno, "malformed transition '" + std::string(*line) + "'");
        }
        const auto src = parse_index(parts->first);
        const auto dst = parse_index(parts->last);
        const auto label = parse_aut_label(parts->middle);
        if (!src || !dst || !label) {
            throw ParseError(lineno, "malformed transition '" + std::string(*line) + "'");
        }
        if (*src >= *states || *dst >= *states) {
            throw ParseError(lineno, "state index out of range [0," + std::to_string(*states) + ")");
        }
        auto index = find_label(alphabet, *label);
        if (!index) {
            index = static_cast<Label>(alphabet.size());
            alphabet.push_back(*label);
        }
        const Transition t{static_cast<StateId>(*src), *index, static_cast<StateId>(*dst)};
        if (!seen.insert(t).second) {
            if (diagnostics != nullptr) {
                diagnostics->warnings.push_back("line " + std::to_string(lineno) + ": duplicate transition (" +
                                                std::to_string(t.source) + ", \"" + *label + "\", " +
                                                std::to_string(t.target) + ") ignored");
            }
            continue;
        }
        transitions.push_back(t);
    }
    if (read != *count) {
        throw ParseError(lineno, "transition count mismatch: header declares " + std::to_string(*count) +
                                     ", found " + std::to_string(read));
    }
    for (const auto& extra : extra_labels) {
        if (!find_label(alphabet, extra)) {
            alphabet.push_back(extra);
        }
    }
    return LabelledTransitionSystem(static_cast<std::size_t>(*states), std::move(alphabet), std::move(transitions),
                                    static_cast<StateId>(*init));
}

std::string render_aut(const LabelledTransitionSystem& lts) {
    auto transitions = lts.transitions();
    std::sort(transitions.begin(), transitions.end(), [](const Transition& a, const Transition& b) {
        return std::tie(a.label, a.source, a.target) < std::tie(b.label, b.source, b.target);
    });
    std::ostringstream out;
    out << "des (" << lts.initial() << ", " << transitions.size() << ", " << lts.num_states() << ")\n";
    for (const auto& t : transitions) {
        const auto& name = lts.alphabet()[t.label];
        out << '(' << t.source << ", ";
        if (needs_quotes(name)) {
            out << '"' << name << '"';
        } else {
            out << name;
        }
        out << ", " << t.target << ")\n";
    }
    return out.str();
}

// --- pts -----------------------------------------------------------------------

ProbabilisticTransitionSystem parse_pts(std::string_view text) {
    const auto lines = split_lines(text);
    std::optional<std::size_t> num;
    std::vector<std::string> alphabet;
    std::vector<std::vector<WeightedEdge>> rows;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream in{std::string(line)};
        std::vector<std::string> words;
        for (std::string w; in >> w;) {
            words.push_back(w);
        }
        if (!num) {
            if (words.size() < 2 || words[0] != "pts") {
                throw ParseError(i + 1, "expected header 'pts n <labels...>'");
            }
            const auto n = parse_index(words[1]);
            if (!n || *n == 0) {
                throw ParseError(i + 1, "malformed state count '" + words[1] + "'");
            }
            num = static_cast<std::size_t>(*n);
            alphabet.assign(words.begin() + 2, words.end());
            try {
                check_unique_alphabet(alphabet);
            } catch (const ValidationError& e) {
                throw ParseError(i + 1, e.what());
            }
            rows.resize(*num);
            continue;
        }
        if (words.size() != 4) {
            throw ParseError(i + 1, "expected 'src label p/q dst'");
        }
        const auto src = parse_index(words[0]);
        const auto dst = parse_index(words[3]);
        if (!src || !dst) {
            throw ParseError(i + 1, "malformed state index");
        }
        if (*src >= *num || *dst >= *num) {
            throw ParseError(i + 1, "state index out of range [0," + std::to_string(*num) + ")");
        }
        const auto label = find_label(alphabet, words[1]);
        if (!label) {
            throw ParseError(i + 1, "unknown label '" + words[1] + "'");
        }
        Rational weight;
        try {
            weight = parse_rational(words[2]);
        } catch (const ValidationError& e) {
            throw ParseError(i + 1, e.what());
        }
        if (weight <= 0) {
            throw ParseError(i + 1, "weight " + words[2] + " is not positive");
        }
        rows[*src].push_back(WeightedEdge{*label, static_cast<StateId>(*dst), weight});
    }
    if (!num) {
        throw ParseError(0, "missing 'pts' header");
    }
    return ProbabilisticTransitionSystem(*num, std::move(alphabet), std::move(rows));
}

std::string render_pts(const ProbabilisticTransitionSystem& pts) {
    std::ostringstream out;
    out << "pts " << pts.num_states();
    for (const auto& label : pts.alphabet()) {
        out << ' ' << label;
    }
    out << '\n';
    for (StateId x = 0; x < pts.num_states(); ++x) {
        for (const auto& e : pts.row(x)) {
            out << x << ' ' << pts.alphabet()[e.label] << ' ' << to_string(e.weight) << ' ' << e.target << '\n';
        }
    }
    return out.str();
}

// --- graph queries -------------------------------------------------------------

std::vector<StateId> reachable(const TransitionSystem& sys, std::span<const StateId> seeds) {
    const auto n = num_states(sys);
    std::vector<bool> seen(n, false);
    std::deque<StateId> queue;
    for (const auto s : seeds) {
        if (s >= n) {
            throw ValidationError("seed state " + std::to_string(s) + " out of range");
        }
        if (!seen[s]) {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    auto visit = [&](StateId t) {
        if (!seen[t]) {
            seen[t] = true;
            queue.push_back(t);
        }
    };
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        if (const auto* lts = std::get_if<LabelledTransitionSystem>(&sys)) {
            for (const auto& t : lts->successors(x)) {
                visit(t.target);
            }
        } else {
            for (const auto& e : std::get<ProbabilisticTransitionSystem>(sys).row(x)) {
                visit(e.target);
            }
        }
    }
    std::vector<StateId> result;
    for (StateId x = 0; x < n; ++x) {
        if (seen[x]) {
            result.push_back(x);
        }
    }
    return result;
}

std::vector<StateId> deadlock_states(const LabelledTransitionSystem& lts) {
    std::vector<StateId> result;
    for (StateId x = 0; x < lts.num_states(); ++x) {
        if (lts.successors(x).empty()) {
            result.push_back(x);
        }
    }
    return result;
}

namespace {

std::pair<std::vector<std::string>, std::vector<Label>> merge_alphabets(const std::vector<std::string>& left,
                                                                        const std::vector<std::string>& right) {
    auto merged = left;
    std::vector<Label> remap;
    for (const auto& label : right) {
        auto index = find_label(merged, label);
        if (!index) {
            index = static_cast<Label>(merged.size());
            merged.push_back(label);
        }
        remap.push_back(*index);
    }
    return {merged, remap};
}

} // namespace

LabelledTransitionSystem disjoint_union(const LabelledTransitionSystem& left, const LabelledTransitionSystem& right) {
    auto [labels, remap] = merge_alphabets(left.alphabet(), right.alphabet());
    const auto offset = static_cast<StateId>(left.num_states());
    auto transitions = left.transitions();
    for (const auto& t : right.transitions()) {
        transitions.push_back(Transition{t.source + offset, remap[t.label], t.target + offset});
    }
    return LabelledTransitionSystem(left.num_states() + right.num_states(), std::move(labels),
                                    std::move(transitions), left.initial());
}

ProbabilisticTransitionSystem disjoint_union(const ProbabilisticTransitionSystem& left,
                                             const ProbabilisticTransitionSystem& right) {
    auto [labels, remap] = merge_alphabets(left.alphabet(), right.alphabet());
    const auto offset = static_cast<StateId>(left.num_states());
    std::vector<std::vector<WeightedEdge>> rows;
    for (StateId x = 0; x < left.num_states(); ++x) {
        rows.emplace_back(left.row(x).begin(), left.row(x).end());
    }
    for (StateId x = 0; x < right.num_states(); ++x) {
        auto& row = rows.emplace_back();
        for (const auto& e : right.row(x)) {
            row.push_back(WeightedEdge{remap[e.label], e.target + offset, e.weight});
        }
    }
    return ProbabilisticTransitionSystem(left.num_states() + right.num_states(), std::move(labels), std::move(rows));
}

} // namespace gradeq
