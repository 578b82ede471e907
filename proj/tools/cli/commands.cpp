#include "commands.hpp"

#include "render.hpp"

#include "gradeq/errors.hpp"
#include "gradeq/expr.hpp"
#include "gradeq/json_io.hpp"
#include "gradeq/oracle.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace gradeq::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

bool looks_like_pts(const std::string& path, const std::string& text) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pts") == 0) {
        return true;
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        return line.compare(first, 4, "pts ") == 0;
    }
    return false;
}

} // namespace

TransitionSystem load_system(const Common& common) {
    const auto text = read_file(common.input);
    if (looks_like_pts(common.input, text)) {
        return parse_pts(text);
    }
    ParseDiagnostics diagnostics;
    auto lts = parse_aut(text, &diagnostics, common.alphabet);
    for (const auto& w : diagnostics.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    return lts;
}

SemanticsId semantics_flag(const std::string& name) {
    const auto id = parse_semantics(name);
    if (!id) {
        throw ValidationError("unknown semantics '" + name +
                              "' (bisimilarity, trace, serial-trace, probabilistic-trace, simulation, failure)");
    }
    return *id;
}

std::pair<DetState, DetState> compared_pair(const Common& common, SemanticsId id, const TransitionSystem& sys) {
    std::vector<DetState> states;
    for (const auto x : common.states) {
        states.push_back(eta(id, x));
    }
    for (const auto& expr : common.sets) {
        states.push_back(parse_det_state(id, expr));
    }
    if (states.size() != 2) {
        throw ValidationError("give exactly two states: --states x y, or --set S --set T");
    }
    for (const auto& s : states) {
        validate_det_state(id, sys, s);
    }
    return {states[0], states[1]};
}

// --- check ----------------------------------------------------------------------

namespace {

/// Engine level, generic unfolding and path oracle per depth, up to `depth`.
struct CrossCheckRow {
    std::size_t depth = 0;
    bool engine = false;
    bool gamma = false;
    std::optional<bool> paths;
};

std::optional<bool> path_oracle(SemanticsId id, const TransitionSystem& sys, const DetState& s, const DetState& t,
                                std::size_t n) {
    if (const auto* pts = std::get_if<ProbabilisticTransitionSystem>(&sys)) {
        for (std::size_t k = 0; k <= n; ++k) {
            if (oracle::word_distribution(*pts, s, k) != oracle::word_distribution(*pts, t, k)) {
                return false;
            }
        }
        return true;
    }
    const auto& lts = std::get<LabelledTransitionSystem>(sys);
    switch (id) {
    case SemanticsId::Trace:
        return oracle::trace_set(lts, s.as_set(), n) == oracle::trace_set(lts, t.as_set(), n);
    case SemanticsId::Failure:
        for (std::size_t k = 0; k <= n; ++k) {
            if (oracle::trace_set(lts, s.as_set(), k) != oracle::trace_set(lts, t.as_set(), k)) {
                return false;
            }
        }
        return oracle::failure_pairs(lts, s.as_set(), n) == oracle::failure_pairs(lts, t.as_set(), n);
    case SemanticsId::Simulation: {
        const auto r = oracle::naive_simulation(lts, n);
        const auto x = s.as_single();
        const auto y = t.as_single();
        return r.get(x, y) && r.get(y, x);
    }
    default:
        return std::nullopt;
    }
}

std::vector<CrossCheckRow> cross_check(SemanticsId id, const std::shared_ptr<const TransitionSystem>& sys,
                                       const DetState& s, const DetState& t, std::size_t depth, std::size_t budget) {
    ExploreOptions options;
    options.budget = budget;
    options.max_depth = depth;
    Analysis analysis(id, sys, std::vector<DetState>{s, t}, options);
    const auto i = analysis.id(s);
    const auto j = analysis.id(t);
    oracle::Oracle unfold(id, *sys);
    std::vector<CrossCheckRow> rows;
    for (std::size_t k = 0; k <= depth; ++k) {
        CrossCheckRow row;
        row.depth = k;
        row.engine = analysis.levels().at(k).equivalent(i, j);
        const auto a = unfold.gamma_n(s, k);
        const auto b = unfold.gamma_n(t, k);
        row.gamma = id == SemanticsId::Simulation ? unfold.leq(a, b) && unfold.leq(b, a) : a == b;
        row.paths = path_oracle(id, *sys, s, t, k);
        rows.push_back(row);
    }
    return rows;
}

bool rows_agree(const std::vector<CrossCheckRow>& rows) {
    for (const auto& r : rows) {
        if (r.engine != r.gamma || (r.paths && *r.paths != r.engine)) {
            return false;
        }
    }
    return true;
}

void print_rows(std::ostream& out, const std::vector<CrossCheckRow>& rows) {
    const auto yn = [](bool b) { return b ? "equal" : "differ"; };
    out << "depth  engine  unfolding  paths\n";
    for (const auto& r : rows) {
        out << r.depth << "      " << yn(r.engine) << "   " << yn(r.gamma) << "      "
            << (r.paths ? yn(*r.paths) : "-") << "\n";
    }
}

Json rows_json(const std::vector<CrossCheckRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        out.push_back({{"depth", r.depth},
                       {"engine", r.engine},
                       {"unfolding", r.gamma},
                       {"paths", r.paths ? Json(*r.paths) : Json(nullptr)}});
    }
    return out;
}

} // namespace

int run_check(const CheckConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto id = semantics_flag(cfg.common.semantics);
        const auto depth = parse_depth(cfg.depth);
        const auto sys = std::make_shared<const TransitionSystem>(load_system(cfg.common));
        check_instance(id, *sys);
        const auto [s, t] = compared_pair(cfg.common, id, *sys);

        ExploreOptions options;
        options.budget = cfg.common.budget;
        if (depth.kind == Depth::Kind::Finite) {
            options.max_depth = depth.rounds;
        }
        const auto start = depth.kind == Depth::Kind::StrictInfinite ? StartMode::StrictInfinite : StartMode::FiniteDepth;
        Analysis analysis(id, sys, std::vector<DetState>{s, t}, options, start);
        const auto verdict = decide_in(analysis, analysis.id(s), analysis.id(t), depth);
        std::vector<std::pair<DetState, DetState>> strategy;
        if (verdict.equivalent()) {
            const auto& rel = depth.kind == Depth::Kind::Finite ? analysis.levels().at(depth.rounds) : analysis.fixpoint();
            strategy = extract_duplicator_strategy(analysis.graph(), rel);
        }
        std::vector<CrossCheckRow> rows;
        if (cfg.oracle) {
            rows = cross_check(id, sys, s, t, depth.kind == Depth::Kind::Finite ? depth.rounds : 4, cfg.common.budget);
        }

        const auto& labels = alphabet(*sys);
        if (cfg.common.format == "json") {
            Json j = verdict_to_json(verdict, labels);
            j["semantics"] = to_string(id);
            j["left"] = to_string(s);
            j["right"] = to_string(t);
            j["requested_depth"] = to_string(depth);
            if (verdict.equivalent()) {
                Json pairs = Json::array();
                for (const auto& [a, b] : strategy) {
                    pairs.push_back({to_string(a), to_string(b)});
                }
                j["strategy"] = std::move(pairs);
            }
            if (cfg.oracle) {
                j["oracle"] = rows_json(rows);
            }
            out << j.dump(2) << "\n";
        } else {
            out << to_string(id) << ": " << to_string(s) << " vs " << to_string(t) << "\n";
            print_verdict(out, verdict, labels);
            if (verdict.equivalent()) {
                print_strategy(out, strategy);
            }
            if (cfg.oracle) {
                print_rows(out, rows);
            }
        }
        if (cfg.oracle && !rows_agree(rows)) {
            err << "error: engine and oracles disagree\n";
            return kExitError;
        }
        return verdict.equivalent() ? kExitEquivalent : kExitDistinguished;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

// --- determinize ----------------------------------------------------------------

int run_determinize(const DeterminizeConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto id = semantics_flag(cfg.common.semantics);
        const auto sys = load_system(cfg.common);
        check_instance(id, sys);
        std::vector<DetState> seeds;
        for (const auto x : cfg.common.states) {
            seeds.push_back(eta(id, x));
        }
        for (const auto& expr : cfg.common.sets) {
            seeds.push_back(parse_det_state(id, expr));
        }
        if (seeds.empty()) {
            const auto* lts = std::get_if<LabelledTransitionSystem>(&sys);
            seeds.push_back(eta(id, lts ? lts->initial() : 0));
        }
        for (const auto& s : seeds) {
            validate_det_state(id, sys, s);
        }
        ExploreOptions options;
        options.budget = cfg.common.budget;
        options.max_depth = cfg.max_depth;
        const auto g = explore(id, sys, seeds, options);

        std::ostringstream text;
        if (cfg.common.format == "dot") {
            text << determinization_to_dot(g);
        } else if (cfg.common.format == "json") {
            text << determinization_to_json(g).dump(2) << "\n";
        } else {
            print_graph(text, g);
        }
        if (cfg.output.empty()) {
            out << text.str();
        } else {
            std::ofstream file(cfg.output);
            if (!(file << text.str())) {
                throw ValidationError("cannot write " + cfg.output);
            }
        }
        return kExitEquivalent;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

// --- oracle ---------------------------------------------------------------------

int run_oracle(const OracleConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto id = semantics_flag(cfg.common.semantics);
        const auto sys = std::make_shared<const TransitionSystem>(load_system(cfg.common));
        check_instance(id, *sys);
        const auto [s, t] = compared_pair(cfg.common, id, *sys);
        const auto rows = cross_check(id, sys, s, t, cfg.depth, cfg.common.budget);
        if (cfg.common.format == "json") {
            out << Json{{"semantics", to_string(id)},
                        {"left", to_string(s)},
                        {"right", to_string(t)},
                        {"agree", rows_agree(rows)},
                        {"rows", rows_json(rows)}}
                       .dump(2)
                << "\n";
        } else {
            print_rows(out, rows);
        }
        if (!rows_agree(rows)) {
            err << "error: engine and oracles disagree\n";
            return kExitError;
        }
        return rows.back().engine ? kExitEquivalent : kExitDistinguished;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace gradeq::cli
