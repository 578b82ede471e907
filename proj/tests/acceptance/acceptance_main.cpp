// Acceptance gate: one PASS/FAIL line per criterion.
//
//   gradeq_acceptance [criterion...]   (all criteria when none given)

#include "congruence.hpp"
#include "fixtures.hpp"
#include "homomorphy.hpp"
#include "random_systems.hpp"
#include "sweeps.hpp"

#include "gradeq/engine.hpp"
#include "gradeq/errors.hpp"
#include "gradeq/expr.hpp"
#include "gradeq/game.hpp"
#include "gradeq/oracle.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace gradeq;
namespace gt = gradeq::testing;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

using SystemPtr = std::shared_ptr<const TransitionSystem>;

constexpr std::size_t kCorpusLts = 500;
constexpr std::size_t kCorpusPts = 200;
constexpr std::uint64_t kCorpusSeed = 20261015;
constexpr std::size_t kPtsBudget = 300;

/// The random corpus: LTS with <= 6 states, <= 3 labels, branching <= 3
/// (every other one serial) and PTS of the same shape.
struct Corpus {
    std::vector<SystemPtr> lts;
    std::vector<SystemPtr> pts;

    Corpus() {
        std::mt19937_64 rng(kCorpusSeed);
        for (std::size_t k = 0; k < kCorpusLts; ++k) {
            lts.push_back(std::make_shared<const TransitionSystem>(gt::random_lts(rng, {6, 3, 3, k % 2 == 0})));
        }
        for (std::size_t k = 0; k < kCorpusPts; ++k) {
            pts.push_back(std::make_shared<const TransitionSystem>(gt::random_pts(rng, {6, 3, 3, true})));
        }
    }

    [[nodiscard]] std::vector<SystemPtr> all() const {
        auto out = lts;
        out.insert(out.end(), pts.begin(), pts.end());
        return out;
    }
};

const Corpus& corpus() {
    static const Corpus c;
    return c;
}

std::string summary(const gt::SweepStats& s) {
    std::ostringstream out;
    out << s.systems << " systems, " << s.comparisons << " comparisons, " << s.mismatches << " mismatches";
    if (s.skipped) {
        out << ", " << s.skipped << " skipped (budget)";
    }
    if (!s.first_mismatch.empty()) {
        out << "; first: " << s.first_mismatch;
    }
    return out.str();
}

const auto S = [](std::vector<StateId> v) { return DetState::set(std::move(v)); };

// --- worked examples -------------------------------------------------------------

Result trace_example() {
    const TransitionSystem sys = gt::sys1();
    const auto v = decide_pair_detstates(SemanticsId::Trace, sys, S({0, 2}), S({2, 5}), Depth::limit());
    const Configuration config{S({0, 2}), S({2, 5})};
    const auto z = parse_relation(SemanticsId::Trace, "{1,3} = {3}; {4,6} = {4}");
    const auto a = check_admissible(SemanticsId::Trace, sys, config, z);
    const bool pass = v.kind == Verdict::Kind::EquivalentLimit && a.admissible;
    return {pass, std::string("verdict ") + (v.kind == Verdict::Kind::EquivalentLimit ? "equivalent_limit" : "other") +
                      ", Z " + (a.admissible ? "admissible" : "rejected: " + a.explanation)};
}

Result failure_example() {
    const TransitionSystem sys = gt::sys2();
    const auto v = decide_pair_detstates(SemanticsId::Failure, sys, S({0, 1, 2}), S({0, 2}), Depth::limit());
    const Configuration config{S({0, 1, 2}), S({0, 2})};
    // the only continuation is the deadlock state 3 on both sides
    const auto a = check_admissible(SemanticsId::Failure, sys, config, parse_relation(SemanticsId::Failure, "{3} = {3}"));
    const bool pass = v.kind == Verdict::Kind::EquivalentLimit && a.admissible;
    return {pass, std::string("verdict ") + (v.kind == Verdict::Kind::EquivalentLimit ? "equivalent_limit" : "other") +
                      ", Z " + (a.admissible ? "admissible" : "rejected: " + a.explanation)};
}

// --- corpus sweeps ----------------------------------------------------------------

Result finite_game_levels() {
    gt::SweepStats total;
    std::size_t instances = 0;
    for (const auto& sys : corpus().all()) {
        for (const auto id : gt::applicable(*sys)) {
            total.merge(gt::level_vs_oracle(id, *sys, 4));
            ++instances;
        }
    }
    const bool pass = total.mismatches == 0 && total.skipped == 0 && total.systems == instances;
    return {pass, std::to_string(corpus().lts.size()) + " LTS + " + std::to_string(corpus().pts.size()) +
                      " PTS, n = 0..4: " + summary(total)};
}

Result infinite_game_fixpoint() {
    // PTS det graphs can be infinite; those instances hit the budget and are counted as skipped
    const auto sweep = [](const std::vector<SystemPtr>& systems, std::size_t budget) {
        gt::SweepStats total;
        for (const auto& sys : systems) {
            for (const auto id : gt::applicable(*sys)) {
                if (supports_strict_infinite(id)) {
                    total.merge(gt::fixpoint_vs_infinite_game(id, sys, budget));
                }
            }
        }
        return total;
    };
    const auto lts = sweep(corpus().lts, 20000);
    const auto pts = sweep(corpus().pts, kPtsBudget);
    return {lts.mismatches == 0 && pts.mismatches == 0 && lts.skipped == 0 && lts.comparisons > 0 &&
                pts.comparisons > 0,
            "LTS: " + summary(lts) + "; PTS (budget " + std::to_string(kPtsBudget) + "): " + summary(pts)};
}

Result degeneracy() {
    std::size_t pairs = 0;
    std::size_t bad = 0;
    std::string first;
    auto systems = corpus().lts;
    systems.push_back(std::make_shared<const TransitionSystem>(gt::sys1()));
    systems.push_back(std::make_shared<const TransitionSystem>(gt::sys3()));
    for (const auto& sys : systems) {
        std::vector<DetState> seeds;
        for (StateId x = 0; x < num_states(*sys); ++x) {
            seeds.push_back(eta(SemanticsId::Trace, x));
        }
        Analysis analysis(SemanticsId::Trace, sys, seeds, {}, StartMode::StrictInfinite);
        for (StateId x = 0; x < seeds.size(); ++x) {
            for (StateId y = 0; y < seeds.size(); ++y) {
                const auto v = decide_in(analysis, analysis.id(seeds[x]), analysis.id(seeds[y]),
                                         Depth::strict_infinite());
                ++pairs;
                if (!v.equivalent() || !v.infinite_mode_degenerate) {
                    ++bad;
                    if (first.empty()) {
                        first = std::to_string(x) + " vs " + std::to_string(y);
                    }
                }
            }
        }
    }
    return {bad == 0, std::to_string(pairs) + " trace pairs in strict infinite mode, " + std::to_string(bad) +
                          " not reported as degenerate-equivalent" + (first.empty() ? "" : "; first: " + first)};
}

/// Limit-mode equivalence of every pair of states under one semantics.
std::vector<std::vector<bool>> equivalence_table(SemanticsId id, const SystemPtr& sys) {
    const auto n = num_states(*sys);
    std::vector<DetState> seeds;
    for (StateId x = 0; x < n; ++x) {
        seeds.push_back(eta(id, x));
    }
    Analysis analysis(id, sys, seeds);
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
    for (StateId x = 0; x < n; ++x) {
        for (StateId y = 0; y < n; ++y) {
            eq[x][y] = decide_in(analysis, analysis.id(seeds[x]), analysis.id(seeds[y]), Depth::limit()).equivalent();
        }
    }
    return eq;
}

Result spectrum() {
    struct Implication {
        const char* name;
        SemanticsId stronger;
        SemanticsId weaker;
        std::size_t violations = 0;
        std::string first;
    };
    std::vector<Implication> chain{{"bisimilar => mutually similar", SemanticsId::Bisimilarity, SemanticsId::Simulation},
                                   {"mutually similar => failure-equivalent", SemanticsId::Simulation,
                                    SemanticsId::Failure},
                                   {"failure-equivalent => trace-equivalent", SemanticsId::Failure, SemanticsId::Trace},
                                   {"bisimilar => failure-equivalent", SemanticsId::Bisimilarity, SemanticsId::Failure}};
    std::size_t pairs = 0;
    for (const auto& sys : corpus().lts) {
        std::map<SemanticsId, std::vector<std::vector<bool>>> tables;
        for (const auto id : {SemanticsId::Bisimilarity, SemanticsId::Simulation, SemanticsId::Failure,
                              SemanticsId::Trace}) {
            tables[id] = equivalence_table(id, sys);
        }
        const auto n = num_states(*sys);
        for (StateId x = 0; x < n; ++x) {
            for (StateId y = x + 1; y < n; ++y) {
                ++pairs;
                for (auto& imp : chain) {
                    if (tables[imp.stronger][x][y] && !tables[imp.weaker][x][y]) {
                        if (imp.violations++ == 0) {
                            imp.first = std::to_string(x) + " vs " + std::to_string(y) + " in\n" +
                                        render_aut(std::get<LabelledTransitionSystem>(*sys));
                        }
                    }
                }
            }
        }
    }

    // SYS3: x0 = 0 and y0 = 4 are trace equivalent and separated by the three finer semantics
    const auto sys3 = std::make_shared<const TransitionSystem>(gt::sys3());
    const bool trace_eq = decide(SemanticsId::Trace, *sys3, 0, 4, Depth::limit()).equivalent();
    std::size_t separations = 0;
    for (const auto id : {SemanticsId::Failure, SemanticsId::Simulation, SemanticsId::Bisimilarity}) {
        const auto v = decide(id, *sys3, 0, 4, Depth::limit());
        if (!v.equivalent() && v.witness &&
            oracle::witness_is_valid(id, *sys3, eta(id, 0), eta(id, 4), *v.witness)) {
            ++separations;
        }
    }

    bool pass = trace_eq && separations == 3;
    std::ostringstream out;
    out << pairs << " state pairs over " << corpus().lts.size() << " LTS;";
    for (const auto& imp : chain) {
        out << " [" << imp.name << ": " << imp.violations << " violations]";
        pass = pass && imp.violations == 0;
    }
    out << "; SYS3 trace-equivalent " << (trace_eq ? "yes" : "no") << ", validated separations " << separations
        << "/3";
    for (const auto& imp : chain) {
        if (imp.violations) {
            out << "\n    first counterexample to " << imp.name << ": " << imp.first;
        }
    }
    return {pass, out.str()};
}

Result congruence() {
    std::mt19937_64 rng(kCorpusSeed + 1);
    gt::CongruenceStats total;
    while (total.cases < 10000) {
        const auto s = gt::congruence_sweep(rng, 20, 8);
        total.cases += s.cases;
        total.admissible += s.admissible;
        total.mismatches += s.mismatches;
        if (total.first_mismatch.empty()) {
            total.first_mismatch = s.first_mismatch;
        }
    }
    return {total.mismatches == 0, std::to_string(total.cases) + " cases (" + std::to_string(total.admissible) +
                                       " admissible), " + std::to_string(total.mismatches) + " mismatches" +
                                       (total.first_mismatch.empty() ? "" : "; first: " + total.first_mismatch)};
}

Result homomorphy() {
    std::mt19937_64 rng(kCorpusSeed + 2);
    std::size_t joins = 0;
    std::size_t mixes = 0;
    std::size_t bad = 0;
    std::string first;
    const auto note = [&](const std::optional<std::string>& m, const std::string& what) {
        if (m) {
            ++bad;
            if (first.empty()) {
                first = what + ": " + *m;
            }
        }
    };
    ExploreOptions options;
    options.max_depth = 3;
    for (std::size_t k = 0; joins < 1000; ++k) {
        const auto& sys = corpus().lts[k % corpus().lts.size()];
        const auto id = k % 2 == 0 ? SemanticsId::Trace : SemanticsId::Failure;
        std::vector<DetState> seeds;
        for (StateId x = 0; x < num_states(*sys); ++x) {
            seeds.push_back(eta(id, x));
        }
        const auto g = explore(id, *sys, seeds, options);
        const auto& a = g.node(gt::uniform(rng, 0, g.size() - 1)).state;
        const auto& b = g.node(gt::uniform(rng, 0, g.size() - 1)).state;
        note(gt::join_mismatch(id, *sys, a, b), std::string(to_string(id)) + " " + to_string(a) + " + " + to_string(b));
        ++joins;
    }
    for (std::size_t k = 0; mixes < 1000; ++k) {
        const auto& sys = corpus().pts[k % corpus().pts.size()];
        std::vector<DetState> seeds;
        for (StateId x = 0; x < num_states(*sys); ++x) {
            seeds.push_back(DetState::dirac(x));
        }
        const auto g = explore(SemanticsId::ProbabilisticTrace, *sys, seeds, options);
        const auto& a = g.node(gt::uniform(rng, 0, g.size() - 1)).state;
        const auto& b = g.node(gt::uniform(rng, 0, g.size() - 1)).state;
        const Rational w(static_cast<long>(gt::uniform(rng, 1, 6)), 7L);
        note(gt::mix_mismatch(*sys, a, b, w), to_string(a) + " mixed with " + to_string(b));
        ++mixes;
    }
    return {bad == 0, std::to_string(joins) + " reachable pairs joined (trace, failure), " + std::to_string(mixes) +
                          " reachable pairs mixed (probabilistic), " + std::to_string(bad) + " mismatches" +
                          (first.empty() ? "" : "; first: " + first)};
}

Result exact_arithmetic() {
    std::size_t calls = 0;
    std::size_t bad = 0;
    std::size_t witnesses = 0;
    std::size_t witness_bad = 0;
    std::size_t skipped = 0;
    for (const auto& sys : corpus().pts) {
        const auto& pts = std::get<ProbabilisticTransitionSystem>(*sys);
        for (StateId x = 0; x < pts.num_states(); ++x) {
            for (std::size_t n = 0; n <= 4; ++n) {
                Rational total = 0;
                for (const auto& [w, p] : oracle::word_distribution(pts, DetState::dirac(x), n)) {
                    total += p;
                }
                ++calls;
                bad += total == 1 ? 0 : 1;
            }
        }
        // witnesses carry the exact word probabilities of both sides
        for (StateId y = 1; y < pts.num_states(); ++y) {
            Verdict v;
            try {
                v = decide(SemanticsId::ProbabilisticTrace, pts, 0, y, Depth::limit(), 300);
            } catch (const BudgetExceeded&) {
                ++skipped;
                continue;
            }
            if (!v.witness) {
                continue;
            }
            const auto& w = std::get<WordProbabilityWitness>(*v.witness);
            const auto left = oracle::word_distribution(pts, DetState::dirac(0), w.word.size());
            const auto right = oracle::word_distribution(pts, DetState::dirac(y), w.word.size());
            const auto prob = [&](const std::map<Word, Rational>& d) {
                const auto it = d.find(w.word);
                return it == d.end() ? Rational(0) : it->second;
            };
            ++witnesses;
            witness_bad += (prob(left) == w.left && prob(right) == w.right && w.left != w.right) ? 0 : 1;
        }
    }
    std::ostringstream out;
    out << calls << " word_distribution calls, " << bad << " not summing to exactly 1; " << witnesses
        << " probabilistic witnesses, " << witness_bad << " inexact";
    if (skipped) {
        out << " (" << skipped << " verdicts over budget)";
    }
    return {bad == 0 && witness_bad == 0 && witnesses > 0, out.str()};
}

struct Criterion {
    const char* name;
    std::function<Result()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {"trace_example", trace_example},
        {"failure_example", failure_example},
        {"finite_game_levels", finite_game_levels},
        {"infinite_game_fixpoint", infinite_game_fixpoint},
        {"degeneracy", degeneracy},
        {"spectrum", spectrum},
        {"congruence", congruence},
        {"homomorphy", homomorphy},
        {"exact_arithmetic", exact_arithmetic},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<const Criterion*> selected;
    for (int k = 1; k < argc; ++k) {
        const std::string name = argv[k];
        const auto it = std::find_if(criteria().begin(), criteria().end(),
                                     [&](const Criterion& c) { return name == c.name; });
        if (it == criteria().end()) {
            std::cerr << "unknown criterion '" << name << "'; known:";
            for (const auto& c : criteria()) {
                std::cerr << " " << c.name;
            }
            std::cerr << "\n";
            return 2;
        }
        selected.push_back(&*it);
    }
    if (selected.empty()) {
        for (const auto& c : criteria()) {
            selected.push_back(&c);
        }
    }
    bool all_pass = true;
    for (const auto* c : selected) {
        const auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c->run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        std::cout << (r.pass ? "PASS " : "FAIL ") << c->name << " (" << std::fixed << std::setprecision(2)
                  << took.count() << " s): " << r.detail << std::endl;
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
