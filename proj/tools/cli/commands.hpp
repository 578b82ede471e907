#pragma once

#include "gradeq/engine.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gradeq::cli {

inline constexpr int kExitEquivalent = 0;
inline constexpr int kExitDistinguished = 1;
inline constexpr int kExitError = 2;

/// Flags shared by every subcommand that reads a system.
struct Common {
    std::string input;
    std::string semantics;
    std::vector<std::string> alphabet; // extra labels for .aut input
    std::vector<StateId> states;       // --states x y
    std::vector<std::string> sets;     // --set EXPR (repeatable)
    std::size_t budget = kDefaultBudget;
    std::string format = "text";
};

struct CheckConfig {
    Common common;
    std::string depth = "limit";
    bool oracle = false;
};

struct DeterminizeConfig {
    Common common;
    std::optional<std::size_t> max_depth;
    std::string output; // stdout when empty
};

struct OracleConfig {
    Common common;
    std::size_t depth = 4;
};

struct PlayConfig {
    Common common;
    std::string rounds = "3";
    std::string role = "duplicator";
    bool hints = false;
    std::string transcript; // written on exit when set
    std::string replay;     // saved transcript to replay instead of reading moves
    std::size_t max_strikes = 3;
};

struct ServeConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t budget = kDefaultBudget;
    long ttl_seconds = 3600;
    std::string cors_origin = "*";
};

int run_check(const CheckConfig& cfg, std::ostream& out, std::ostream& err);
int run_determinize(const DeterminizeConfig& cfg, std::ostream& out, std::ostream& err);
int run_oracle(const OracleConfig& cfg, std::ostream& out, std::ostream& err);
int run_play(const PlayConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int run_serve(const ServeConfig& cfg, std::ostream& err);

// helpers shared by the subcommands

TransitionSystem load_system(const Common& common);
SemanticsId semantics_flag(const std::string& name);
/// The two compared det states from --states or --set.
std::pair<DetState, DetState> compared_pair(const Common& common, SemanticsId id, const TransitionSystem& sys);

} // namespace gradeq::cli
