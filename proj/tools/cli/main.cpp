#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr const char* kStateSyntax = R"(State expressions:
  i              a single state (eta of i under the chosen semantics)
  {i,j,k}        a set of states (trace, serial-trace, failure)
  {i:1/2, j:1/2} a distribution (probabilistic-trace)
  a pair is "S = T", or "S <= T" / "S >= T" for simulation claims;
  a relation is pairs separated by ';', or "empty".
Exit codes: 0 equivalent / Duplicator wins, 1 distinguished / Spoiler wins, 2 error.)";

void add_common(CLI::App* cmd, gradeq::cli::Common& common) {
    cmd->add_option("input", common.input, ".aut or .pts file")->required()->check(CLI::ExistingFile);
    cmd->add_option("-s,--semantics", common.semantics,
                    "bisimilarity | trace | serial-trace | probabilistic-trace | simulation | failure")
        ->required();
    cmd->add_option("--alphabet", common.alphabet, "extra labels for .aut input (comma separated)")->delimiter(',');
    cmd->add_option("--states", common.states, "two state indices")->expected(2)->allow_extra_args(false);
    cmd->add_option("--set", common.sets, "det state expression, repeatable")->take_all();
    cmd->add_option("-b,--budget", common.budget, "det state budget")->envname("GRADEQ_BUDGET");
}

} // namespace

int main(int argc, char** argv) {
    using namespace gradeq::cli;
    CLI::App app{"Graded behavioural equivalence checker and game"};
    app.footer(kStateSyntax);
    app.require_subcommand(1);

    CheckConfig check;
    auto* check_cmd = app.add_subcommand("check", "decide equivalence of two states");
    add_common(check_cmd, check.common);
    check_cmd->add_option("-d,--depth", check.depth, "integer, limit or infinite")->capture_default_str();
    check_cmd->add_option("-f,--format", check.common.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    check_cmd->add_flag("--oracle", check.oracle, "cross-check against the reference oracles")->group("");

    DeterminizeConfig det;
    auto* det_cmd = app.add_subcommand("determinize", "explore the reachable pre-determinization");
    add_common(det_cmd, det.common);
    det_cmd->add_option("--max-depth", det.max_depth, "stop exploring below this depth");
    det_cmd->add_option("-o,--output", det.output, "write to a file instead of stdout");
    det_cmd->add_option("-f,--format", det.common.format, "text | json | dot")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();

    OracleConfig oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "compare engine levels with the reference oracles");
    add_common(oracle_cmd, oracle.common);
    oracle_cmd->add_option("-d,--depth", oracle.depth, "deepest level compared")->capture_default_str();
    oracle_cmd->add_option("-f,--format", oracle.common.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    PlayConfig play;
    auto* play_cmd = app.add_subcommand("play", "play the game in the terminal");
    add_common(play_cmd, play.common);
    play_cmd->add_option("-r,--rounds", play.rounds, "number of rounds or infinite")->capture_default_str();
    play_cmd->add_option("--role", play.role, "duplicator | spoiler | none")
        ->check(CLI::IsMember({"duplicator", "spoiler", "none"}))
        ->capture_default_str();
    play_cmd->add_flag("--hints", play.hints, "show the engine's move before each of yours");
    play_cmd->add_option("--transcript", play.transcript, "save the transcript as JSON on exit");
    play_cmd->add_option("--replay", play.replay, "replay a saved transcript instead of reading moves")
        ->check(CLI::ExistingFile);
    play_cmd->add_option("--max-strikes", play.max_strikes, "inadmissible moves before forfeit")
        ->capture_default_str();
    play_cmd->footer("Moves: a relation (Duplicator), a pair index or pair (Spoiler); also hint, engine, resign, quit.");

    ServeConfig serve;
    auto* serve_cmd = app.add_subcommand("serve", "run the JSON API over HTTP");
    serve_cmd->add_option("--host", serve.host)->capture_default_str();
    serve_cmd->add_option("-p,--port", serve.port)->capture_default_str();
    serve_cmd->add_option("-b,--budget", serve.budget, "det state budget")->envname("GRADEQ_BUDGET");
    serve_cmd->add_option("--ttl", serve.ttl_seconds, "idle session lifetime in seconds")->capture_default_str();
    serve_cmd->add_option("--cors-origin", serve.cors_origin)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    if (*check_cmd) {
        return run_check(check, std::cout, std::cerr);
    }
    if (*det_cmd) {
        return run_determinize(det, std::cout, std::cerr);
    }
    if (*oracle_cmd) {
        return run_oracle(oracle, std::cout, std::cerr);
    }
    if (*play_cmd) {
        return run_play(play, std::cin, std::cout, std::cerr);
    }
    return run_serve(serve, std::cerr);
}
