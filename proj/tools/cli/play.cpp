#include "commands.hpp"

#include "gradeq/errors.hpp"
#include "gradeq/expr.hpp"
#include "gradeq/game.hpp"
#include "gradeq/json_io.hpp"

#include <fstream>
#include <iostream>

namespace gradeq::cli {

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    return text.substr(first, text.find_last_not_of(" \t\r") - first + 1);
}

void print_event(std::ostream& out, const TranscriptEvent& e) {
    out << "  " << to_string(e.actor) << " ";
    switch (e.kind) {
    case EventKind::Relation:
        out << "plays Z = " << to_string(e.relation) << "\n";
        break;
    case EventKind::Rejected:
        out << "proposes " << to_string(e.relation) << ": rejected, " << e.note << "\n";
        break;
    case EventKind::Pick:
        out << "picks " << to_string(*e.pick) << "\n";
        break;
    case EventKind::Resign:
        out << "resigns\n";
        break;
    case EventKind::Cycle:
        out << "claims a repeated configuration\n";
        break;
    case EventKind::Cap:
        out << "reaches the round cap\n";
        break;
    }
}

void print_state(std::ostream& out, GameSession& game, bool hints) {
    const auto& c = game.config();
    out << "round " << game.rounds_played() + 1;
    if (const auto left = game.rounds_left()) {
        out << " (" << *left << " left)";
    }
    out << ": " << to_string(c.left) << " " << to_string(c.claim) << " " << to_string(c.right) << "\n";
    if (game.phase() == Phase::AwaitDuplicator) {
        const auto& labels = alphabet(game.system());
        out << "  continuation pairs:";
        for (const auto& p : game.candidates()) {
            out << "  " << labels.at(p.label) << ": " << to_string(p.left) << "|" << to_string(p.right);
        }
        out << "\n";
        if (hints) {
            const auto z = game.engine_duplicator_move();
            out << "  hint: " << (z ? to_string(*z) : std::string("resign")) << "\n";
        }
    } else if (game.phase() == Phase::AwaitSpoiler) {
        const auto& z = game.pending();
        for (std::size_t k = 0; k < z.size(); ++k) {
            out << "  [" << k << "] " << to_string(z[k]) << "\n";
        }
        if (hints && !z.empty()) {
            out << "  hint: " << to_string(game.engine_spoiler_move()) << "\n";
        }
    }
}

/// One human move; false when the input ends or the player quits.
bool human_move(GameSession& game, std::istream& in, std::ostream& out, bool hints) {
    const bool duplicator = game.phase() == Phase::AwaitDuplicator;
    for (;;) {
        out << (duplicator ? "Z> " : "pick> ") << std::flush;
        std::string line;
        if (!std::getline(in, line)) {
            out << "\n";
            return false;
        }
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (line == "quit") {
            return false;
        }
        if (line == "hint") {
            print_state(out, game, true);
            continue;
        }
        try {
            if (line == "engine") {
                game.play_engine_turn();
            } else if (duplicator && line == "resign") {
                game.resign();
            } else if (duplicator) {
                const auto result = game.duplicator_move(parse_relation(game.semantics(), line));
                if (!result.admissible) {
                    out << "  rejected: " << result.explanation << " (strike " << game.strikes() << " of "
                        << game.options().max_strikes << ")\n";
                    if (game.phase() != Phase::Finished && hints) {
                        print_state(out, game, hints);
                    }
                    if (game.phase() == Phase::Finished) {
                        return true;
                    }
                    continue;
                }
            } else if (line.find_first_not_of("0123456789") == std::string::npos) {
                const auto k = std::stoul(line);
                if (k >= game.pending().size()) {
                    out << "  no pair [" << k << "]\n";
                    continue;
                }
                game.spoiler_pick(game.pending()[k]);
            } else {
                game.spoiler_pick(parse_move_pair(game.semantics(), line));
            }
        } catch (const ValidationError& e) {
            out << "  malformed move: " << e.what() << "\n";
            continue;
        } catch (const Error& e) {
            out << "  " << e.what() << "\n";
            continue;
        }
        print_event(out, game.transcript().back());
        return true;
    }
}

} // namespace

int run_play(const PlayConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    std::unique_ptr<GameSession> game;
    try {
        const auto id = semantics_flag(cfg.common.semantics);
        const auto sys = std::make_shared<const TransitionSystem>(load_system(cfg.common));
        check_instance(id, *sys);
        const auto [s, t] = compared_pair(cfg.common, id, *sys);
        std::optional<std::size_t> rounds;
        if (cfg.rounds != "infinite" && cfg.rounds != "inf") {
            rounds = std::stoul(cfg.rounds);
        }
        const auto role = parse_human_role(cfg.role);
        if (!role) {
            throw ValidationError("--role is duplicator, spoiler or none");
        }
        GameOptions options;
        options.budget = cfg.common.budget;
        options.max_strikes = cfg.max_strikes;
        if (!cfg.replay.empty()) {
            std::ifstream file(cfg.replay);
            const auto saved = Json::parse(file);
            game = replay_transcript(id, sys, s, t, rounds, *role, transcript_from_json(id, saved.at("transcript")),
                                     options);
            for (const auto& e : game->transcript()) {
                print_event(out, e);
            }
        } else {
            game = std::make_unique<GameSession>(id, sys, s, t, rounds, *role, options);
        }

        out << to_string(id) << " game on " << to_string(s) << " vs " << to_string(t) << ", "
            << (rounds ? std::to_string(*rounds) + " rounds" : std::string("infinite")) << ", you play "
            << to_string(*role) << "\n";
        const auto cap = 2 * game->det_state_count();
        while (game->phase() != Phase::Finished) {
            print_state(out, *game, cfg.hints && !game->engine_to_move());
            if (game->engine_to_move()) {
                if (!rounds && *role == HumanRole::None && game->phase() == Phase::AwaitDuplicator) {
                    if (game->configuration_repeats()) {
                        game->claim_cycle();
                    } else if (game->rounds_played() >= cap) {
                        game->claim_cap(cap);
                    } else {
                        game->play_engine_turn();
                    }
                } else {
                    game->play_engine_turn();
                }
                print_event(out, game->transcript().back());
                continue;
            }
            if (!human_move(*game, in, out, cfg.hints)) {
                break;
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    if (!cfg.transcript.empty()) {
        Json saved{{"semantics", to_string(game->semantics())},
                   {"left", to_string(game->initial().left)},
                   {"right", to_string(game->initial().right)},
                   {"rounds", game->rounds() ? Json(*game->rounds()) : Json("infinite")},
                   {"human_role", to_string(game->human_role())},
                   {"max_strikes", game->options().max_strikes},
                   {"transcript", transcript_to_json(game->transcript())}};
        std::ofstream file(cfg.transcript);
        if (!(file << saved.dump(2) << "\n")) {
            err << "error: cannot write " << cfg.transcript << "\n";
            return kExitError;
        }
    }
    if (!game->outcome()) {
        err << "game left unfinished\n";
        return kExitError;
    }
    out << to_string(game->outcome()->winner) << " wins: " << game->outcome()->reason << "\n";
    return game->outcome()->winner == Player::Duplicator ? kExitEquivalent : kExitDistinguished;
}

} // namespace gradeq::cli
