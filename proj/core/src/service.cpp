#include "gradeq/service.hpp"

#include "gradeq/errors.hpp"
#include "gradeq/expr.hpp"

#include <sstream>

namespace gradeq {

namespace {

class HttpError : public std::runtime_error {
  public:
    HttpError(int status, const std::string& message, Json extra = Json::object())
        : std::runtime_error(message), status_(status), extra_(std::move(extra)) {}

    [[nodiscard]] int status() const { return status_; }
    [[nodiscard]] const Json& extra() const { return extra_; }

  private:
    int status_;
    Json extra_;
};

Response json_response(int status, const Json& body) {
    Response r;
    r.status = status;
    r.body = body.dump();
    return r;
}

Response error_response(int status, const std::string& message, const Json& extra = Json::object()) {
    Json body = extra;
    body["error"] = message;
    return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::istringstream in(path);
    std::string part;
    while (std::getline(in, part, '/')) {
        if (!part.empty()) {
            parts.push_back(part);
        }
    }
    return parts;
}

const Json& field(const Json& body, const char* name) {
    if (!body.is_object() || !body.contains(name)) {
        throw HttpError(400, std::string("missing field '") + name + "'");
    }
    return body.at(name);
}

std::string string_field(const Json& body, const char* name) {
    const auto& value = field(body, name);
    if (!value.is_string()) {
        throw HttpError(400, std::string("field '") + name + "' must be a string");
    }
    return value.get<std::string>();
}

SemanticsId semantics_of(const std::string& name) {
    const auto id = parse_semantics(name);
    if (!id) {
        throw HttpError(422, "unknown semantics '" + name + "'");
    }
    return *id;
}

/// A state index or a DetState expression.
DetState det_state_of(SemanticsId id, const Json& value) {
    if (value.is_number_unsigned()) {
        return eta(id, value.get<StateId>());
    }
    if (value.is_string()) {
        return parse_det_state(id, value.get<std::string>());
    }
    throw HttpError(400, "a state is an index or an expression string");
}

/// Integer, "limit" or "infinite".
Depth depth_of(const Json& value) {
    if (value.is_number_unsigned()) {
        return Depth::finite(value.get<std::size_t>());
    }
    if (value.is_string()) {
        return parse_depth(value.get<std::string>());
    }
    throw HttpError(400, "depth is a non-negative integer, \"limit\" or \"infinite\"");
}

/// Integer, or null / "infinite" for the infinite game.
std::optional<std::size_t> rounds_of(const Json& value) {
    if (value.is_number_unsigned()) {
        return value.get<std::size_t>();
    }
    if (value.is_null() || (value.is_string() && (value == "infinite" || value == "inf"))) {
        return std::nullopt;
    }
    throw HttpError(400, "rounds is a non-negative integer, null or \"infinite\"");
}

HumanRole role_of(const Json& body) {
    if (!body.contains("human_role")) {
        return HumanRole::None;
    }
    const auto role = parse_human_role(string_field(body, "human_role"));
    if (!role) {
        throw HttpError(400, "human_role is spoiler, duplicator or none");
    }
    return *role;
}

std::size_t unsigned_field(const Json& body, const char* name, std::size_t fallback) {
    if (!body.contains(name)) {
        return fallback;
    }
    const auto& value = body.at(name);
    if (!value.is_number_unsigned()) {
        throw HttpError(400, std::string("field '") + name + "' must be a non-negative integer");
    }
    return value.get<std::size_t>();
}

Json candidates_json(const GameSession& game) {
    const auto& labels = alphabet(game.system());
    Json out = Json::array();
    if (game.phase() != Phase::AwaitDuplicator) {
        return out;
    }
    for (const auto& c : game.candidates()) {
        out.push_back({{"label", labels.at(c.label)}, {"left", to_string(c.left)}, {"right", to_string(c.right)}});
    }
    return out;
}

} // namespace

Service::Service(ServiceOptions options, Clock clock)
    : options_(std::move(options)), clock_(clock ? std::move(clock) : [] { return std::chrono::steady_clock::now(); }) {}

Response Service::handle(const Request& request) {
    Response response;
    try {
        evict_expired();
        response = route(request);
    } catch (const HttpError& e) {
        response = error_response(e.status(), e.what(), e.extra());
    } catch (const Json::exception& e) {
        response = error_response(400, std::string("malformed request: ") + e.what());
    } catch (const BudgetExceeded& e) {
        response = error_response(422, e.what(), {{"budget", e.budget()}, {"frontier", e.frontier()}});
    } catch (const Error& e) {
        response = error_response(422, e.what());
    }
    response.headers["Access-Control-Allow-Origin"] = options_.cors_origin;
    response.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";
    response.headers["Access-Control-Allow-Headers"] = "Content-Type";
    return response;
}

Response Service::route(const Request& request) {
    const auto parts = split_path(request.path);
    if (request.method == "OPTIONS") {
        Response r;
        r.status = 204;
        return r;
    }
    const auto body = [&] {
        if (request.body.empty()) {
            return Json::object();
        }
        try {
            return Json::parse(request.body);
        } catch (const Json::parse_error& e) {
            throw HttpError(400, std::string("body is not JSON: ") + e.what());
        }
    };
    const bool get = request.method == "GET";
    const bool post = request.method == "POST";
    if (parts.size() == 1 && parts[0] == "systems" && post) {
        return post_system(body());
    }
    if (parts.size() == 2 && parts[0] == "systems" && get) {
        return get_system(parts[1]);
    }
    if (parts.size() == 3 && parts[0] == "systems" && parts[2] == "determinization" && get) {
        return determinization(parts[1], request);
    }
    if (parts.size() == 1 && parts[0] == "check" && post) {
        return post_check(body());
    }
    if (parts.size() == 1 && parts[0] == "sessions" && post) {
        return post_session(body());
    }
    if (parts.size() == 2 && parts[0] == "sessions" && get) {
        return get_session(parts[1]);
    }
    if (parts.size() == 3 && parts[0] == "sessions" && parts[2] == "move" && post) {
        return post_move(parts[1], body());
    }
    if (parts.size() == 1 && parts[0] == "replay" && post) {
        return post_replay(body());
    }
    const bool known = !parts.empty() && (parts[0] == "systems" || parts[0] == "check" || parts[0] == "sessions" ||
                                          parts[0] == "replay");
    if (known && parts.size() <= 3) {
        throw HttpError(405, "method " + request.method + " not allowed on " + request.path);
    }
    throw HttpError(404, "no route for " + request.path);
}

// --- systems -------------------------------------------------------------------

Response Service::post_system(const Json& body) {
    const auto kind = body.value("kind", std::string("aut"));
    const auto text = string_field(body, "text");
    StoredSystem stored;
    if (kind == "aut") {
        std::vector<std::string> extra;
        if (body.contains("alphabet")) {
            extra = body.at("alphabet").get<std::vector<std::string>>();
        }
        ParseDiagnostics diagnostics;
        stored.system = std::make_shared<const TransitionSystem>(parse_aut(text, &diagnostics, extra));
        stored.warnings = std::move(diagnostics.warnings);
    } else if (kind == "pts") {
        stored.system = std::make_shared<const TransitionSystem>(parse_pts(text));
    } else {
        throw HttpError(400, "kind is \"aut\" or \"pts\"");
    }
    Json out = system_to_json(*stored.system);
    out["warnings"] = stored.warnings;
    {
        std::unique_lock lock(mutex_);
        const auto id = "sys-" + std::to_string(next_system_++);
        out["system_id"] = id;
        systems_.emplace(id, std::move(stored));
    }
    return json_response(201, out);
}

std::shared_ptr<const TransitionSystem> Service::system(const std::string& id) const {
    std::shared_lock lock(mutex_);
    const auto it = systems_.find(id);
    if (it == systems_.end()) {
        throw HttpError(404, "unknown system '" + id + "'");
    }
    return it->second.system;
}

Response Service::get_system(const std::string& id) {
    Json out = system_to_json(*system(id));
    out["system_id"] = id;
    return json_response(200, out);
}

Response Service::determinization(const std::string& id, const Request& request) {
    const auto sys = system(id);
    const auto sem = request.query.find("semantics");
    if (sem == request.query.end()) {
        throw HttpError(400, "missing query parameter 'semantics'");
    }
    const auto semantics = semantics_of(sem->second);
    check_instance(semantics, *sys);
    std::vector<DetState> seeds;
    if (const auto it = request.query.find("seeds"); it != request.query.end()) {
        std::istringstream in(it->second);
        std::string part;
        while (std::getline(in, part, ';')) {
            if (part.find_first_not_of(' ') != std::string::npos) {
                seeds.push_back(parse_det_state(semantics, part));
            }
        }
    } else {
        const auto* lts = std::get_if<LabelledTransitionSystem>(sys.get());
        seeds.push_back(eta(semantics, lts ? lts->initial() : 0));
    }
    for (const auto& s : seeds) {
        validate_det_state(semantics, *sys, s);
    }
    ExploreOptions options;
    options.budget = options_.budget;
    if (const auto it = request.query.find("budget"); it != request.query.end()) {
        options.budget = std::stoul(it->second);
    }
    if (const auto it = request.query.find("max_depth"); it != request.query.end()) {
        options.max_depth = std::stoul(it->second);
    }
    const auto g = explore(semantics, *sys, seeds, options);
    const auto format = request.query.count("format") ? request.query.at("format") : std::string("json");
    if (format == "dot") {
        Response r;
        r.body = determinization_to_dot(g);
        r.content_type = "text/vnd.graphviz";
        return r;
    }
    if (format != "json") {
        throw HttpError(400, "format is json or dot");
    }
    return json_response(200, determinization_to_json(g));
}

// --- checks ---------------------------------------------------------------------

Response Service::post_check(const Json& body) {
    const auto sys = system(string_field(body, "system_id"));
    const auto semantics = semantics_of(string_field(body, "semantics"));
    const auto left = det_state_of(semantics, field(body, "left"));
    const auto right = det_state_of(semantics, field(body, "right"));
    const auto depth = body.contains("depth") ? depth_of(body.at("depth")) : Depth::limit();
    const auto budget = unsigned_field(body, "budget", options_.budget);
    check_instance(semantics, *sys);
    validate_det_state(semantics, *sys, left);
    validate_det_state(semantics, *sys, right);
    const auto verdict = decide_pair_detstates(semantics, *sys, left, right, depth, budget);
    Json out = verdict_to_json(verdict, alphabet(*sys));
    out["semantics"] = to_string(semantics);
    out["left"] = to_string(left);
    out["right"] = to_string(right);
    out["requested_depth"] = to_string(depth);
    return json_response(200, out);
}

// --- sessions -------------------------------------------------------------------

std::shared_ptr<Service::ApiSession> Service::session(const std::string& id) {
    std::shared_lock lock(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        throw HttpError(404, "unknown session '" + id + "'");
    }
    return it->second;
}

Json Service::snapshot(ApiSession& s) const {
    auto& game = *s.game;
    const auto& labels = alphabet(game.system());
    Json out;
    out["session_id"] = s.id;
    out["system_id"] = s.system_id;
    out["version"] = s.version;
    out["semantics"] = to_string(game.semantics());
    out["human_role"] = to_string(game.human_role());
    out["rounds"] = game.rounds() ? Json(*game.rounds()) : Json(nullptr);
    out["rounds_left"] = game.rounds_left() ? Json(*game.rounds_left()) : Json(nullptr);
    out["rounds_played"] = game.rounds_played();
    out["phase"] = to_string(game.phase());
    out["to_move"] = game.to_move() ? Json(to_string(*game.to_move())) : Json(nullptr);
    out["initial"] = configuration_to_json(game.initial());
    out["config"] = configuration_to_json(game.config());
    out["pending"] = relation_to_json(game.pending());
    out["candidate_pairs"] = candidates_json(game);
    out["strikes"] = game.strikes();
    out["max_strikes"] = game.options().max_strikes;
    out["transcript"] = transcript_to_json(game.transcript());
    out["outcome"] = game.outcome() ? Json{{"winner", to_string(game.outcome()->winner)},
                                           {"reason", game.outcome()->reason}}
                                    : Json(nullptr);
    Json hint = nullptr;
    if (game.phase() == Phase::AwaitDuplicator) {
        const auto verdict = game.engine_verdict();
        const auto z = game.engine_duplicator_move();
        hint = {{"kind", z ? "duplicator_relation" : "resign"},
                {"relation", z ? relation_to_json(*z) : Json(nullptr)},
                {"verdict", verdict_to_json(verdict, labels)}};
    } else if (game.phase() == Phase::AwaitSpoiler && !game.pending().empty()) {
        hint = {{"kind", "spoiler_pick"}, {"pair", move_pair_to_json(game.engine_spoiler_move())}};
    }
    out["engine_hint"] = hint;
    return out;
}

Response Service::post_session(const Json& body) {
    const auto system_id = string_field(body, "system_id");
    const auto sys = system(system_id);
    const auto semantics = semantics_of(string_field(body, "semantics"));
    const auto left = det_state_of(semantics, field(body, "left"));
    const auto right = det_state_of(semantics, field(body, "right"));
    const auto rounds = body.contains("rounds") ? rounds_of(body.at("rounds")) : std::optional<std::size_t>(3);
    GameOptions game_options;
    game_options.budget = unsigned_field(body, "budget", options_.budget);
    game_options.max_strikes = unsigned_field(body, "max_strikes", game_options.max_strikes);
    auto s = std::make_shared<ApiSession>();
    s->game = std::make_unique<GameSession>(semantics, sys, left, right, rounds, role_of(body), game_options);
    s->system_id = system_id;
    s->created = s->last_activity = clock_();
    {
        std::unique_lock lock(mutex_);
        s->id = "ses-" + std::to_string(next_session_++);
        sessions_.emplace(s->id, s);
    }
    std::lock_guard guard(s->mutex);
    return json_response(201, snapshot(*s));
}

Response Service::get_session(const std::string& id) {
    const auto s = session(id);
    std::lock_guard guard(s->mutex);
    s->last_activity = clock_();
    return json_response(200, snapshot(*s));
}

Response Service::post_move(const std::string& id, const Json& body) {
    const auto s = session(id);
    std::lock_guard guard(s->mutex);
    s->last_activity = clock_();
    auto& game = *s->game;
    const auto version = field(body, "version");
    if (!version.is_number_unsigned() || version.get<std::uint64_t>() != s->version) {
        throw HttpError(409, "stale version: session is at version " + std::to_string(s->version),
                        {{"version", s->version}});
    }
    const auto kind = string_field(body, "kind");
    const Json payload = body.value("payload", Json::object());
    if (game.phase() == Phase::Finished) {
        throw HttpError(422, "the game is over");
    }
    if (kind == "duplicator_relation") {
        if (game.human_role() == HumanRole::Spoiler) {
            throw HttpError(422, "Duplicator is played by the engine in this session");
        }
        const auto& rel = payload.is_object() && payload.contains("relation") ? payload.at("relation") : payload;
        const auto z = relation_from_json(game.semantics(), rel.is_object() && rel.empty() ? Json::array() : rel);
        const auto result = game.duplicator_move(z);
        ++s->version;
        if (!result.admissible) {
            throw HttpError(422, "inadmissible relation",
                            {{"explanation", result.explanation}, {"snapshot", snapshot(*s)}});
        }
    } else if (kind == "spoiler_pick") {
        if (game.human_role() == HumanRole::Duplicator) {
            throw HttpError(422, "Spoiler is played by the engine in this session");
        }
        MovePair pick;
        if (game.phase() != Phase::AwaitSpoiler) {
            throw HttpError(422, "cannot pick a pair while the session is in phase " +
                                     std::string(to_string(game.phase())));
        }
        if (payload.is_object() && payload.contains("index")) {
            const auto k = payload.at("index").get<std::size_t>();
            if (k >= game.pending().size()) {
                throw HttpError(422, "pick index " + std::to_string(k) + " out of range");
            }
            pick = game.pending()[k];
        } else if (payload.is_string()) {
            pick = parse_move_pair(game.semantics(), payload.get<std::string>());
        } else {
            pick = move_pair_from_json(game.semantics(), payload.contains("pair") ? payload.at("pair") : payload);
        }
        game.spoiler_pick(pick);
        ++s->version;
    } else if (kind == "request_engine_move") {
        const bool until_finished = payload.is_object() && payload.value("until_finished", false);
        // engine-only infinite play ends on a repeated configuration or at the round cap
        const auto cap = 2 * game.det_state_count();
        do {
            if (!game.rounds() && game.human_role() == HumanRole::None && game.phase() == Phase::AwaitDuplicator) {
                if (game.configuration_repeats()) {
                    game.claim_cycle();
                    break;
                }
                if (game.rounds_played() >= cap) {
                    game.claim_cap(cap);
                    break;
                }
            }
            game.play_engine_turn();
        } while (until_finished && game.phase() != Phase::Finished);
        ++s->version;
    } else {
        throw HttpError(400, "kind is duplicator_relation, spoiler_pick or request_engine_move");
    }
    return json_response(200, snapshot(*s));
}

Response Service::post_replay(const Json& body) {
    const auto sys = system(string_field(body, "system_id"));
    const auto semantics = semantics_of(string_field(body, "semantics"));
    const auto left = det_state_of(semantics, field(body, "left"));
    const auto right = det_state_of(semantics, field(body, "right"));
    const auto rounds = body.contains("rounds") ? rounds_of(body.at("rounds")) : std::optional<std::size_t>(3);
    const auto& transcript = field(body, "transcript");
    GameOptions game_options;
    game_options.budget = unsigned_field(body, "budget", options_.budget);
    game_options.max_strikes = unsigned_field(body, "max_strikes", game_options.max_strikes);
    std::unique_ptr<GameSession> game;
    try {
        game = replay_transcript(semantics, sys, left, right, rounds, role_of(body),
                                 transcript_from_json(semantics, transcript), game_options);
    } catch (const GameError& e) {
        throw HttpError(422, e.what(), {{"valid", false}});
    }
    const auto rendered = transcript_to_json(game->transcript());
    Json out{{"valid", true},
             {"identical", rendered.dump() == transcript.dump()},
             {"phase", to_string(game->phase())},
             {"config", configuration_to_json(game->config())},
             {"transcript", rendered}};
    out["outcome"] = game->outcome() ? Json{{"winner", to_string(game->outcome()->winner)},
                                            {"reason", game->outcome()->reason}}
                                     : Json(nullptr);
    return json_response(200, out);
}

// --- housekeeping ---------------------------------------------------------------

std::size_t Service::evict_expired() {
    const auto now = clock_();
    std::unique_lock lock(mutex_);
    std::size_t dropped = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
        // a session busy with a request is active by definition
        if (session_lock.owns_lock() && now - it->second->last_activity > options_.session_ttl) {
            session_lock.unlock();
            it = sessions_.erase(it);
            ++dropped;
        } else {
            ++it;
        }
    }
    return dropped;
}

std::size_t Service::session_count() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

} // namespace gradeq
