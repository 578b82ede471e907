#pragma once

#include "gradeq/game.hpp"
#include "gradeq/json_io.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace gradeq {

/// Transport-neutral HTTP request. `path` excludes the query string.
struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    /// JSON document, or plain text when `content_type` says so (DOT export).
    std::string body;
    std::string content_type = "application/json";
    std::map<std::string, std::string> headers;
};

struct ServiceOptions {
    std::chrono::seconds session_ttl{3600};
    std::size_t budget = kDefaultBudget;
    std::string cors_origin = "*";
};

/// JSON API over systems, checks, determinizations and game sessions.
///
/// Routes:
///   POST /systems, GET /systems/{id}, GET /systems/{id}/determinization,
///   POST /check, POST /sessions, GET /sessions/{id},
///   POST /sessions/{id}/move, POST /replay.
/// Thread-safe: stores are guarded by a shared mutex, each session by its own.
class Service {
  public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    explicit Service(ServiceOptions options = {}, Clock clock = nullptr);

    Response handle(const Request& request);

    /// Drops sessions idle for longer than the TTL; returns how many.
    std::size_t evict_expired();
    [[nodiscard]] std::size_t session_count() const;

  private:
    struct StoredSystem {
        std::shared_ptr<const TransitionSystem> system;
        std::vector<std::string> warnings;
    };
    struct ApiSession {
        std::mutex mutex;
        std::string id;
        std::string system_id;
        std::unique_ptr<GameSession> game;
        std::uint64_t version = 0;
        std::chrono::steady_clock::time_point created;
        std::chrono::steady_clock::time_point last_activity;
    };

    Response route(const Request& request);
    Response post_system(const Json& body);
    Response get_system(const std::string& id);
    Response determinization(const std::string& id, const Request& request);
    Response post_check(const Json& body);
    Response post_session(const Json& body);
    Response get_session(const std::string& id);
    Response post_move(const std::string& id, const Json& body);
    Response post_replay(const Json& body);

    std::shared_ptr<const TransitionSystem> system(const std::string& id) const;
    std::shared_ptr<ApiSession> session(const std::string& id);
    Json snapshot(ApiSession& s) const;

    ServiceOptions options_;
    Clock clock_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, StoredSystem> systems_;
    std::map<std::string, std::shared_ptr<ApiSession>> sessions_;
    std::uint64_t next_system_ = 1;
    std::uint64_t next_session_ = 1;
};

} // namespace gradeq
