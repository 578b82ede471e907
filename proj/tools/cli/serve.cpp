#include "commands.hpp"

#include "gradeq/service.hpp"

#include <httplib.h>

#include <iostream>

namespace gradeq::cli {

int run_serve(const ServeConfig& cfg, std::ostream& err) {
    ServiceOptions options;
    options.budget = cfg.budget;
    options.session_ttl = std::chrono::seconds(cfg.ttl_seconds);
    options.cors_origin = cfg.cors_origin;
    Service service(options);

    httplib::Server server;
    const auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
        Request request;
        request.method = req.method;
        request.path = req.path;
        request.body = req.body;
        for (const auto& [key, value] : req.params) {
            request.query[key] = value;
        }
        const auto response = service.handle(request);
        res.status = response.status;
        for (const auto& [key, value] : response.headers) {
            res.set_header(key, value);
        }
        if (!response.body.empty()) {
            res.set_content(response.body, response.content_type);
        }
    };
    // every route goes through Service, which owns routing and error mapping
    const std::string any = R"(/.*)";
    server.Get(any, dispatch);
    server.Post(any, dispatch);
    server.Put(any, dispatch);
    server.Delete(any, dispatch);
    server.Options(any, dispatch);

    std::cerr << "serving on http://" << cfg.host << ":" << cfg.port << "\n";
    if (!server.listen(cfg.host, cfg.port)) {
        err << "error: cannot listen on " << cfg.host << ":" << cfg.port << "\n";
        return kExitError;
    }
    return 0;
}

} // namespace gradeq::cli
