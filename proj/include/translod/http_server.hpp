#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include <httplib.h>

#include "translod/error.hpp"
#include "translod/server.hpp"

namespace translod::publish {

/// Binds a Publisher to HTTP routes. listen() blocks for the command line;
/// start_background() grabs an ephemeral port so tests can talk to a live
/// socket and shut it down again.
class HttpServer {
 public:
  explicit HttpServer(const Publisher& publisher) : publisher_(publisher) {
    auto not_allowed = [](const httplib::Request&, httplib::Response& res) {
      res.status = 405;
      res.set_content("method not allowed\n", "text/plain");
    };

    server_.Get(publisher_.config().resource_prefix + ".*",
                [this](const httplib::Request& req, httplib::Response& res) {
                  apply(publisher_.resource(req.path, accept_of(req)), res);
                });
    server_.Get("/sparql",
                [this](const httplib::Request& req, httplib::Response& res) {
                  apply(publisher_.sparql(query_of(req), accept_of(req)), res);
                });
    server_.Post("/sparql",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   apply(publisher_.sparql(query_of(req), accept_of(req)), res);
                 });
    server_.Put("/sparql", not_allowed);
    server_.Patch("/sparql", not_allowed);
    server_.Delete("/sparql", not_allowed);
    server_.Get("/void", [this](const httplib::Request&, httplib::Response& res) {
      apply(publisher_.void_document(), res);
    });
    server_.Get("/sitemap.xml",
                [this](const httplib::Request&, httplib::Response& res) {
                  apply(publisher_.sitemap_document(), res);
                });
    server_.Get("/dump.nt",
                [this](const httplib::Request&, httplib::Response& res) {
                  apply(publisher_.dump_document(), res);
                });
  }

  ~HttpServer() { stop(); }
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  bool listen() {
    const ServerConfig& config = publisher_.config();
    return server_.listen(config.host, config.port);
  }

  int start_background() {
    int port = server_.bind_to_any_port(publisher_.config().host);
    if (port <= 0) throw Error("could not bind to an ephemeral port");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return port;
  }

  void stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

 private:
  static std::optional<std::string> accept_of(const httplib::Request& req) {
    if (!req.has_header("Accept")) return std::nullopt;
    return req.get_header_value("Accept");
  }

  static std::optional<std::string> query_of(const httplib::Request& req) {
    if (!req.has_param("query")) return std::nullopt;
    return req.get_param_value("query");
  }

  static void apply(const HttpResponse& response, httplib::Response& res) {
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  }

  const Publisher& publisher_;
  httplib::Server server_;
  std::thread thread_;
};

}  // namespace translod::publish
