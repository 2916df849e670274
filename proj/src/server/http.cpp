#include "eo/server/http.hpp"

#include <httplib.h>

#include "eo/graph/event_graph.hpp"

namespace eo::server {

namespace {

void send(httplib::Response& res, const Reply& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

std::string actor_of(const httplib::Request& req) {
  auto a = req.get_header_value("X-Actor");
  return a.empty() ? "operator" : a;
}

std::string sse_frame(const graph::Event& e) {
  return "id: " + std::to_string(e.seq) + "\nevent: graph-event\ndata: " + graph::to_jsonl_line(e) + "\n\n";
}

}  // namespace

HttpServer::HttpServer(Service& service) : service_(service), http_(std::make_unique<httplib::Server>()) {
  auto& s = *http_;
  s.Get("/state/:individual", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_state(req.path_params.at("individual")));
  });
  s.Get("/actions/:individual", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_actions(req.path_params.at("individual")));
  });
  s.Post("/events", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.post_event(req.body, actor_of(req)));
  });
  s.Get("/views", [this](const httplib::Request&, httplib::Response& res) { send(res, service_.get_views()); });
  s.Get("/views/:name", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.get_view(req.path_params.at("name")));
  });
  s.Post("/models", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, service_.post_models(req.body, actor_of(req)));
  });
  s.Get("/log", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(service_.export_log(), "application/x-ndjson");
  });

  s.Get("/stream", [this](const httplib::Request& req, httplib::Response& res) {
    graph::Seq since = 0;
    if (req.has_param("since")) {
      try {
        since = std::stoull(req.get_param_value("since"));
      } catch (const std::exception&) {
        send(res, {400, {{"error", "BadRequest"}, {"message", "since must be a sequence number"}}});
        return;
      }
    }
    const bool follow = req.get_param_value("follow") != "0";
    auto cursor = std::make_shared<graph::Seq>(since);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream", [this, cursor, follow](std::size_t, httplib::DataSink& sink) {
          const auto wait = follow ? std::chrono::milliseconds(500) : std::chrono::milliseconds(0);
          for (const auto& e : service_.events_since(*cursor, wait)) {
            const auto frame = sse_frame(e);
            if (!sink.write(frame.data(), frame.size())) return false;
            *cursor = e.seq;
          }
          if (!follow || service_.stopping()) sink.done();
          return true;
        });
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return http_->bind_to_any_port(host);
  return http_->bind_to_port(host, port) ? port : -1;
}

void HttpServer::listen() { http_->listen_after_bind(); }

void HttpServer::stop() {
  service_.shutdown();
  http_->stop();
}

}  // namespace eo::server
