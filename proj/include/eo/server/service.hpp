#pragma once

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eo/engine/engine.hpp"

namespace eo::server {

/// Status code plus JSON body; what every endpoint returns.
struct Reply {
  int status = 200;
  nlohmann::ordered_json body;
};

/// HTTP status for an engine error: 404 unknown names, 409 gated writes,
/// 422 invalid values or blocks.
int status_for(Errc code) noexcept;

/// The engine behind one lock. Writes run a whole cascade while holding it;
/// readers wait at most that long.
class Service {
 public:
  explicit Service(std::unique_ptr<engine::Engine> engine);

  Reply get_state(const std::string& individual) const;
  Reply get_actions(const std::string& individual) const;
  /// Body: {"individual", "property", "value"}.
  Reply post_event(std::string_view body, const std::string& actor);
  Reply get_views() const;
  Reply get_view(const std::string& name) const;
  Reply post_models(std::string_view bsl, const std::string& actor);

  /// Events with seq > since, waiting up to `wait` for at least one.
  std::vector<graph::Event> events_since(graph::Seq since, std::chrono::milliseconds wait) const;
  std::string export_log() const;

  /// Wakes every waiting stream so it can notice shutdown.
  void shutdown();
  bool stopping() const;

 private:
  nlohmann::ordered_json view_payload(const bsl::ViewDecl& v) const;
  void notify();

  mutable std::mutex mu_;
  mutable std::condition_variable changed_;
  std::unique_ptr<engine::Engine> engine_;
  bool stopping_ = false;
};

}  // namespace eo::server
