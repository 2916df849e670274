#pragma once

#include <memory>
#include <string>

#include "eo/server/service.hpp"

namespace httplib {
class Server;
}

namespace eo::server {

/// HTTP front end:
///   GET  /state/{individual}     slot values
///   GET  /actions/{individual}   action descriptors
///   POST /events                 inject; actor from the X-Actor header
///   GET  /views, /views/{name}   resolved View individuals
///   GET  /stream?since=N         server-sent events; follow=0 ends after the backlog
///   POST /models                 hot-load a BSL block
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace eo::server
