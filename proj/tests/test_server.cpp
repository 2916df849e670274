#include <doctest.h>

#include <httplib.h>

#include <thread>

#include "eo/harness/run.hpp"
#include "eo/harness/scenario.hpp"
#include "eo/server/http.hpp"
#include "eo/server/service.hpp"

using namespace eo;
using namespace eo::server;

namespace {

std::unique_ptr<engine::Engine> baseline_engine() {
  harness::Scenario s;
  s.extensions.recharge = true;
  return harness::prepare_engine(s);
}

/// Server on a free port for the lifetime of the fixture.
struct Running {
  Service service{baseline_engine()};
  HttpServer http{service};
  int port = http.bind("127.0.0.1", 0);
  std::thread thread{[this] { http.listen(); }};
  httplib::Client client{"127.0.0.1", port};

  Running() { client.set_read_timeout(5, 0); }
  ~Running() {
    http.stop();
    thread.join();
  }
};

nlohmann::json body(const httplib::Result& r) { return nlohmann::json::parse(r->body); }

}  // namespace

TEST_CASE("status mapping") {
  CHECK(status_for(Errc::UnknownIndividual) == 404);
  CHECK(status_for(Errc::UnknownSlot) == 404);
  CHECK(status_for(Errc::ConditionNotMet) == 409);
  CHECK(status_for(Errc::ImmutableViolation) == 409);
  CHECK(status_for(Errc::ValueConditionViolation) == 422);
  CHECK(status_for(Errc::TypeMismatch) == 422);
}

TEST_CASE("service without sockets") {
  Service svc(baseline_engine());
  auto state = svc.get_state("Delivery 1");
  CHECK(state.status == 200);
  CHECK(state.body["model"] == "Model Delivery");
  CHECK(state.body["slots"]["objectLoc"] == "Loc B");
  CHECK(state.body["slots"].begin().key() == "robot");
  CHECK(svc.get_state("Ghost").status == 404);

  auto actions = svc.get_actions("Delivery 1");
  REQUIRE(actions.body.size() == 4);
  CHECK(actions.body[0]["property"] == "cameObjectLocation");
  CHECK(actions.body[0]["available"] == true);
  CHECK(actions.body[1]["available"] == false);

  CHECK(svc.post_event("not json", "operator").status == 400);
  CHECK(svc.post_event(R"({"individual":"Delivery 1"})", "operator").status == 400);
  CHECK(svc.post_event(R"({"individual":"Delivery 1","property":"took","value":1})", "operator").status == 409);
  CHECK(svc.post_event(R"({"individual":"Robot 1","property":"batteryLevel","value":150})", "sensor").status == 422);
  CHECK(svc.post_event(R"({"individual":"Robot 1","property":"station","value":"Loc A"})", "operator").status == 409);
  CHECK(svc.post_event(R"({"individual":"Ghost","property":"took","value":1})", "operator").status == 404);

  auto ok = svc.post_event(R"({"individual":"Delivery 1","property":"cameObjectLocation","value":"1"})", "operator");
  CHECK(ok.status == 200);
  CHECK(ok.body["event"]["actor"] == "operator");
  CHECK(ok.body["derived"].size() == 3);  // robot location, then robotLoc of both tasks

  auto since = svc.events_since(0, std::chrono::milliseconds(0));
  CHECK(since.size() == ok.body["derived"].back()["seq"].get<std::size_t>());
  CHECK(svc.events_since(since.back().seq, std::chrono::milliseconds(10)).empty());
}

TEST_CASE("views resolve against the graph") {
  Service svc(baseline_engine());
  auto views = svc.get_views();
  REQUIRE(views.body.size() == 3);
  CHECK(views.body[0]["name"] == "View Delivery");
  CHECK(views.body[2]["name"] == "View Recharging");

  auto v = svc.get_view("View Delivery");
  CHECK(v.status == 200);
  CHECK(v.body["individual"] == "Delivery 1");
  CHECK(v.body["mode"] == "showcase");
  REQUIRE(v.body["controls"].size() == 4);
  CHECK(v.body["controls"][0]["property"] == "cameObjectLocation");
  CHECK(v.body["controls"][0]["control_type"] == "button");
  CHECK(v.body["controls"][0]["available"] == true);
  CHECK(v.body["controls"][1]["available"] == false);
  CHECK(v.body["properties"].size() == 9);
  CHECK(svc.get_view("View Ghost").status == 404);
}

TEST_CASE("model upload") {
  Service svc(baseline_engine());
  auto ok = svc.post_models(R"(Location: Individual: Loc D
: SetModel: Model Location
)",
                            "admin");
  CHECK(ok.status == 200);
  CHECK(ok.body["created"] == nlohmann::json::array({"Loc D"}));
  CHECK(ok.body["load_event"]["actor"] == "admin");

  auto bad = svc.post_models("Robot: Model: Model Robot\n: SetModel: Model Robot\n: Relation: station\n:: Immutable: 1\n",
                             "admin");
  CHECK(bad.status == 422);
  CHECK(bad.body["diagnostics"][0]["code"] == "DuplicateRestrictionKind");
  CHECK(svc.post_models("Robot: Frobnicate: X\n", "admin").status == 422);
}

TEST_CASE("HTTP endpoints") {
  Running srv;
  REQUIRE(srv.port > 0);
  auto& c = srv.client;

  auto state = c.Get("/state/Delivery%201");
  REQUIRE(state);
  CHECK(state->status == 200);
  CHECK(body(state)["individual"] == "Delivery 1");
  CHECK(c.Get("/state/Nobody")->status == 404);

  auto actions = c.Get("/actions/Delivery%201");
  CHECK(body(actions)[0]["available"] == true);

  auto premature = c.Post("/events", R"({"individual":"Delivery 1","property":"took","value":true})",
                          "application/json");
  CHECK(premature->status == 409);
  CHECK(body(premature)["error"] == "ConditionNotMet");

  httplib::Headers sensor{{"X-Actor", "sensor"}};
  auto posted = c.Post("/events", sensor, R"({"individual":"Robot 1","property":"batteryLevel","value":15})",
                       "application/json");
  CHECK(posted->status == 200);
  CHECK(body(posted)["event"]["actor"] == "sensor");
  CHECK(body(c.Get("/state/Robot%201"))["slots"]["task"] == "Recharging");

  CHECK(c.Get("/views")->status == 200);
  CHECK(body(c.Get("/views/View%20Recharging"))["controls"][0]["available"] == true);
  CHECK(c.Post("/models", "Robot: Frobnicate: X\n", "text/plain")->status == 422);

  const auto log = c.Get("/log");
  CHECK(log->status == 200);
  const auto lines = static_cast<std::size_t>(std::count(log->body.begin(), log->body.end(), '\n'));

  auto stream = c.Get("/stream?since=0&follow=0");
  REQUIRE(stream);
  CHECK(stream->get_header_value("Content-Type") == "text/event-stream");
  CHECK(static_cast<std::size_t>(std::count(stream->body.begin(), stream->body.end(), '\n')) == lines * 4);
  CHECK(stream->body.starts_with("id: 1\nevent: graph-event\ndata: {\"seq\":1,"));

  auto tail = c.Get("/stream?since=" + std::to_string(lines - 1) + "&follow=0");
  CHECK(tail->body.starts_with("id: " + std::to_string(lines) + "\n"));
  CHECK(c.Get("/stream?since=abc")->status == 400);
}

TEST_CASE("stream follows new events") {
  Running srv;
  const auto start = nlohmann::json::parse(srv.client.Get("/state/Robot%201")->body)["seq"].get<std::size_t>();

  std::string received;
  std::thread reader([&] {
    httplib::Client c("127.0.0.1", srv.port);
    c.set_read_timeout(5, 0);
    c.Get("/stream?since=" + std::to_string(start), [&](const char* data, std::size_t n) {
      received.append(data, n);
      return received.find("\"property\":\"robotLoc\"") == std::string::npos;
    });
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(100));
  srv.client.Post("/events", R"({"individual":"Delivery 1","property":"cameObjectLocation","value":true})",
                  "application/json");
  reader.join();
  CHECK(received.find("id: " + std::to_string(start + 1) + "\n") != std::string::npos);
  CHECK(received.find("\"property\":\"cameObjectLocation\"") != std::string::npos);
}
