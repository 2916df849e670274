// eoctl: command-line front end for the engine, the behavior tree baseline
// and the scenario harness.
#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eo/bsl/ast_json.hpp"
#include "eo/bsl/catalog.hpp"
#include "eo/bsl/parser.hpp"
#include "eo/harness/metrics.hpp"
#include "eo/harness/replay.hpp"
#include "eo/harness/run.hpp"
#include "eo/server/http.hpp"

namespace {

using eo::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spill(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

eo::harness::Scenario scenario_or_default(const std::string& path) {
  if (!path.empty()) return eo::harness::load_scenario(path);
  eo::harness::Scenario s;
  s.name = "baseline";
  return s;
}

int cmd_load(const std::vector<std::string>& files, bool ast, const std::string& log_path) {
  eo::engine::Engine eng;
  ordered_json out = ordered_json::array();
  for (const auto& f : files) {
    const auto text = slurp(f);
    if (ast) {
      out.push_back({{"file", f}, {"declarations", eo::bsl::to_json(eo::bsl::parse_source(text, f).declarations)}});
      continue;
    }
    const auto parsed = eo::bsl::parse_source(text, f);
    const auto counts = eo::harness::count_elements(parsed.declarations, eng.catalog());
    auto report = eng.load_source(text, "admin", f);

    ordered_json kinds = ordered_json::object();
    for (const auto& d : parsed.declarations) {
      auto& n = kinds[std::string(eo::bsl::to_string(d.kind()))];
      n = n.is_null() ? 1 : n.get<int>() + 1;
    }
    ordered_json models = ordered_json::array();
    for (const auto& c : counts) {
      models.push_back({{"model", c.model},
                        {"amendment", c.amendment},
                        {"root_events", c.root_events},
                        {"excluding_bindings", c.excluding_bindings()},
                        {"action_events", c.actions}});
    }
    ordered_json warnings = ordered_json::array();
    for (const auto& w : report.warnings) warnings.push_back(std::to_string(w.line) + ": " + w.message);
    out.push_back({{"file", f},
                   {"declarations", kinds},
                   {"models", models},
                   {"created", report.created},
                   {"events_appended", report.events.size() + 1},
                   {"warnings", warnings}});
  }
  std::cout << out.dump(2) << '\n';
  if (!log_path.empty()) spill(log_path, eng.graph().export_log());
  return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& engine, const std::string& log_path,
            const std::string& trace_path) {
  auto s = scenario_or_default(scenario_path);
  if (!engine.empty()) s.engine = eo::harness::parse_engine_choice(engine);
  const auto report = eo::harness::run_scenario(s);
  std::cout << report.to_json().dump(2) << '\n';
  if (!log_path.empty() && report.eo) spill(log_path, report.eo->log);
  if (!trace_path.empty() && report.bt) spill(trace_path, report.bt->trace);
  return report.agree ? 0 : 1;
}

int cmd_replay(const std::string& path) {
  const auto r = eo::harness::replay_check(slurp(path));
  ordered_json j{{"pass", r.pass}, {"message", r.message}};
  j["divergence"] = r.divergence ? ordered_json(*r.divergence) : ordered_json();
  std::cout << j.dump(2) << '\n';
  return r.pass ? 0 : 1;
}

int cmd_metrics(const std::string& path) {
  const auto text = slurp(path);
  const auto first = text.substr(0, text.find('\n'));
  if (first.empty()) {
    std::cout << eo::harness::metrics_from_log(text).to_json().dump(2) << '\n';
    return 0;
  }
  const auto head = nlohmann::json::parse(first);
  if (head.contains("tick")) {
    std::cout << eo::harness::metrics_from_trace(text).to_json().dump(2) << '\n';
  } else {
    std::cout << eo::harness::metrics_from_log(text).to_json().dump(2) << '\n';
  }
  return 0;
}

eo::server::HttpServer* g_server = nullptr;

int cmd_serve(const std::string& host, int port, const std::string& scenario_path) {
  auto s = scenario_or_default(scenario_path);
  eo::server::Service service(eo::harness::prepare_engine(s));
  eo::server::HttpServer http(service);
  const int bound = http.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << '\n';
    return 1;
  }
  g_server = &http;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "serving scenario '" << s.name << "' on http://" << host << ":" << bound << '\n';
  http.listen();
  return 0;
}

int cmd_export(const std::string& scenario_path, const std::string& out) {
  const auto s = scenario_or_default(scenario_path);
  spill(out, eo::harness::run_eo(s).log);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Executable-ontology engine, behavior-tree baseline and scenario harness"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  bool ast = false;
  std::string log_path, trace_path, scenario, engine, format = "jsonl", out, host = "127.0.0.1";
  int port = 8080;

  auto* load = app.add_subcommand("load", "Parse, validate and load BSL blocks in order");
  load->add_option("files", files, "BSL files")->required()->check(CLI::ExistingFile);
  load->add_flag("--ast", ast, "Print the canonical declaration JSON instead of loading");
  load->add_option("--log", log_path, "Write the resulting event log");

  auto* run = app.add_subcommand("run", "Run a scenario and print its metrics report");
  run->add_option("--scenario", scenario, "Scenario JSON (default: baseline A/B/C)")->check(CLI::ExistingFile);
  run->add_option("--engine", engine, "eo, bt or both")->check(CLI::IsMember({"eo", "bt", "both"}));
  run->add_option("--log", log_path, "Write the EO event log (JSONL)");
  run->add_option("--trace", trace_path, "Write the BT tick trace (JSONL)");

  auto* replay = app.add_subcommand("replay", "Regenerate a log from its external events and compare");
  std::string replay_path;
  replay->add_option("log", replay_path, "Event log (JSONL)")->required()->check(CLI::ExistingFile);

  auto* metrics = app.add_subcommand("metrics", "Metrics of a stored event log or tick trace");
  std::string metrics_path;
  metrics->add_option("file", metrics_path, "Event log or tick trace (JSONL)")->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "Serve the engine over HTTP");
  serve->add_option("--port", port, "TCP port (0 picks one)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--scenario", scenario, "Scenario whose blocks and placement to preload")->check(CLI::ExistingFile);

  auto* exp = app.add_subcommand("export", "Run a scenario on the engine and export its event log");
  exp->add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl"}));
  exp->add_option("--scenario", scenario, "Scenario JSON (default: baseline A/B/C)")->check(CLI::ExistingFile);
  exp->add_option("--out", out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*load) return cmd_load(files, ast, log_path);
    if (*run) return cmd_run(scenario, engine, log_path, trace_path);
    if (*replay) return cmd_replay(replay_path);
    if (*metrics) return cmd_metrics(metrics_path);
    if (*serve) return cmd_serve(host, port, scenario);
    if (*exp) return cmd_export(scenario, out);
  } catch (const eo::bsl::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
