#include "eo/server/service.hpp"

#include <sstream>

#include "eo/bsl/catalog.hpp"
#include "eo/json.hpp"

namespace eo::server {

namespace {

Reply error_reply(const Error& e) {
  return {status_for(e.code()), {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}};
}

Reply not_found(const std::string& what) {
  return {404, {{"error", std::string(to_string(Errc::UnknownIndividual))}, {"message", "unknown " + what}}};
}

std::vector<std::string> split_list(const std::optional<std::string>& s) {
  std::vector<std::string> out;
  if (!s) return out;
  std::stringstream in(*s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

int status_for(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownIndividual:
    case Errc::UnknownSlot:
    case Errc::UnknownProperty:
      return 404;
    case Errc::ConditionNotMet:
    case Errc::ImmutableViolation:
    case Errc::CascadeBudgetExceeded:
      return 409;
    default:
      return 422;
  }
}

Service::Service(std::unique_ptr<engine::Engine> engine) : engine_(std::move(engine)) {}

Reply Service::get_state(const std::string& individual) const {
  std::lock_guard lock(mu_);
  const auto& s = engine_->state();
  const auto* info = s.individual(individual);
  if (!info) return not_found("individual " + individual);
  ordered_json slots = ordered_json::object();
  if (const auto* model = engine_->catalog().model(info->model)) {
    for (const auto& ev : model->events) slots[ev.property] = value_to_plain_json(s.get(individual, ev.property));
  }
  return {200,
          {{"individual", individual},
           {"concept", info->concept_name},
           {"model", info->model},
           {"seq", engine_->graph().max_seq()},
           {"slots", std::move(slots)}}};
}

Reply Service::get_actions(const std::string& individual) const {
  std::lock_guard lock(mu_);
  if (!engine_->state().has_individual(individual)) return not_found("individual " + individual);
  ordered_json out = ordered_json::array();
  for (const auto& a : engine_->available_actions(individual)) {
    out.push_back({{"individual", a.individual},
                   {"property", a.property},
                   {"available", a.available},
                   {"data_type", std::string(bsl::to_string(a.data_type))}});
  }
  return {200, std::move(out)};
}

Reply Service::post_event(std::string_view body, const std::string& actor) {
  nlohmann::json req;
  try {
    req = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    return {400, {{"error", "BadRequest"}, {"message", e.what()}}};
  }
  if (!req.is_object() || !req.contains("individual") || !req.contains("property") || !req.contains("value") ||
      !req["individual"].is_string() || !req["property"].is_string()) {
    return {400, {{"error", "BadRequest"}, {"message", "expected {\"individual\", \"property\", \"value\"}"}}};
  }
  const auto& raw = req["value"];
  Value v = raw.is_boolean() ? Value(raw.get<bool>())
            : raw.is_number() ? Value(raw.get<double>())
            : raw.is_string() ? Value(raw.get<std::string>())
                              : Value();

  Reply reply;
  {
    std::lock_guard lock(mu_);
    try {
      auto r = engine_->inject(actor, req["individual"].get<std::string>(), req["property"].get<std::string>(), v);
      ordered_json derived = ordered_json::array();
      for (const auto& e : r.derived) derived.push_back(event_to_json(e));
      reply = {200, {{"event", event_to_json(r.event)}, {"derived", std::move(derived)}}};
    } catch (const Error& e) {
      return error_reply(e);
    }
  }
  notify();
  return reply;
}

ordered_json Service::view_payload(const bsl::ViewDecl& v) const {
  const auto& s = engine_->state();
  ordered_json j;
  j["name"] = v.name;
  j["model"] = v.set_model;
  j["concept_page"] = v.concept_page;
  j["individual"] = v.individual_id;
  j["view_concept"] = v.view_concept;
  j["individual_list"] = v.individual_list;
  j["mode"] = v.view_mode;
  j["title"] = v.title.value_or(v.name);

  const auto include = split_list(v.include);
  const auto exclude = split_list(v.exclude);
  ordered_json props = ordered_json::array();
  if (const auto* info = s.individual(v.individual_id)) {
    if (const auto* model = engine_->catalog().model(info->model)) {
      for (const auto& ev : model->events) {
        if (!include.empty() && std::find(include.begin(), include.end(), ev.property) == include.end()) continue;
        if (std::find(exclude.begin(), exclude.end(), ev.property) != exclude.end()) continue;
        props.push_back({{"property", ev.property}, {"value", value_to_plain_json(s.get(v.individual_id, ev.property))}});
      }
    }
  }
  j["properties"] = std::move(props);

  const auto actions = engine_->available_actions(v.individual_id);
  ordered_json controls = ordered_json::array();
  for (const auto& c : v.controls) {
    bool available = false;
    for (const auto& a : actions) available = available || (a.property == c.property && a.available);
    controls.push_back({{"property", c.property},
                        {"title", c.title},
                        {"control_type", c.control_type},
                        {"value", c.value},
                        {"available", available}});
  }
  j["controls"] = std::move(controls);
  return j;
}

Reply Service::get_views() const {
  std::lock_guard lock(mu_);
  ordered_json out = ordered_json::array();
  for (const auto& name : engine_->catalog().view_order()) out.push_back(view_payload(*engine_->catalog().view(name)));
  return {200, std::move(out)};
}

Reply Service::get_view(const std::string& name) const {
  std::lock_guard lock(mu_);
  const auto* v = engine_->catalog().view(name);
  if (!v) return not_found("view " + name);
  return {200, view_payload(*v)};
}

Reply Service::post_models(std::string_view bsl, const std::string& actor) {
  Reply reply;
  {
    std::lock_guard lock(mu_);
    try {
      auto report = engine_->load_source(bsl, actor, "upload");
      ordered_json warnings = ordered_json::array();
      for (const auto& w : report.warnings) warnings.push_back({{"line", w.line}, {"message", w.message}});
      reply = {200,
               {{"load_event", event_to_json(report.load_event)},
                {"events", report.events.size()},
                {"created", report.created},
                {"amended_models", report.amended_models},
                {"warnings", std::move(warnings)}}};
    } catch (const bsl::ValidationError& e) {
      ordered_json diags = ordered_json::array();
      for (const auto& d : e.diagnostics()) {
        diags.push_back({{"code", std::string(to_string(d.code))},
                         {"name", d.name},
                         {"kind", d.kind},
                         {"line", d.line},
                         {"message", d.message}});
      }
      return {422, {{"error", "ValidationError"}, {"message", "block rejected"}, {"diagnostics", std::move(diags)}}};
    } catch (const Error& e) {
      return {422, {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}};
    }
  }
  notify();
  return reply;
}

std::vector<graph::Event> Service::events_since(graph::Seq since, std::chrono::milliseconds wait) const {
  std::unique_lock lock(mu_);
  changed_.wait_for(lock, wait, [&] { return stopping_ || engine_->graph().max_seq() > since; });
  const auto& all = engine_->graph().events();
  if (since >= all.size()) return {};
  return {all.begin() + static_cast<std::ptrdiff_t>(since), all.end()};
}

std::string Service::export_log() const {
  std::lock_guard lock(mu_);
  return engine_->graph().export_log();
}

void Service::notify() { changed_.notify_all(); }

void Service::shutdown() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  changed_.notify_all();
}

bool Service::stopping() const {
  std::lock_guard lock(mu_);
  return stopping_;
}

}  // namespace eo::server
