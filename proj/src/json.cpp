#include "eo/json.hpp"

#include "eo/error.hpp"

namespace eo {

ordered_json value_to_json(const Value& v) {
  ordered_json j;
  j["type"] = std::string(type_tag(v.type()));
  switch (v.type()) {
    case Value::Type::Null: break;
    case Value::Type::Bool: j["v"] = v.as_bool(); break;
    case Value::Type::Num: j["v"] = v.as_num(); break;
    case Value::Type::Str: j["v"] = v.as_str(); break;
    case Value::Type::Ref: j["v"] = v.as_ref(); break;
  }
  return j;
}

Value value_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw Error(Errc::SchemaMismatch, "value must be an object with a string \"type\"");
  }
  auto type = parse_type_tag(j["type"].get<std::string>());
  if (!type) throw Error(Errc::SchemaMismatch, "unknown value type " + j["type"].dump());
  if (*type == Value::Type::Null) return {};
  if (!j.contains("v")) throw Error(Errc::SchemaMismatch, "value payload \"v\" missing");
  const auto& p = j["v"];
  switch (*type) {
    case Value::Type::Bool:
      if (!p.is_boolean()) break;
      return Value(p.get<bool>());
    case Value::Type::Num:
      if (!p.is_number()) break;
      return Value(p.get<double>());
    case Value::Type::Str:
      if (!p.is_string()) break;
      return Value(p.get<std::string>());
    case Value::Type::Ref:
      if (!p.is_string()) break;
      return Value::ref(p.get<std::string>());
    case Value::Type::Null: break;
  }
  throw Error(Errc::SchemaMismatch, "value payload does not match type " + j["type"].dump());
}

ordered_json value_to_plain_json(const Value& v) {
  switch (v.type()) {
    case Value::Type::Null: return nullptr;
    case Value::Type::Bool: return v.as_bool();
    case Value::Type::Num: return v.as_num();
    case Value::Type::Str: return v.as_str();
    case Value::Type::Ref: return v.as_ref();
  }
  return nullptr;
}

ordered_json event_to_json(const graph::Event& e) {
  ordered_json j;
  j["seq"] = e.seq;
  j["id"] = e.id;
  j["base"] = e.base;
  j["property"] = e.property;
  j["value"] = value_to_json(e.value);
  j["model"] = e.model;
  j["cause"] = e.cause;
  j["actor"] = e.actor;
  return j;
}

graph::Event event_from_json(const nlohmann::json& j) {
  static constexpr const char* kStringFields[] = {"id", "base", "property", "model", "cause", "actor"};
  if (!j.is_object() || j.size() != 8) {
    throw Error(Errc::SchemaMismatch, "event record must have exactly 8 fields");
  }
  if (!j.contains("seq") || !j["seq"].is_number_unsigned()) {
    throw Error(Errc::SchemaMismatch, "event field \"seq\" must be an unsigned integer");
  }
  for (const char* f : kStringFields) {
    if (!j.contains(f) || !j[f].is_string()) {
      throw Error(Errc::SchemaMismatch, std::string("event field \"") + f + "\" must be a string");
    }
  }
  if (!j.contains("value")) throw Error(Errc::SchemaMismatch, "event field \"value\" missing");
  graph::Event e;
  e.seq = j["seq"].get<graph::Seq>();
  e.id = j["id"].get<std::string>();
  e.base = j["base"].get<std::string>();
  e.property = j["property"].get<std::string>();
  e.value = value_from_json(j["value"]);
  e.model = j["model"].get<std::string>();
  e.cause = j["cause"].get<std::string>();
  e.actor = j["actor"].get<std::string>();
  return e;
}

}  // namespace eo
