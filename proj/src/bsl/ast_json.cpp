#include "eo/bsl/ast_json.hpp"

namespace eo::bsl {

namespace {

ordered_json event_json(const ModelEvent& ev) {
  ordered_json j;
  j["property"] = ev.property;
  j["kind"] = std::string(to_string(ev.kind));
  j["restrictions"] = ordered_json::array();
  for (const auto& r : ev.restrictions) {
    j["restrictions"].push_back({{"kind", std::string(to_string(r.kind))}, {"expr", r.expr}});
  }
  if (!ev.children.empty()) {
    j["children"] = ordered_json::array();
    for (const auto& c : ev.children) j["children"].push_back(event_json(c));
  }
  return j;
}

ordered_json assignment_json(const Assignment& a) {
  ordered_json j;
  j["property"] = a.property;
  j["value"] = a.value;
  if (!a.children.empty()) {
    j["children"] = ordered_json::array();
    for (const auto& c : a.children) j["children"].push_back(assignment_json(c));
  }
  return j;
}

template <class T>
void optional_field(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

struct ToJson {
  ordered_json& j;

  void operator()(const ConceptDecl&) const {}
  void operator()(const PropertyDecl& d) const {
    j["property_kind"] = std::string(to_string(d.kind));
    optional_field(j, "range", d.range);
    if (d.data_type) j["data_type"] = std::string(to_string(*d.data_type));
  }
  void operator()(const ModelDecl& d) const {
    j["concept"] = d.concept_name;
    optional_field(j, "set_model", d.set_model);
    j["events"] = ordered_json::array();
    for (const auto& ev : d.events) j["events"].push_back(event_json(ev));
  }
  void operator()(const IndividualDecl& d) const {
    j["concept"] = d.concept_name;
    optional_field(j, "set_model", d.set_model);
    j["assignments"] = ordered_json::array();
    for (const auto& a : d.assignments) j["assignments"].push_back(assignment_json(a));
  }
  void operator()(const ViewDecl& d) const {
    j["set_model"] = d.set_model;
    j["concept_page"] = d.concept_page;
    j["individual_id"] = d.individual_id;
    j["view_concept"] = d.view_concept;
    j["individual_list"] = d.individual_list;
    j["view_mode"] = d.view_mode;
    optional_field(j, "title", d.title);
    optional_field(j, "include", d.include);
    optional_field(j, "exclude", d.exclude);
    j["controls"] = ordered_json::array();
    for (const auto& c : d.controls) {
      j["controls"].push_back({{"property", c.property},
                               {"title", c.title},
                               {"control_type", c.control_type},
                               {"value", c.value}});
    }
  }
};

}  // namespace

ordered_json to_json(const Declaration& decl) {
  ordered_json j;
  j["kind"] = std::string(to_string(decl.kind()));
  j["name"] = decl.name();
  std::visit(ToJson{j}, decl.body);
  return j;
}

ordered_json to_json(const std::vector<Declaration>& decls) {
  ordered_json j = ordered_json::array();
  for (const auto& d : decls) j.push_back(to_json(d));
  return j;
}

}  // namespace eo::bsl
