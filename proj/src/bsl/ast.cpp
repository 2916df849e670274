#include "eo/bsl/ast.hpp"

namespace eo::bsl {

std::string_view to_string(PropertyKind k) noexcept {
  return k == PropertyKind::Relation ? "Relation" : "Attribute";
}

std::string_view to_string(DataType t) noexcept {
  switch (t) {
    case DataType::Boolean: return "Boolean";
    case DataType::Number: return "Number";
    case DataType::String: return "String";
  }
  return "String";
}

std::string_view to_string(RestrictionKind k) noexcept {
  switch (k) {
    case RestrictionKind::Immutable: return "Immutable";
    case RestrictionKind::Condition: return "Condition";
    case RestrictionKind::ValueCondition: return "ValueCondition";
    case RestrictionKind::SetValue: return "SetValue";
    case RestrictionKind::SetDo: return "SetDo";
    case RestrictionKind::Default: return "Default";
  }
  return "";
}

std::string_view to_string(DeclKind k) noexcept {
  switch (k) {
    case DeclKind::Concept: return "concept";
    case DeclKind::Property: return "property";
    case DeclKind::Model: return "model";
    case DeclKind::Individual: return "individual";
    case DeclKind::View: return "view";
  }
  return "";
}

std::optional<PropertyKind> parse_property_kind(std::string_view s) noexcept {
  if (s == "Relation") return PropertyKind::Relation;
  if (s == "Attribute") return PropertyKind::Attribute;
  return std::nullopt;
}

std::optional<DataType> parse_data_type(std::string_view s) noexcept {
  if (s == "Boolean") return DataType::Boolean;
  if (s == "Number") return DataType::Number;
  if (s == "String") return DataType::String;
  return std::nullopt;
}

std::optional<RestrictionKind> parse_restriction_kind(std::string_view s) noexcept {
  for (auto k : {RestrictionKind::Immutable, RestrictionKind::Condition, RestrictionKind::ValueCondition,
                 RestrictionKind::SetValue, RestrictionKind::SetDo, RestrictionKind::Default}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_ignored_restriction(std::string_view s) noexcept {
  return s == "Required" || s == "Multiple" || s == "Unique" || s == "UniqueDomain" || s == "SetRange" ||
         s == "Permission";
}

const Restriction* ModelEvent::find(RestrictionKind k) const {
  for (const auto& r : restrictions) {
    if (r.kind == k) return &r;
  }
  return nullptr;
}

const std::string& Declaration::name() const {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, body);
}

}  // namespace eo::bsl
