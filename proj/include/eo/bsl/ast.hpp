#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eo::bsl {

struct Origin {
  std::string file;
  int first_line = 0;
  int last_line = 0;
};

enum class PropertyKind { Relation, Attribute };
enum class DataType { Boolean, Number, String };

enum class RestrictionKind { Immutable, Condition, ValueCondition, SetValue, SetDo, Default };

std::string_view to_string(PropertyKind k) noexcept;
std::string_view to_string(DataType t) noexcept;
std::string_view to_string(RestrictionKind k) noexcept;
std::optional<PropertyKind> parse_property_kind(std::string_view s) noexcept;
std::optional<DataType> parse_data_type(std::string_view s) noexcept;
std::optional<RestrictionKind> parse_restriction_kind(std::string_view s) noexcept;
/// Restriction names that are recognised but carry no semantics here.
bool is_ignored_restriction(std::string_view s) noexcept;

struct ConceptDecl {
  std::string name;
  bool operator==(const ConceptDecl&) const = default;
};

struct PropertyDecl {
  std::string name;
  PropertyKind kind = PropertyKind::Attribute;
  std::optional<std::string> range;       // Relations
  std::optional<DataType> data_type;      // Attributes
  bool operator==(const PropertyDecl&) const = default;
};

struct Restriction {
  RestrictionKind kind;
  std::string expr;  // raw text
  bool operator==(const Restriction&) const = default;
};

struct ModelEvent {
  std::string property;
  PropertyKind kind = PropertyKind::Attribute;
  std::vector<Restriction> restrictions;
  std::vector<ModelEvent> children;  // nested events (View models)

  const Restriction* find(RestrictionKind k) const;
  bool operator==(const ModelEvent&) const = default;
};

struct ModelDecl {
  std::string concept_name;
  std::string name;
  std::vector<ModelEvent> events;
  /// `: SetModel: X` inside a model declaration; marks an explicit
  /// reference to an existing model.
  std::optional<std::string> set_model;
  bool operator==(const ModelDecl&) const = default;
};

/// `prop: value` line inside an individual, with nested lines.
struct Assignment {
  std::string property;
  std::string value;
  std::vector<Assignment> children;
  bool operator==(const Assignment&) const = default;
};

struct IndividualDecl {
  std::string concept_name;
  std::string name;
  std::optional<std::string> set_model;
  std::vector<Assignment> assignments;
  bool operator==(const IndividualDecl&) const = default;
};

struct ViewControl {
  std::string property;
  std::string title;
  std::string control_type;
  std::string value;
  bool operator==(const ViewControl&) const = default;
};

struct ViewDecl {
  std::string name;
  std::string set_model;
  std::string concept_page;
  std::string individual_id;
  std::string view_concept;
  std::string individual_list;
  std::string view_mode;
  std::optional<std::string> title;
  std::optional<std::string> include;
  std::optional<std::string> exclude;
  std::vector<ViewControl> controls;
  bool operator==(const ViewDecl&) const = default;
};

enum class DeclKind { Concept, Property, Model, Individual, View };
std::string_view to_string(DeclKind k) noexcept;

struct Declaration {
  std::variant<ConceptDecl, PropertyDecl, ModelDecl, IndividualDecl, ViewDecl> body;
  Origin origin;

  DeclKind kind() const { return static_cast<DeclKind>(body.index()); }
  const std::string& name() const;

  /// Equality of content; origins are ignored.
  bool operator==(const Declaration& other) const { return body == other.body; }
};

struct Warning {
  std::string message;
  int line = 0;
};

struct ParseResult {
  std::vector<Declaration> declarations;
  std::vector<Warning> warnings;
};

}  // namespace eo::bsl
