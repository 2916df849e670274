#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eo/bsl/ast.hpp"
#include "eo/error.hpp"
#include "eo/value.hpp"

namespace eo::bsl {

/// A registered model: the merge of its declaration and all amendments.
struct ModelSpec {
  std::string concept_name;
  std::string name;
  std::vector<ModelEvent> events;  // root-level, declaration order

  const ModelEvent* event(std::string_view property) const;
  /// Position of `property` among root events, or npos.
  std::size_t event_index(std::string_view property) const;
};

struct IndividualSpec {
  std::string concept_name;
  std::string model;
};

/// Everything loaded so far: the context declarations are validated against.
class Catalog {
 public:
  const ConceptDecl* concept_decl(std::string_view name) const;
  const PropertyDecl* property(std::string_view name) const;
  const ModelSpec* model(std::string_view name) const;
  const IndividualSpec* individual(std::string_view name) const;
  const ViewDecl* view(std::string_view name) const;

  const std::vector<std::string>& model_order() const { return model_order_; }
  const std::vector<std::string>& view_order() const { return view_order_; }

  std::map<std::string, ConceptDecl, std::less<>> concepts;
  std::map<std::string, PropertyDecl, std::less<>> properties;
  std::map<std::string, ModelSpec, std::less<>> models;
  std::map<std::string, IndividualSpec, std::less<>> individuals;
  std::map<std::string, ViewDecl, std::less<>> views;

 private:
  friend class Validator;
  std::vector<std::string> model_order_;
  std::vector<std::string> view_order_;
};

struct Diagnostic {
  Errc code;
  std::string name;  // offending name
  std::string kind;  // concept | property | model | individual | view | expression
  std::string message;
  int line = 0;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  bool has(Errc code) const;
  bool has(Errc code, std::string_view name) const;

 private:
  std::vector<Diagnostic> diagnostics_;
};

enum class DeclAction { Create, Amend, Restate };

struct ValidatedBlock {
  std::vector<Declaration> declarations;
  std::vector<DeclAction> actions;  // parallel to declarations
  Catalog catalog;                  // context after applying the block
  std::vector<Warning> warnings;
};

/// Checks every name reference, relation range, assignment type and
/// amendment target against `context` plus the block's own earlier
/// declarations, and parses every restriction expression. On success the
/// returned catalog is the context with the block applied. Throws
/// ValidationError listing every problem found.
ValidatedBlock validate_declarations(std::vector<Declaration> decls, const Catalog& context);

/// Converts an initial-assignment literal to the attribute's data type.
std::optional<Value> literal_for(std::string_view text, DataType type);

}  // namespace eo::bsl
