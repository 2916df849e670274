#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>

namespace eo {

/// Reference to an individual by its id (individual names are ids).
struct Ref {
  std::string id;
  auto operator<=>(const Ref&) const = default;
};

/// Dynamically typed value carried by events and produced by expressions.
/// The default-constructed value is Null (slot never assigned).
class Value {
 public:
  enum class Type { Null, Bool, Num, Str, Ref };

  Value() = default;
  Value(bool b) : data_(b) {}
  Value(double n) : data_(n) {}
  Value(int n) : data_(static_cast<double>(n)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(Ref r) : data_(std::move(r)) {}

  static Value null() { return {}; }
  static Value ref(std::string id) { return Value(Ref{std::move(id)}); }

  Type type() const noexcept { return static_cast<Type>(data_.index()); }
  bool is_null() const noexcept { return type() == Type::Null; }
  bool is_bool() const noexcept { return type() == Type::Bool; }
  bool is_num() const noexcept { return type() == Type::Num; }
  bool is_str() const noexcept { return type() == Type::Str; }
  bool is_ref() const noexcept { return type() == Type::Ref; }

  bool as_bool() const { return std::get<bool>(data_); }
  double as_num() const { return std::get<double>(data_); }
  const std::string& as_str() const { return std::get<std::string>(data_); }
  const std::string& as_ref() const { return std::get<Ref>(data_).id; }

  /// Text form: Bool as "1"/"0", integral numbers without a fraction,
  /// references as the individual id, Null as "".
  std::string text() const;

  /// Truthiness used by `&&`, `||`, `!`, `?:` and restriction gates.
  bool truthy() const noexcept;

  /// Numeric coercion (`+` operator). Null stays Null; throws
  /// Error{CoercionFailure} for non-numeric strings and references.
  Value to_number() const;

  /// Identity comparison: same type and same payload. Distinct from the
  /// expression-level `==` (see `loose_equals`).
  bool operator==(const Value&) const = default;

 private:
  std::variant<std::monostate, bool, double, std::string, Ref> data_;
};

std::string_view type_tag(Value::Type t) noexcept;
std::optional<Value::Type> parse_type_tag(std::string_view tag) noexcept;

/// Expression `==`: false if either side is Null; string-normalized when
/// either side is a string; numeric for Bool/Num mixes; id equality for refs.
bool loose_equals(const Value& a, const Value& b);

/// Parses a decimal number, whole string only.
std::optional<double> parse_number(std::string_view s) noexcept;

std::string format_number(double n);

}  // namespace eo
