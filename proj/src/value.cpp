#include "eo/value.hpp"

#include <charconv>
#include <cmath>

#include "eo/error.hpp"

namespace eo {

std::optional<double> parse_number(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

std::string format_number(double n) {
  if (std::isfinite(n) && n == std::trunc(n) && std::fabs(n) < 1e15) {
    return std::to_string(static_cast<long long>(n));
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n);
  return std::string(buf, ptr);
}

std::string Value::text() const {
  switch (type()) {
    case Type::Null: return {};
    case Type::Bool: return as_bool() ? "1" : "0";
    case Type::Num: return format_number(as_num());
    case Type::Str: return as_str();
    case Type::Ref: return as_ref();
  }
  return {};
}

bool Value::truthy() const noexcept {
  switch (type()) {
    case Type::Null: return false;
    case Type::Bool: return std::get<bool>(data_);
    case Type::Num: return std::get<double>(data_) != 0.0;
    case Type::Str: {
      const auto& s = std::get<std::string>(data_);
      return !s.empty() && s != "0" && s != "false";
    }
    case Type::Ref: return true;
  }
  return false;
}

Value Value::to_number() const {
  switch (type()) {
    case Type::Null: return {};
    case Type::Bool: return Value(as_bool() ? 1.0 : 0.0);
    case Type::Num: return *this;
    case Type::Str:
      if (auto n = parse_number(as_str())) return Value(*n);
      throw Error(Errc::CoercionFailure, "cannot coerce \"" + as_str() + "\" to a number");
    case Type::Ref:
      throw Error(Errc::CoercionFailure, "cannot coerce reference " + as_ref() + " to a number");
  }
  return {};
}

std::string_view type_tag(Value::Type t) noexcept {
  switch (t) {
    case Value::Type::Null: return "null";
    case Value::Type::Bool: return "bool";
    case Value::Type::Num: return "num";
    case Value::Type::Str: return "str";
    case Value::Type::Ref: return "ref";
  }
  return "null";
}

std::optional<Value::Type> parse_type_tag(std::string_view tag) noexcept {
  if (tag == "null") return Value::Type::Null;
  if (tag == "bool") return Value::Type::Bool;
  if (tag == "num") return Value::Type::Num;
  if (tag == "str") return Value::Type::Str;
  if (tag == "ref") return Value::Type::Ref;
  return std::nullopt;
}

bool loose_equals(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return false;
  if (a.is_str() || b.is_str()) return a.text() == b.text();
  if (a.is_ref() || b.is_ref()) return a.is_ref() && b.is_ref() && a.as_ref() == b.as_ref();
  return a.to_number().as_num() == b.to_number().as_num();
}

}  // namespace eo
