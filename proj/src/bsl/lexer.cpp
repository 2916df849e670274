#include "eo/bsl/lexer.hpp"

#include <cctype>

#include "eo/error.hpp"

namespace eo::bsl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

// `X: Instance: ...`, `X: Individual: ...`, `X: Model: ...`
bool is_declaration_start(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (char c : s.substr(0, colon)) {
    if (c == '\'' || c == '"' || c == '$' || c == '(' || c == ')') return false;
  }
  std::string_view rest = trim(s.substr(colon + 1));
  for (std::string_view kw : {"Instance", "Individual", "Model"}) {
    if (rest.starts_with(kw) && trim(rest.substr(kw.size())).starts_with(':')) return true;
  }
  return false;
}

[[noreturn]] void fail(Errc code, const std::string& origin, int line, const std::string& what) {
  throw Error(code, (origin.empty() ? std::string("<bsl>") : origin) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

bool is_expression_head(std::string_view head) {
  return head == "Condition" || head == "ValueCondition" || head == "SetValue" || head == "SetDo" ||
         head == "Default";
}

SourceBlock lex(std::string_view source, std::string origin) {
  SourceBlock block;
  block.origin = std::move(origin);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    const std::size_t nl = source.find('\n', pos);
    std::string_view raw = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
    ++line_no;

    std::string_view s = trim(strip_comment(raw));
    if (s.empty()) continue;

    int depth = 0;
    while (!s.empty() && s.front() == ':') {
      ++depth;
      s = trim(s.substr(1));
    }

    if (depth == 0 && !block.lines.empty() && is_expression_head(block.lines.back().head) &&
        !is_declaration_start(s)) {
      auto& prev = block.lines.back();
      prev.tail += ' ';
      prev.tail += s;
      prev.last_line = line_no;
      continue;
    }

    SourceLine line;
    line.depth = depth;
    line.line = line.last_line = line_no;
    const auto colon = s.find(':');
    line.head = std::string(trim(s.substr(0, colon)));
    if (colon != std::string_view::npos) line.tail = std::string(trim(s.substr(colon + 1)));
    if (line.head.empty()) fail(Errc::EmptyHead, block.origin, line_no, "line has no keyword or name");

    const int parent_depth = block.lines.empty() ? depth - 1 : block.lines.back().depth;
    if (depth > parent_depth + 1) {
      fail(Errc::NonMonotonicIndent, block.origin, line_no,
           "nesting jumps from depth " + std::to_string(parent_depth) + " to " + std::to_string(depth));
    }
    block.lines.push_back(std::move(line));
  }
  return block;
}

}  // namespace eo::bsl
