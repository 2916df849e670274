#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eo::bsl {

/// One logical line: `depth` leading colons, then `head: tail`.
struct SourceLine {
  int depth = 0;
  std::string head;
  std::string tail;
  int line = 0;      // 1-based line of the first physical line
  int last_line = 0; // last physical line joined into this one
  bool operator==(const SourceLine&) const = default;
};

struct SourceBlock {
  std::string origin;  // file name or label, for diagnostics
  std::vector<SourceLine> lines;
};

/// Strips `#` comments and blank lines, measures colon depth and joins
/// wrapped expression lines into the preceding restriction.
/// Errors: NonMonotonicIndent, EmptyHead.
SourceBlock lex(std::string_view source, std::string origin = {});

/// True for restriction heads whose tail is an expression.
bool is_expression_head(std::string_view head);

}  // namespace eo::bsl
