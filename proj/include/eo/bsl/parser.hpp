#pragma once

#include <string>
#include <string_view>

#include "eo/bsl/ast.hpp"
#include "eo/bsl/lexer.hpp"

namespace eo::bsl {

/// Builds declarations from lexed lines, preserving source order.
/// Restriction expressions stay raw text.
/// Errors: UnknownKeyword, OrphanRestriction, DuplicateRestrictionKind,
/// UnknownControlType.
ParseResult parse(const SourceBlock& block);

/// lex + parse.
ParseResult parse_source(std::string_view source, std::string origin = {});

/// Canonical BSL rendering: one line per restriction, no wrapping.
std::string print(const std::vector<Declaration>& decls);

}  // namespace eo::bsl
