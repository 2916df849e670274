#pragma once

#include <vector>

#include "eo/bsl/ast.hpp"
#include "eo/json.hpp"

namespace eo::bsl {

/// Canonical JSON form of a declaration list (golden tests, model browser).
ordered_json to_json(const std::vector<Declaration>& decls);
ordered_json to_json(const Declaration& decl);

}  // namespace eo::bsl
