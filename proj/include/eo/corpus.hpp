#pragma once

#include <string_view>

// Behaviour blocks and the benchmark tree, compiled into the library.
namespace eo::corpus {

std::string_view prelude();
std::string_view delivery();
std::string_view recharging();
std::string_view docking();

/// trees/benchmark.json: the delivery tree and its extension subtrees.
std::string_view benchmark_tree();

}  // namespace eo::corpus
