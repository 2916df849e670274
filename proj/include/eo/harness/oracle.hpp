#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eo/bsl/catalog.hpp"
#include "eo/graph/event.hpp"
#include "eo/graph/projection.hpp"

namespace eo::harness {

/// Re-evaluates every SetValue of every individual over `state`, writing
/// changed values, until a full pass changes nothing. Knows nothing of
/// subscriptions; the reference the incremental engine is checked against.
graph::ProjectedState naive_fixpoint(const bsl::Catalog& catalog, graph::ProjectedState state,
                                     std::size_t max_passes = 1000);

/// `state` with `trigger` applied and the SetDo hosted on its slot run,
/// followed by naive_fixpoint.
graph::ProjectedState naive_cascade(const bsl::Catalog& catalog, graph::ProjectedState state,
                                    const graph::Event& trigger);

struct OracleStats {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::vector<std::string> mismatches;
};

/// Random small states over the Delivery and Recharging models, one random
/// accepted injection each, engine projection compared with naive_cascade.
OracleStats oracle_trials(std::size_t trials, std::uint64_t seed);

}  // namespace eo::harness
