#pragma once

#include <json.hpp>

#include "eo/graph/event.hpp"
#include "eo/value.hpp"

namespace eo {

using ordered_json = nlohmann::ordered_json;

/// `{"type": <tag>, "v": <payload>}`; Null has no payload.
ordered_json value_to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);
/// Plain JSON scalar for API clients: strings, numbers, booleans, null.
/// References render as their id.
ordered_json value_to_plain_json(const Value& v);

ordered_json event_to_json(const graph::Event& e);
graph::Event event_from_json(const nlohmann::json& j);

}  // namespace eo
