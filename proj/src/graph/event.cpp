#include "eo/graph/event.hpp"

#include <cstdio>

namespace eo::graph {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void mix(std::uint64_t& h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= 0x1f;  // field separator
  h *= kFnvPrime;
}

}  // namespace

std::string event_id(Seq seq, std::string_view base, std::string_view property, const Value& value) {
  std::uint64_t h = kFnvOffset;
  mix(h, std::to_string(seq));
  mix(h, base);
  mix(h, property);
  mix(h, type_tag(value.type()));
  mix(h, value.text());
  h ^= h >> 29;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%012llx", static_cast<unsigned long long>(h & 0xffffffffffffULL));
  return buf;
}

}  // namespace eo::graph
