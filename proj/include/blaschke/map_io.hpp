#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "blaschke/maps.hpp"

namespace blaschke {

// Map-spec JSON:
//   {"type":"blaschke","zeros":[{"re":r,"im":i,"mult":m},...],"rotation":t}
//   {"type":"automorphism","a":{"re":r,"im":i},"rotation":t}
//   {"type":"atomic_singular","atoms":[{"angle":t,"mass":s},...]}
//   {"type":"affine","scale":{"re":r,"im":i},"offset":{"re":r,"im":i}}
//   {"type":"compose","outer":<spec>,"inner":<spec>}
//   {"type":"identity"}
// Angles in radians; "mult" defaults to 1 and "rotation" to 0. Any other
// shape is rejected with a field-precise ParseError ($.path: what failed).
SelfMap parse_map_spec(std::string_view text, std::uint64_t seed = 0);

SelfMap load_map_spec_file(const std::string& path, std::uint64_t seed = 0);

}  // namespace blaschke
