#pragma once

#include <iosfwd>
#include <string>

#include "tourney/tournament.hpp"

namespace tourney {

// Text format, bit-exact round trip:
//   line 1: "n k" (vertex count, color count; k = 0 for all-default colors)
//   line 2: n colors, space separated (omitted when k = 0)
//   then n rows of n characters over {0,1,-}; row u column v is 1 iff u -> v.
std::string to_text(const Tournament& t);
Tournament from_text(const std::string& text);

void write_tournament_file(const std::string& path, const Tournament& t);
Tournament read_tournament_file(const std::string& path);

Tournament read_tournament(std::istream& in);

}  // namespace tourney
