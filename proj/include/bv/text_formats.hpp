#pragma once

#include <string>
#include <string_view>

#include "bv/gridworld.hpp"
#include "bv/verify.hpp"

namespace bv {

// Text forms used by the CLI. All parsers throw std::invalid_argument with a
// message naming the offending token.
//
//   plan         one character per move over {U, D, L, R}
//   requirement  "hits<K", K a positive integer
//   world        height lines of width characters: '.' free, '#' obstacle,
//                'S' the unique start; line i holds row y = i, and U moves
//                toward higher y
//   observations "failures/total" (e.g. "2/10") or a raw outcome string over
//                {S, F} with F marking a failed move

Plan parse_plan(std::string_view text);
std::string format_plan(const Plan& plan);

Requirement parse_requirement(std::string_view text);
std::string format_requirement(const Requirement& req);

GridWorld parse_world(std::string_view text);
std::string write_world(const GridWorld& world);

ObservationSummary parse_observations(std::string_view text);

}  // namespace bv
