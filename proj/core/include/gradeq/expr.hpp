#pragma once

#include "gradeq/game.hpp"
#include "gradeq/semantics.hpp"

#include <string_view>

// Text syntax shared by the CLI and the HTTP API.
//
//   det state   `3`, `{0,2}`, `{}`, `{0:1/2, 3:1/2}`
//   pair        `{1,3} = {3}`, and for simulation `1 <= 5` or `1 >= 5`
//   relation    pairs separated by `;`, or `empty`

namespace gradeq {

/// Parses a det state for semantics `id`. A bare index means eta(id, i).
/// Does not check indices against a system; see validate_det_state.
DetState parse_det_state(SemanticsId id, std::string_view text);

MovePair parse_move_pair(SemanticsId id, std::string_view text);

MoveRelation parse_relation(SemanticsId id, std::string_view text);

std::string to_string(const MovePair& pair);
std::string to_string(const MoveRelation& relation);

} // namespace gradeq
