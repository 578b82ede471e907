#pragma once

#include "gradeq/engine.hpp"
#include "gradeq/game.hpp"
#include "gradeq/systems.hpp"
#include "gradeq/witness.hpp"

#include <nlohmann/json.hpp>

// JSON encodings shared by the CLI and the HTTP API. Det states are written in
// the expression syntax of expr.hpp, labels by name, rationals as "p/q".

namespace gradeq {

using Json = nlohmann::json;

Json witness_to_json(const Witness& witness, const std::vector<std::string>& alphabet);
Json verdict_to_json(const Verdict& verdict, const std::vector<std::string>& alphabet);
Json determinization_to_json(const DetGraph& g);
Json system_to_json(const TransitionSystem& sys);

Json move_pair_to_json(const MovePair& pair);
MovePair move_pair_from_json(SemanticsId id, const Json& j);
Json relation_to_json(const MoveRelation& z);
MoveRelation relation_from_json(SemanticsId id, const Json& j);
Json configuration_to_json(const Configuration& c);

Json transcript_to_json(const std::vector<TranscriptEvent>& events);
std::vector<TranscriptEvent> transcript_from_json(SemanticsId id, const Json& j);

} // namespace gradeq
