#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "exokin/tree.hpp"

namespace exokin {

/// Tree document layout (meters, radians):
/// {
///   "name": "...",
///   "basePose": {"rotation": [[..3x3..]], "translation": [x,y,z]},
///   "leftChain":  [{"slot": "hip_flexion", "axis": [..], "offset": [..],
///                   "limits": [min,max]}, ... 6 entries, hip to ankle],
///   "rightChain": [...],
///   "footOffset": {"left": [x,y,z], "right": [x,y,z]}
/// }
nlohmann::json tree_to_json(const KinematicTree& tree);

/// Parses and validates; throws std::invalid_argument on structural problems.
KinematicTree tree_from_json(const nlohmann::json& doc);

std::string tree_to_json_text(const KinematicTree& tree);
KinematicTree tree_from_json_text(const std::string& text);

}  // namespace exokin
