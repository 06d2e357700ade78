#pragma once

#include "bithresh/dynamics.hpp"

#include <optional>
#include <string>

namespace bithresh {

enum class ThresholdForm { Uniform, PerVertex, Rule };

struct SystemSpec {
    System system;
    ThresholdForm form = ThresholdForm::PerVertex;  // preserved across round trips
    std::optional<WeightedSystem> weighted;
};

// Parses the system-spec JSON document:
//   {"graph": {"n": ..., "edges": [[u,v], ...]},
//    "thresholds": {"uniform": {"kup": K, "kdown": K}}
//                | {"per_vertex": [{"v": V, "kup": K, "kdown": K}, ...]}
//                | {"rule": "kdown_deg_plus_1", "kup": K},
//    "update": {"mode": "sync"} | {"mode": "seq", "pi": [..1-based..]},
//    "weighted": {"A": [[..rationals as strings or ints..]],
//                 "kup": [...], "kdown": [...], "allow_asymmetric": bool}}  (optional)
// All labels 1-based. Malformed input throws std::invalid_argument with a
// message naming the offending field.
SystemSpec parse_system_spec(const std::string& json_text);
SystemSpec load_system_spec(const std::string& path);

std::string system_spec_to_json(const SystemSpec& spec);
void save_system_spec(const SystemSpec& spec, const std::string& path);

// Bridged union of two sequential systems: disjoint graphs joined through a
// fresh vertex w adjacent to the (0-based) anchors, per-vertex thresholds
// transported along the relabeling, thresholds (3,3) at w so it can never
// fire from state 0, and update order pi1 | shifted pi2 | w. Weighted blocks
// are dropped. Both inputs must use sequential update.
SystemSpec make_union_spec(const SystemSpec& a, const SystemSpec& b, int u1, int u2);

} // namespace bithresh
