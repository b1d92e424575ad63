#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "partsched/instance.hpp"
#include "partsched/reductions.hpp"

namespace partsched {

// Instance documents:
//   {"machines": m, "resources": R,
//    "jobs": [{"id": j, "p": 3 | [num, den], "resources": [r...], "weight": w?}],
//    "machine_subsets": {"r": [i...]}?, "unmovable": bool?, "capacities": [c...]?,
//    "unrelated_times": [[p_ij...] per machine]?}
// Schedule documents:
//   {"entries": [{"job": j, "machine": i, "start": [num, den]}]}
// Gadget sidecars:
//   {"kind": "...", "threshold": [num, den] | null, "provenance": {"key": "value"}}
//
// Rationals are [numerator, denominator] pairs; integers may be written bare.

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& value);

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& doc);

Json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const Json& doc);

Json gadget_metadata_to_json(const GadgetInstance& gadget);

Instance read_instance(const std::filesystem::path& path);
Schedule read_schedule(const std::filesystem::path& path);

/// Writes `doc` pretty-printed with a trailing newline. Throws Error on I/O failure.
void write_json(const std::filesystem::path& path, const Json& doc);
Json read_json(const std::filesystem::path& path);

} // namespace partsched
