#pragma once

#include <json.hpp>

#include "setpoint/bead.hpp"
#include "setpoint/descent.hpp"
#include "setpoint/instance_gen.hpp"
#include "setpoint/inward.hpp"
#include "setpoint/scan.hpp"
#include "setpoint/solver.hpp"

namespace setpoint {

// Ordered JSON keeps report bytes stable run to run.
using Json = nlohmann::ordered_json;

Json space_to_json(const MetricSpace& space);
Json map_to_json(const MultiMap& map);
Json instance_to_json(const Instance& inst);

Json to_json(const MetricValidation& v);
Json to_json(const ConditionReport& r);
Json to_json(const IterationTrace& t);
Json to_json(const LimitVerdict& v);
Json to_json(const BeadCertificate& c);
Json to_json(const CenterResult& c);
Json to_json(const RegularityReport& r);
Json to_json(const NonexpansiveVerdict& v);
Json to_json(const DescentVerdict& v);
Json to_json(const GraphDescentVerdict& v);
Json to_json(const InwardCertificate& c);
Json to_json(const NormedInwardWitness& w);
Json to_json(const Lemma35Result& r);
Json to_json(const InwardSolveVerdict& v);
Json to_json(const MinGapVerdict& v);
Json to_json(const ScanReport& r);
Json to_json(const FoundInstance& f);

// One JSON object per trace step plus a terminal record for the last point.
std::vector<Json> trace_records(const IterationTrace& t);
std::string trace_to_jsonl(const IterationTrace& t);
std::string trace_to_csv(const IterationTrace& t);

// Problem-file object parsers; `path` prefixes diagnostics.
SpacePtr parse_space(const Json& j, const std::string& path = "space");
MultiMap parse_map(const Json& j, SpacePtr space, const std::string& path = "");

}  // namespace setpoint
