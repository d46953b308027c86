#pragma once

// JSON shapes shared by the CLI and the tests. Key order is nlohmann's
// sorted order, so equal values always print identically.

#include "json.hpp"

#include "endkit/classify.hpp"
#include "endkit/decompose.hpp"
#include "endkit/degree.hpp"
#include "endkit/ends.hpp"
#include "endkit/rewrite.hpp"

namespace endkit {

using Json = nlohmann::json;

Json count_json(Count c);  // number, or "inf"
Json to_json(const CBReport& r);
/// {"states", "edges": [[from, to], ...], "root", "nonplanar_states"}
Json to_json(const EndsAutomaton& e);
Json to_json(const ClassifierVerdict& v);
Json invariants_json(const SurfacePresentation& p, std::uint64_t rank_cutoff = 16);

/// {"pants": N, "punctured_disks": M}, plus "one_holed_tori" and
/// "truncated" only when they carry information.
Json census_json(const DecompositionWindow& w);
Json to_json(const DecompositionWindow& w);
Json to_json(const SpineGraph& g);
Json to_json(const EssentialPants& e);

/// Throws Error(curve-rewrite, InvalidConfig) on schema violations.
CurveConfig config_from_json(const Json& j);
Json to_json(const CurveConfig& c);
Json to_json(const TraceEntry& e);

/// Throws Error(degree, InvalidDescriptor) on schema violations.
MapDescriptor descriptor_from_json(const Json& j);
Json to_json(const MapDescriptor& m);
Json to_json(const DegreeReport& r);

}  // namespace endkit
