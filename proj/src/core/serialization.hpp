#pragma once

// Text formats: state files, ray tables, estimates, functionals.

#include <string>

#include <json.hpp>

#include "core/measure_estimator.hpp"
#include "core/monotone_discovery.hpp"
#include "core/quantum_state.hpp"

namespace optcorr {

using Json = nlohmann::ordered_json;

extern const char* const kVersion;

/// {"dims": {"A": 2, ...}, "matrix": [[[re, im], ...], ...]} with 17 significant digits.
std::string state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const std::string& text);

Json alpha_to_json(const Alpha& alpha);
Json int_row_to_json(const IntVector& row);

/// Ray table with one row per generator (rays, then both orientations of each
/// lineality vector) plus the cone label and classification.
Json discovery_to_json(const DiscoveryResult& result, const Json& config);
std::string discovery_to_csv(const DiscoveryResult& result, const Json& config);
/// Plain-text layout mirroring the reference tables; rows follow the reference
/// order when the sets match.
std::string discovery_to_table(const DiscoveryResult& result);

Json estimate_to_json(const MeasureEstimate& est, const Json& config);

Json functional_to_json(const EntropyFunctional& f);
EntropyFunctional functional_from_json(const PartySet& parties, const Json& j);

}  // namespace optcorr
