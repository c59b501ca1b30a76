#pragma once

#include <string>

#include <json.hpp>

#include "entverify/measure.hpp"
#include "entverify/pureverify.hpp"
#include "entverify/qcore.hpp"
#include "entverify/separability.hpp"
#include "entverify/witness.hpp"

namespace entverify::io {

using nlohmann::json;

// State/matrix file format:
//   { "dims": [d_1,...,d_n], "kind": "pure"|"density"|"observable",
//     "data": [[re,im], ...] }
// with row-major flattening for matrices; observables may carry a "label".
// Readers round-trip writer output bit-exactly.

json to_json(const PureState& psi);
json to_json(const DensityMatrix& rho);
json to_json(const Observable& obs);

PureState pure_from_json(const json& j);
DensityMatrix density_from_json(const json& j);
Observable observable_from_json(const json& j);

/// "kind" field of a state file ("pure", "density" or "observable").
std::string kind_of(const json& j);

json to_json(const Verdict& verdict);
json to_json(const MeasurementLedger& ledger);
json to_json(const WitnessPair& pair, std::int64_t observable_count);
json to_json(const SearchReport& report);
json to_json(const SeesawResult& result);
json to_json(const DepthReport& report);

/// Parse a JSON file; throws ParseError on IO or syntax failure.
json load_json_file(const std::string& path);

void write_json_file(const std::string& path, const json& j);

} // namespace entverify::io
