#pragma once

#include <string>

#include "json.hpp"

#include "nbell/oracle.hpp"
#include "nbell/witness.hpp"

namespace nbell::io {

using nlohmann::json;

/// Locale-independent rendering with 12 significant digits.
std::string format_number(Real value);
/// Value after rounding to 12 significant digits, so JSON output stays stable.
Real round_significant(Real value);

/// Reads {"n", "kind": "pure", "amplitudes": [[re, im], ...]} or
/// {"n", "kind": "density", "matrix": [[[re, im], ...], ...]}. Pure amplitudes are normalized.
State state_from_json(const json& document);
State state_from_text(const std::string& text);
json state_to_json(const State& state);

json to_json(const PartitionSpec& partition);
PartitionSpec partition_from_json(const json& document);

json to_json(const AntidiagonalProfile& profile);
json to_json(const CorrelationTensor& tensor);
json to_json(const WitnessReport& report);
json to_json(const ValidationReport& report);

}  // namespace nbell::io
