#pragma once

#include <json.hpp>

#include "ccomp/quantum.hpp"

namespace ccomp::io {

using nlohmann::json;

/// Ensemble save format: binary-free JSON of the basis matrices, rows of
/// interleaved (re, im) pairs, for reproducibility across runs.
json to_json(const quantum::QuantumEnsemble& e);
quantum::QuantumEnsemble ensemble_from_json(const json& j);

}  // namespace ccomp::io
