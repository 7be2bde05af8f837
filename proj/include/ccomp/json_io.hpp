#pragma once

#include <json.hpp>
#include <string>

#include "ccomp/direct_sum.hpp"
#include "ccomp/finite_dist.hpp"
#include "ccomp/function_spec.hpp"
#include "ccomp/joint_dist.hpp"
#include "ccomp/partitioned_input.hpp"
#include "ccomp/protocol_tree.hpp"
#include "ccomp/round_compress.hpp"
#include "ccomp/simul_compress.hpp"
#include "ccomp/simul_protocol.hpp"
#include "ccomp/substate.hpp"

namespace ccomp::io {

using nlohmann::json;

// File formats. Keys are deterministic (objects are emitted sorted), so a
// re-serialized value is byte-identical.
//
//   FiniteDist      {"alphabet": [...], "probs": [...]}        (parallel arrays)
//   JointDist       {"axes": [{"name","range"}...], "probs": [row-major...]}
//   Partition       {"kappa": FiniteDist, "components": [JointDist...]}
//   FunctionSpec    {"x": [...], "y": [...], "z": [...], "accept": {"x,y": [z...]}}
//   ProtocolTree    {"rounds", "owners", "x_range", "y_range", "alphabets",
//                    "policy": {"round|input|prefix": [probs...]},
//                    "output": {"m1,m2,...": z}, "bit_lengths": [[...]...]?}
//   SimulProtocol   {"x_range","y_range","alice_alphabet","bob_alphabet",
//                    "alice_policy","bob_policy","referee": {"mA,mB": z}}

json to_json(const FiniteDist& d);
FiniteDist dist_from_json(const json& j);

json to_json(const JointDist& d);
JointDist joint_from_json(const json& j);

json to_json(const PartitionedInput& p);
PartitionedInput partition_from_json(const json& j);

json to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const json& j);

json to_json(const ProtocolTree& p);
ProtocolTree protocol_from_json(const json& j);

json to_json(const SimulProtocol& p);
SimulProtocol simul_from_json(const json& j);

json to_json(const SubstateDecomposition& d);
json to_json(const ErrorReport& r);
json to_json(const BoundReport& r);
json to_json(const SimulCompressionReport& r);
json to_json(const MultiCompressionReport& r);

/// Parses a JSON file; wraps syntax/shape errors with the file name.
json load_json_file(const std::string& path);
/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ccomp::io
