#pragma once

#include "ccomp/function_spec.hpp"
#include "ccomp/joint_dist.hpp"
#include "ccomp/partitioned_input.hpp"
#include "ccomp/protocol_tree.hpp"

namespace ccomp {

/// Exact joint law of (X, Y, T) for a protocol run on inputs ~ mu. The T
/// axis enumerates all reachable transcripts (plus one absorbing cell for
/// unreachable combinations, kept at zero mass).
JointDist protocol_joint(const ProtocolTree& pi, const JointDist& mu);

/// Information cost I(XY : T) under mu, in bits.
double information_cost(const ProtocolTree& pi, const JointDist& mu);

/// Conditional information cost: sum_d kappa(d) I(XY : T) under mu_d.
double conditional_information_cost(const ProtocolTree& pi, const PartitionedInput& pm);

/// Exact per-input, worst-case and mu-average error against f.
ErrorReport evaluate_error(const ProtocolTree& pi, const FunctionSpec& f, const JointDist& mu);

/// m independent copies run round-interleaved: round i carries the tuple of
/// the copies' round-i messages. Information cost under mu^m is additive.
ProtocolTree tensor_protocol(const ProtocolTree& pi, std::size_t m,
                             std::size_t max_cells = (1u << 22));

}  // namespace ccomp
