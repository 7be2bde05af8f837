#pragma once

#include <optional>

#include "ccomp/function_spec.hpp"
#include "ccomp/joint_dist.hpp"

namespace ccomp {

/// Exhaustive search for the cheapest deterministic k-round protocol with
/// distributional error <= delta under mu. Protocols are labeled game trees:
/// each round's owner maps (own input, prefix) to a message; the answer is a
/// function of the transcript alone. Rounds may carry 0..bits_per_round bits
/// (a 0-bit round is skipped for free), both speaking orders are tried, and
/// per-node message assignments are searched with memoized rectangle
/// subproblems. Exact by enumeration.
///
/// Returns the minimum total bit count, or nullopt if no protocol within the
/// size bounds achieves the error target. Guarded to |X|,|Y| <= 4, k <= 2,
/// bits_per_round <= 2.
std::optional<std::int64_t> brute_force_C(const FunctionSpec& f, const JointDist& mu,
                                          double delta, std::size_t k,
                                          std::size_t bits_per_round);

}  // namespace ccomp
