#pragma once

#include "ccomp/finite_dist.hpp"

namespace ccomp {

/// Shannon entropy in bits, with the 0 log 0 = 0 convention.
double entropy(const FiniteDist& p);

/// Relative entropy S(P||Q) in bits. Returns +infinity (a sentinel, not an
/// exception) iff some symbol has P(i) > 0 and Q(i) = 0. Terms with P(i) = 0
/// contribute nothing, including the 0 log(0/0) case.
double relative_entropy(const FiniteDist& p, const FiniteDist& q);

/// l1 distance: sum_i |P(i) - Q(i)|, in [0, 2].
double total_variation(const FiniteDist& p, const FiniteDist& q);

bool is_infinite(double x);

}  // namespace ccomp
