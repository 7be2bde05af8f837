#pragma once

#include <vector>

#include "ccomp/finite_dist.hpp"

namespace ccomp {

/// Output of the substate decomposition of (P, Q) at scale r >= 1:
///   good  = { i : P(i) / 2^{r(a+1)} <= Q(i) },  a = S(P||Q)
///   P(good) >= 1 - 1/r
///   p_tilde = P restricted to good and renormalized, ||P - p_tilde||_1 <= 2/r
///   alpha = ((r-1)/r) 2^{-r(a+1)},  alpha * p_tilde <= Q pointwise
struct SubstateDecomposition {
  double a = 0.0;  // S(P||Q) in bits, recomputed internally
  double r = 1.0;
  std::vector<std::size_t> good;  // ascending indices into the alphabet
  FiniteDist p_tilde;
  double alpha = 0.0;
};

/// Builds the decomposition; throws if S(P||Q) is infinite or r < 1.
/// Boundary ties P(i)/2^{r(a+1)} == Q(i) are counted as good. When
/// P(good) == 1 the renormalization is skipped and p_tilde == P exactly.
SubstateDecomposition substate_decompose(const FiniteDist& p, const FiniteDist& q, double r);

}  // namespace ccomp
