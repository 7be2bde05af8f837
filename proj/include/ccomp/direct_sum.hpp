#pragma once

#include <optional>
#include <string>

#include "ccomp/function_spec.hpp"
#include "ccomp/info_cost.hpp"
#include "ccomp/partitioned_input.hpp"

namespace ccomp {

/// A lower bound assembled from computed quantities. Vacuous (<= 0) bounds
/// are reported as-is, never clamped.
struct BoundReport {
  std::size_t m = 1, k = 1;
  double eps = 0.0, delta = 0.0;
  double c_value = 0.0;  // distributional complexity fed in
  double h_kappa = 0.0;  // entropy of the partition index
  double bound = 0.0;
  bool vacuous = false;
  std::string provenance;
};

/// m-copy k-round bound: m * (eps^2/(2k) * C - 2 - H(kappa)). With
/// h_kappa = 0 this is the product-distribution special case.
BoundReport multiround_bound(std::size_t m, std::size_t k, double eps, double delta,
                             double c_value, double h_kappa);

/// Simultaneous-message bound:
/// (m eps / 3) (r_tilde - 2 log2(n+1) - 2 log2(1/(eps^2 (1-eps))) - 2/eps - 8).
BoundReport simul_bound(std::size_t m, double n, double eps, double delta, double r_tilde);

/// Single-copy bound from an exact distributional-complexity value:
/// eps^2/(2k) * C^k_{mu, delta+2eps}(f) - 2, with C from the exhaustive
/// oracle. mu must be product. Returns nullopt when no protocol within the
/// oracle's size bounds achieves the error target.
std::optional<BoundReport> ic_lower_bound_from_C(const FunctionSpec& f, const JointDist& mu,
                                                 double delta, double eps, std::size_t k,
                                                 std::size_t bits_per_round = 2);

/// Conditional information cost of m interleaved copies vs m times the
/// single-copy value; equality (within tol) witnesses superadditivity.
struct SuperadditivityReport {
  std::size_t m = 1;
  double single_copy = 0.0;
  double tensor = 0.0;
  double residual = 0.0;  // tensor - m * single_copy
};

SuperadditivityReport superadditivity_experiment(const ProtocolTree& pi,
                                                 const PartitionedInput& pm, std::size_t m,
                                                 std::size_t max_cells = (1u << 22));

}  // namespace ccomp
