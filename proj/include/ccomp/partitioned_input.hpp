#pragma once

#include <vector>

#include "ccomp/joint_dist.hpp"

namespace ccomp {

/// An input distribution mu over X x Y expressed as a kappa-weighted mixture
/// of product distributions, one component per index d. Construction checks
/// that the mixture reproduces mu pointwise and that every component
/// factorizes as (X-marginal) x (Y-marginal).
class PartitionedInput {
 public:
  PartitionedInput(FiniteDist kappa, std::vector<JointDist> components);

  /// Trivial partition: a single component (mu itself, which must be product).
  static PartitionedInput trivial(const JointDist& mu);

  const JointDist& mu() const { return mu_; }
  const FiniteDist& kappa() const { return kappa_; }
  const std::vector<JointDist>& components() const { return components_; }
  std::size_t num_components() const { return components_.size(); }

  /// m independent copies: kappa^m partitions mu^m componentwise.
  PartitionedInput tensor_power(std::size_t m, std::size_t max_cells = (1u << 22)) const;

 private:
  FiniteDist kappa_;
  std::vector<JointDist> components_;
  JointDist mu_;

  static JointDist mix(const FiniteDist& kappa, const std::vector<JointDist>& components);
};

/// Checks |mu(x,y) - muX(x) muY(y)| <= tol pointwise.
bool is_product(const JointDist& mu, double tol);

}  // namespace ccomp
