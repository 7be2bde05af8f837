#pragma once

#include <string>
#include <vector>

#include "ccomp/finite_dist.hpp"

namespace ccomp {

struct Axis {
  std::string name;
  std::vector<std::string> range;
};

/// Exact joint distribution over named finite axes, stored as a row-major
/// table. All derived quantities (marginals, conditionals, entropies) are
/// computed from the full table; nothing is estimated.
class JointDist {
 public:
  JointDist(std::vector<Axis> axes, std::vector<double> probs);

  /// Independent product of two distributions on fresh axes.
  static JointDist product(const Axis& a, const FiniteDist& pa,
                           const Axis& b, const FiniteDist& pb);

  std::size_t num_axes() const { return axes_.size(); }
  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t table_size() const { return probs_.size(); }

  std::size_t axis_index(const std::string& name) const;
  double prob(const std::vector<std::size_t>& idx) const;

  /// Marginal over the named axes (kept in this distribution's axis order).
  JointDist marginal(const std::vector<std::string>& names) const;
  /// This distribution conditioned on axis == value, renormalized; the axis
  /// is removed. Throws if the event has zero mass.
  JointDist condition(const std::string& axis, std::size_t value) const;
  double axis_mass(const std::string& axis, std::size_t value) const;

  /// Flattened view as a distribution over composite symbols (joined by '|').
  FiniteDist flatten() const;
  /// Single-axis marginal as a FiniteDist over that axis's range.
  FiniteDist axis_dist(const std::string& name) const;

  /// Entropy of the whole table, in bits.
  double entropy_all() const;
  double entropy_of(const std::vector<std::string>& names) const;

  /// Tensor power: m independent copies; axis ranges become ';'-joined
  /// tuples. Guarded against state-space blowup.
  JointDist tensor_power(std::size_t m, std::size_t max_cells = (1u << 22)) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> probs_;
  std::vector<std::size_t> strides_;

  void check_names_subset(const std::vector<std::string>& names) const;
};

/// I(A : B) = H(A) + H(B) - H(AB), in bits. Axis sets must be disjoint.
double mutual_information(const JointDist& j, const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

/// I((A : B) | Z) = H(AZ) + H(BZ) - H(ABZ) - H(Z), in bits; equals the
/// Z-expectation of the conditional mutual information.
double conditional_mutual_information(const JointDist& j,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& z);

}  // namespace ccomp
