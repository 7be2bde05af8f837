#include "ccomp/partitioned_input.hpp"

#include <cmath>
#include <stdexcept>

#include "ccomp/tolerances.hpp"

namespace ccomp {

bool is_product(const JointDist& mu, double tol) {
  if (mu.num_axes() != 2) throw std::invalid_argument("is_product: expected two axes");
  const FiniteDist mx = mu.axis_dist(mu.axes()[0].name);
  const FiniteDist my = mu.axis_dist(mu.axes()[1].name);
  for (std::size_t x = 0; x < mx.size(); ++x)
    for (std::size_t y = 0; y < my.size(); ++y)
      if (std::abs(mu.prob({x, y}) - mx.p(x) * my.p(y)) > tol) return false;
  return true;
}

JointDist PartitionedInput::mix(const FiniteDist& kappa,
                                const std::vector<JointDist>& components) {
  std::vector<double> probs(components[0].table_size(), 0.0);
  for (std::size_t d = 0; d < components.size(); ++d) {
    const auto& c = components[d].probs();
    for (std::size_t i = 0; i < c.size(); ++i) probs[i] += kappa.p(d) * c[i];
  }
  // Mixtures of valid tables can drift a hair past the strict sum check.
  double sum = 0.0;
  for (double p : probs) sum += p;
  for (double& p : probs) p /= sum;
  return JointDist(components[0].axes(), std::move(probs));
}

PartitionedInput::PartitionedInput(FiniteDist kappa, std::vector<JointDist> components)
    : kappa_(std::move(kappa)),
      components_(std::move(components)),
      mu_(mix(kappa_, components_)) {
  if (components_.empty()) throw std::invalid_argument("PartitionedInput: no components");
  if (kappa_.size() != components_.size())
    throw std::invalid_argument("PartitionedInput: kappa size != number of components");
  for (const auto& c : components_) {
    if (c.num_axes() != 2)
      throw std::invalid_argument("PartitionedInput: components must have two axes");
    if (c.axes()[0].range != components_[0].axes()[0].range ||
        c.axes()[1].range != components_[0].axes()[1].range)
      throw std::invalid_argument("PartitionedInput: component ranges disagree");
    if (!is_product(c, kPartitionTol))
      throw std::invalid_argument("PartitionedInput: component is not a product distribution");
  }
}

PartitionedInput PartitionedInput::trivial(const JointDist& mu) {
  if (!is_product(mu, kPartitionTol))
    throw std::invalid_argument("PartitionedInput::trivial: mu is not product");
  FiniteDist kappa({"d0"}, {1.0});
  return PartitionedInput(std::move(kappa), {mu});
}

PartitionedInput PartitionedInput::tensor_power(std::size_t m, std::size_t max_cells) const {
  if (m == 0) throw std::invalid_argument("PartitionedInput::tensor_power: m must be >= 1");
  if (m == 1) return *this;
  // kappa^m over tuple indices; component for tuple (d_1..d_m) is the product
  // of the per-copy components, which is again product over (X^m, Y^m).
  const std::size_t K = kappa_.size();
  std::size_t total = 1;
  for (std::size_t c = 0; c < m; ++c) total *= K;

  std::vector<std::string> ksyms;
  std::vector<double> kprobs;
  ksyms.reserve(total);
  kprobs.reserve(total);
  std::vector<JointDist> comps;
  comps.reserve(total);

  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    std::vector<std::size_t> d(m);
    for (std::size_t c = m; c-- > 0;) {
      d[c] = rem % K;
      rem /= K;
    }
    std::string sym;
    double kp = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
      if (c) sym += ';';
      sym += kappa_.symbol(d[c]);
      kp *= kappa_.p(d[c]);
    }
    ksyms.push_back(std::move(sym));
    kprobs.push_back(kp);

    // Component table over (X^m, Y^m).
    const auto& ax0 = components_[0].axes()[0];
    const auto& ax1 = components_[0].axes()[1];
    JointDist templ = components_[0].tensor_power(m, max_cells);  // axis naming/shape
    std::vector<double> cp(templ.table_size());
    const std::size_t nx = ax0.range.size();
    const std::size_t ny = ax1.range.size();
    std::size_t nxm = 1, nym = 1;
    for (std::size_t c = 0; c < m; ++c) {
      nxm *= nx;
      nym *= ny;
    }
    for (std::size_t xf = 0; xf < nxm; ++xf) {
      for (std::size_t yf = 0; yf < nym; ++yf) {
        double p = 1.0;
        std::size_t xr = xf, yr = yf;
        std::vector<std::size_t> xd(m), yd(m);
        for (std::size_t c = m; c-- > 0;) {
          xd[c] = xr % nx;
          xr /= nx;
          yd[c] = yr % ny;
          yr /= ny;
        }
        for (std::size_t c = 0; c < m; ++c) p *= components_[d[c]].prob({xd[c], yd[c]});
        cp[xf * nym + yf] = p;
      }
    }
    comps.emplace_back(templ.axes(), std::move(cp));
  }
  return PartitionedInput(FiniteDist(std::move(ksyms), std::move(kprobs)), std::move(comps));
}

}  // namespace ccomp
