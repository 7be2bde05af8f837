#include "ccomp/direct_sum.hpp"

#include <cmath>
#include <stdexcept>

#include "ccomp/brute_force.hpp"
#include "ccomp/tolerances.hpp"

namespace ccomp {

BoundReport multiround_bound(std::size_t m, std::size_t k, double eps, double delta,
                             double c_value, double h_kappa) {
  if (m < 1 || k < 1) throw std::invalid_argument("multiround_bound: m, k must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("multiround_bound: eps must be positive");
  if (h_kappa < 0.0) throw std::invalid_argument("multiround_bound: negative H(kappa)");
  BoundReport r;
  r.m = m;
  r.k = k;
  r.eps = eps;
  r.delta = delta;
  r.c_value = c_value;
  r.h_kappa = h_kappa;
  r.bound = static_cast<double>(m) *
            (eps * eps / (2.0 * static_cast<double>(k)) * c_value - 2.0 - h_kappa);
  r.vacuous = r.bound <= 0.0;
  r.provenance = h_kappa == 0.0 ? "multiround direct sum (product case)"
                                : "multiround direct sum (partitioned)";
  return r;
}

BoundReport simul_bound(std::size_t m, double n, double eps, double delta, double r_tilde) {
  if (m < 1) throw std::invalid_argument("simul_bound: m must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("simul_bound: eps must be in (0,1)");
  if (!(n > 0.0)) throw std::invalid_argument("simul_bound: n must be positive");
  BoundReport r;
  r.m = m;
  r.k = 1;
  r.eps = eps;
  r.delta = delta;
  r.c_value = r_tilde;
  r.h_kappa = 0.0;
  r.bound = static_cast<double>(m) * eps / 3.0 *
            (r_tilde - 2.0 * std::log2(n + 1.0) -
             2.0 * std::log2(1.0 / (eps * eps * (1.0 - eps))) - 2.0 / eps - 8.0);
  r.vacuous = r.bound <= 0.0;
  r.provenance = "simultaneous-message direct sum";
  return r;
}

std::optional<BoundReport> ic_lower_bound_from_C(const FunctionSpec& f, const JointDist& mu,
                                                 double delta, double eps, std::size_t k,
                                                 std::size_t bits_per_round) {
  if (!is_product(mu, kPartitionTol))
    throw std::invalid_argument("ic_lower_bound_from_C: mu must be a product distribution");
  const auto c = brute_force_C(f, mu, delta + 2.0 * eps, k, bits_per_round);
  if (!c) return std::nullopt;
  BoundReport r = multiround_bound(1, k, eps, delta, static_cast<double>(*c), 0.0);
  r.provenance = "information-cost lower bound from exhaustive C";
  return r;
}

SuperadditivityReport superadditivity_experiment(const ProtocolTree& pi,
                                                 const PartitionedInput& pm, std::size_t m,
                                                 std::size_t max_cells) {
  SuperadditivityReport rep;
  rep.m = m;
  rep.single_copy = conditional_information_cost(pi, pm);
  if (m == 1) {
    rep.tensor = rep.single_copy;
    rep.residual = 0.0;
    return rep;
  }
  const ProtocolTree tp = tensor_protocol(pi, m, max_cells);
  const PartitionedInput pmm = pm.tensor_power(m, max_cells);
  rep.tensor = conditional_information_cost(tp, pmm);
  rep.residual = rep.tensor - static_cast<double>(m) * rep.single_copy;
  return rep;
}

}  // namespace ccomp
