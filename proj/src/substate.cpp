#include "ccomp/substate.hpp"

#include <cmath>
#include <stdexcept>

#include "ccomp/info.hpp"

namespace ccomp {

SubstateDecomposition substate_decompose(const FiniteDist& p, const FiniteDist& q, double r) {
  if (r < 1.0) throw std::invalid_argument("substate_decompose: r must be >= 1");
  const double a = relative_entropy(p, q);
  if (is_infinite(a))
    throw std::domain_error("substate_decompose: substate undefined, S(P||Q) is infinite");

  SubstateDecomposition d{a, r, {}, p, 0.0};
  // Membership test in long double so 2^{r(a+1)} survives large exponents.
  const long double exponent = static_cast<long double>(r) * (static_cast<long double>(a) + 1.0L);
  const bool threshold_huge = exponent >= 16000.0L;  // beyond long double range: everything passes
  const long double threshold = threshold_huge ? 0.0L : std::exp2(exponent);

  double good_mass = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long double pi = p.p(i);
    const long double qi = q.p(i);
    bool in_good;
    if (qi > 0.0L) {
      in_good = threshold_huge || pi <= qi * threshold;
    } else {
      in_good = pi == 0.0L;  // P(i)/2^T <= 0 only for P(i) = 0
    }
    if (in_good) {
      d.good.push_back(i);
      good_mass += p.p(i);
    }
  }

  if (d.good.size() == p.size() || good_mass >= 1.0) {
    d.p_tilde = p;
  } else {
    std::vector<double> probs(p.size(), 0.0);
    for (std::size_t i : d.good) probs[i] = p.p(i) / good_mass;
    d.p_tilde = FiniteDist(p.alphabet(), std::move(probs));
  }

  const long double alpha =
      ((static_cast<long double>(r) - 1.0L) / static_cast<long double>(r)) *
      std::exp2(-exponent);  // underflows to 0 for huge exponents, which is correct
  d.alpha = static_cast<double>(alpha);

  // Decomposition guarantees, checked on return.
  if (good_mass < 1.0 - 1.0 / r - 1e-12)
    throw std::logic_error("substate_decompose: good mass fell below 1 - 1/r");
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) l1 += std::abs(p.p(i) - d.p_tilde.p(i));
  if (l1 > 2.0 / r + 1e-12)
    throw std::logic_error("substate_decompose: l1 shift exceeds 2/r");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (d.alpha * d.p_tilde.p(i) > q.p(i) + 1e-12)
      throw std::logic_error("substate_decompose: alpha p_tilde exceeds Q");
  }
  return d;
}

}  // namespace ccomp
