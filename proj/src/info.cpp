#include "ccomp/info.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccomp {

double entropy(const FiniteDist& p) {
  double h = 0.0;
  for (double x : p.probs()) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double relative_entropy(const FiniteDist& p, const FiniteDist& q) {
  if (!p.same_alphabet(q))
    throw std::invalid_argument("relative_entropy: alphabet mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.p(i);
    if (pi <= 0.0) continue;
    const double qi = q.p(i);
    if (qi <= 0.0) return std::numeric_limits<double>::infinity();
    s += pi * std::log2(pi / qi);
  }
  return s;
}

double total_variation(const FiniteDist& p, const FiniteDist& q) {
  if (!p.same_alphabet(q))
    throw std::invalid_argument("total_variation: alphabet mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p.p(i) - q.p(i));
  return d;
}

bool is_infinite(double x) { return std::isinf(x); }

}  // namespace ccomp
