#include "ccomp/finite_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "ccomp/tolerances.hpp"

namespace ccomp {

FiniteDist::FiniteDist(std::vector<std::string> alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  if (alphabet_.empty()) throw std::invalid_argument("FiniteDist: empty alphabet");
  if (alphabet_.size() != probs_.size())
    throw std::invalid_argument("FiniteDist: alphabet/probs size mismatch");
  std::unordered_set<std::string> seen;
  for (const auto& s : alphabet_) {
    if (!seen.insert(s).second)
      throw std::invalid_argument("FiniteDist: duplicate symbol '" + s + "'");
  }
  double sum = 0.0;
  for (double& p : probs_) {
    if (p < 0.0) {
      if (p < -kProbSumTol)
        throw std::invalid_argument("FiniteDist: negative probability " + std::to_string(p));
      p = 0.0;  // fold float dust
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw std::invalid_argument("FiniteDist: probabilities sum to " + std::to_string(sum));
}

FiniteDist FiniteDist::from_probs(std::vector<double> probs) {
  auto alphabet = numeric_alphabet(probs.size());
  return FiniteDist(std::move(alphabet), std::move(probs));
}

FiniteDist FiniteDist::uniform(std::vector<std::string> alphabet) {
  const std::size_t n = alphabet.size();
  if (n == 0) throw std::invalid_argument("FiniteDist::uniform: empty alphabet");
  return FiniteDist(std::move(alphabet), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteDist FiniteDist::point_mass(std::vector<std::string> alphabet, std::size_t index) {
  if (index >= alphabet.size()) throw std::invalid_argument("point_mass: index out of range");
  std::vector<double> p(alphabet.size(), 0.0);
  p[index] = 1.0;
  return FiniteDist(std::move(alphabet), std::move(p));
}

FiniteDist FiniteDist::normalized(std::vector<std::string> alphabet,
                                  std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("FiniteDist::normalized: negative weight");
    sum += w;
  }
  if (sum <= 0.0) throw std::invalid_argument("FiniteDist::normalized: zero total weight");
  for (double& w : weights) w /= sum;
  return FiniteDist(std::move(alphabet), std::move(weights));
}

std::size_t FiniteDist::index_of(const std::string& symbol) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), symbol);
  if (it == alphabet_.end())
    throw std::invalid_argument("FiniteDist: unknown symbol '" + symbol + "'");
  return static_cast<std::size_t>(it - alphabet_.begin());
}

double FiniteDist::mass(const std::vector<std::size_t>& subset) const {
  double m = 0.0;
  for (std::size_t i : subset) m += probs_.at(i);
  return m;
}

std::size_t FiniteDist::sample(RandomStream& stream) const {
  const double u = stream.uniform();
  double cdf = 0.0;
  for (std::size_t i = 0; i + 1 < probs_.size(); ++i) {
    cdf += probs_[i];
    if (u < cdf) return i;
  }
  return probs_.size() - 1;
}

std::vector<std::string> numeric_alphabet(std::size_t n) {
  std::vector<std::string> a;
  a.reserve(n);
  for (std::size_t i = 0; i < n; ++i) a.push_back(std::to_string(i));
  return a;
}

}  // namespace ccomp
