#pragma once

#include <string>
#include <vector>

#include "ccomp/rng.hpp"

namespace ccomp {

/// Exact probability vector over an ordered finite alphabet of named symbols.
/// Immutable after construction; the constructor validates nonnegativity and
/// normalization (sum within 1e-12 of 1).
class FiniteDist {
 public:
  /// Placeholder point mass on "0"; lets aggregates default-construct.
  FiniteDist() : alphabet_{"0"}, probs_{1.0} {}
  FiniteDist(std::vector<std::string> alphabet, std::vector<double> probs);

  /// Alphabet "0", "1", ..., probs as given.
  static FiniteDist from_probs(std::vector<double> probs);
  static FiniteDist uniform(std::vector<std::string> alphabet);
  static FiniteDist point_mass(std::vector<std::string> alphabet, std::size_t index);
  /// Normalizes a nonnegative weight vector (sum need not be 1).
  static FiniteDist normalized(std::vector<std::string> alphabet, std::vector<double> weights);

  std::size_t size() const { return probs_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<double>& probs() const { return probs_; }
  double p(std::size_t i) const { return probs_[i]; }
  const std::string& symbol(std::size_t i) const { return alphabet_[i]; }

  /// Index of a symbol; throws std::invalid_argument if absent.
  std::size_t index_of(const std::string& symbol) const;
  bool same_alphabet(const FiniteDist& other) const { return alphabet_ == other.alphabet_; }

  double mass(const std::vector<std::size_t>& subset) const;

  /// Inverse-CDF sample in construction order.
  std::size_t sample(RandomStream& stream) const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<double> probs_;
};

std::vector<std::string> numeric_alphabet(std::size_t n);

}  // namespace ccomp
