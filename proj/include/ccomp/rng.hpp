#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ccomp {

/// Deterministic random stream with index-keyed splitting.
///
/// A child stream is a pure function of (parent seed, key), never of how many
/// draws the parent has made, so independent consumers can run in any order
/// (or in parallel) and still reproduce bit-identical results.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  RandomStream child(std::uint64_t key) const;
  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits();
  /// Uniform double in [0, 1), 53 random bits.
  double uniform();
  /// Uniform double in (0, 1]; safe to pass to log().
  double uniform_pos();
  /// Standard normal via Box-Muller (no implementation-defined stdlib path).
  double gaussian();
  /// Unbiased uniform integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b);
std::uint64_t fnv1a(std::string_view s);

}  // namespace ccomp
