#include "ccomp/brute_force.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "ccomp/tolerances.hpp"

namespace ccomp {

namespace {

// Rectangle masks fit in 4+4 bits under the instance guard.
struct Searcher {
  const FunctionSpec& f;
  const JointDist& mu;
  std::size_t nx, ny;
  std::vector<std::size_t> round_sizes;  // alphabet size per round (1 = silent)
  std::vector<bool> alice_owns;
  std::map<std::uint64_t, double> memo;

  double rectangle_error(std::uint32_t xmask, std::uint32_t ymask) const {
    // Best transcript-determined answer for this leaf rectangle.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < f.z_range.size(); ++z) {
      double wrong = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        if (!(xmask & (1u << x))) continue;
        for (std::size_t y = 0; y < ny; ++y) {
          if (!(ymask & (1u << y))) continue;
          if (!f.accepts(x, y, z)) wrong += mu.prob({x, y});
        }
      }
      if (wrong < best) best = wrong;
    }
    return best;
  }

  double best_error(std::size_t round, std::uint32_t xmask, std::uint32_t ymask) {
    if (xmask == 0 || ymask == 0) return 0.0;
    if (round == round_sizes.size()) return rectangle_error(xmask, ymask);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(round) << 32) | (static_cast<std::uint64_t>(xmask) << 16) |
        ymask;
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    const std::size_t sigma = round_sizes[round];
    const bool alice = alice_owns[round];
    const std::uint32_t own_mask = alice ? xmask : ymask;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < (alice ? nx : ny); ++i)
      if (own_mask & (1u << i)) members.push_back(i);

    double best = std::numeric_limits<double>::infinity();
    // Enumerate all assignments member -> message.
    std::size_t total = 1;
    for (std::size_t i = 0; i < members.size(); ++i) total *= sigma;
    for (std::size_t asg = 0; asg < total; ++asg) {
      std::vector<std::uint32_t> blocks(sigma, 0);
      std::size_t rem = asg;
      for (std::size_t i = 0; i < members.size(); ++i) {
        blocks[rem % sigma] |= (1u << members[i]);
        rem /= sigma;
      }
      double err = 0.0;
      for (std::size_t msg = 0; msg < sigma && err < best; ++msg) {
        if (blocks[msg] == 0) continue;
        err += alice ? best_error(round + 1, blocks[msg], ymask)
                     : best_error(round + 1, xmask, blocks[msg]);
      }
      if (err < best) best = err;
    }
    memo[key] = best;
    return best;
  }
};

}  // namespace

std::optional<std::int64_t> brute_force_C(const FunctionSpec& f, const JointDist& mu,
                                          double delta, std::size_t k,
                                          std::size_t bits_per_round) {
  f.validate();
  const std::size_t nx = f.x_range.size(), ny = f.y_range.size();
  if (nx > 4 || ny > 4 || k > 2 || bits_per_round > 2 || f.z_range.size() > 8)
    throw std::length_error("brute_force_C: instance too large for exhaustive search");
  if (mu.num_axes() != 2 || mu.axes()[0].range.size() != nx || mu.axes()[1].range.size() != ny)
    throw std::invalid_argument("brute_force_C: mu does not match the task ranges");

  std::optional<std::int64_t> best;
  // Enumerate per-round bit widths and both speaking orders; alternation with
  // possible 0-bit rounds covers every owner pattern.
  std::vector<std::size_t> widths(k, 0);
  const std::size_t options = bits_per_round + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= options;
  for (int alice_first = 0; alice_first < 2; ++alice_first) {
    for (std::size_t ws = 0; ws < total; ++ws) {
      std::size_t rem = ws;
      std::int64_t bits = 0;
      for (std::size_t i = 0; i < k; ++i) {
        widths[i] = rem % options;
        rem /= options;
        bits += static_cast<std::int64_t>(widths[i]);
      }
      if (best && bits >= *best) continue;
      Searcher s{f, mu, nx, ny, {}, {}, {}};
      for (std::size_t i = 0; i < k; ++i) {
        s.round_sizes.push_back(std::size_t{1} << widths[i]);
        s.alice_owns.push_back((i % 2 == 0) == (alice_first == 1));
      }
      const double err = s.best_error(0, (1u << nx) - 1, (1u << ny) - 1);
      if (err <= delta + kProbSumTol) {
        if (!best || bits < *best) best = bits;
      }
    }
  }
  return best;
}

}  // namespace ccomp
