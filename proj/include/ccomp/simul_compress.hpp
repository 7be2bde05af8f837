#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ccomp/function_spec.hpp"
#include "ccomp/simul_protocol.hpp"

namespace ccomp {

/// One shared sample from Q plus per-target accepted subsequences, retried
/// until every sampled mean of s[i][j] sits within 2 eps of its exact value
/// under P_i. Subsequence i lives inside the first t_i entries, with
///   t_i = ceil( 8 * 2^{(a_i+1)/eps} * log2(2N) / ((1-eps) eps^2) ),
/// a_i = S(P_i || Q) and N the caller's index-space size.
struct SampleSupportResult {
  std::vector<std::size_t> x_seq;                      // shared draws from Q
  std::vector<std::vector<std::size_t>> subsequences;  // per target: positions into x_seq
  std::vector<std::size_t> t_per_target;
  std::size_t retries_used = 0;
};

SampleSupportResult sample_support(const FiniteDist& q, const std::vector<FiniteDist>& ps,
                                   const std::vector<std::vector<std::vector<double>>>& s,
                                   double eps, std::size_t index_space, std::uint64_t seed,
                                   std::size_t retry_budget = 64);

/// Two-stage compression of a simultaneous-message protocol under uniform
/// inputs: Alice's message is replaced by a uniform pick from a sampled
/// support (sent as an index), then Bob's likewise against the intermediate
/// protocol. Inputs outside the good sets fall back to a fixed index.
struct SimulCompressionReport {
  std::vector<std::size_t> good_a, good_b;  // input indices, ascending

  // Compressed protocol, in sampled-support form: the shared message lists
  // and, per good input, the positions it may send (uniformly).
  std::vector<std::size_t> alice_samples, bob_samples;
  std::map<std::size_t, std::vector<std::size_t>> alice_support, bob_support;

  std::int64_t alice_bits = 0, bob_bits = 0;  // index encoding widths
  double alice_bits_bound = 0.0, bob_bits_bound = 0.0;
  double a_info = 0.0, b_info = 0.0;  // I(X:M_A), I(Y:M_B)
  double error_on_good = 0.0;         // max exact error over good_a x good_b
  double base_worst_error = 0.0;      // max per-input error of the input protocol
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::size_t retries_alice = 0, retries_bob = 0;

  /// Exact error of the compressed protocol on one good pair.
  std::map<std::pair<std::size_t, std::size_t>, double> error_per_good_pair;
};

SimulCompressionReport compress_simultaneous(const SimulProtocol& pi, const FunctionSpec& f,
                                             double eps, std::uint64_t seed,
                                             std::size_t retry_budget = 64);

}  // namespace ccomp
