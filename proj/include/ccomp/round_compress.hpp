#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ccomp/function_spec.hpp"
#include "ccomp/info_cost.hpp"
#include "ccomp/joint_dist.hpp"
#include "ccomp/protocol_tree.hpp"

namespace ccomp {

/// Round-by-round compression of a private-coin protocol: each compressed
/// round transmits a stopping index into a shared lazily-materialized coin
/// stream of draws from the round's prefix-conditioned message marginal,
/// instead of the message itself. Indices are sent with the self-delimiting
/// prefix code; the dummy message 0 aborts the protocol.

/// Las-Vegas transmission tables for one (prefix, owner-input) family at a
/// compressed round. All threshold arithmetic is long double so exponents of
/// several hundred bits stay representable.
struct RoundPrefixData {
  FiniteDist q;                                 // message marginal given the prefix
  std::vector<char> live;                       // owner input co-reachable with prefix
  std::vector<std::vector<long double>> gamma;  // [owner input][message]
  std::vector<long double> beta;                // [owner input]
  std::vector<double> eps;                      // [owner input] abort probability
  std::vector<double> a_eff;                    // [owner input] effective exponent, bits
  std::vector<double> s_div;                    // [owner input] S(policy || marginal)
  std::vector<double> exp_enc_bits;             // [owner input] E[code length | accept]
  double reach = 0.0;                           // total mu-weight of the prefix
};

struct CompressedRound {
  std::size_t round = 0;
  std::map<Transcript, RoundPrefixData> prefixes;
  double a_i = 0.0;        // E over (inputs, prefix) of S(policy || marginal)
  double eps_share = 0.0;  // per-round abort budget eps/k
};

/// A protocol mid-compression: rounds < stage are the original private-coin
/// rounds (bit-identical to the input protocol); rounds >= stage are
/// index-compressed. stage == rounds() means nothing is compressed yet.
struct HybridProtocol {
  ProtocolTree base;
  JointDist mu;
  double eps = 0.0;
  std::size_t stage = 0;
  std::vector<CompressedRound> compressed;  // compressed[j] is round stage + j

  const CompressedRound& round_data(std::size_t round) const;
};

HybridProtocol begin_compression(const ProtocolTree& pi, const JointDist& mu, double eps);

/// Compresses round i (0-based). Rounds above i must already be compressed;
/// rounds at and below i must still be private-coin.
void compress_round(HybridProtocol& h, std::size_t i);

/// Closed-form (coin-averaged) accounting of a hybrid protocol. Aborts count
/// as errors; expected bit counts cover compressed rounds only.
struct HybridStats {
  double error = 0.0;
  std::vector<double> expected_bits;  // per round (0 for uncompressed rounds)
  std::vector<double> abort_mass;     // per round: mu-weighted added abort probability
  double total_expected_bits = 0.0;
};

HybridStats evaluate_hybrid(const HybridProtocol& h, const FunctionSpec& f);

/// One public-coin realization: lazily materialized stop records per
/// (round, prefix), exact in distribution (boring stream segments are skipped
/// by geometric gap counts; only entries where some live input stops are
/// drawn). Entries per stream are capped; residual mass folds into abort.
class CoinRealization {
 public:
  CoinRealization(const HybridProtocol& h, std::uint64_t seed, std::uint64_t max_entries);

  struct StopRecord {
    bool aborted = true;
    long double index = 0.0L;   // 1-based stopping index
    std::size_t message = 0;    // accepted message (valid iff !aborted)
    std::int64_t enc_bits = 1;  // prefix-code length (1 for the dummy)
  };

  const StopRecord& stop(std::size_t round, const Transcript& prefix, std::size_t input);
  std::uint64_t seed() const { return seed_; }

 private:
  const HybridProtocol* h_;
  std::uint64_t seed_;
  std::uint64_t max_entries_;
  std::map<std::pair<std::size_t, Transcript>, std::vector<StopRecord>> records_;

  void materialize(std::size_t round, const Transcript& prefix);
};

struct MultiCompressionReport {
  ProtocolTree final_protocol;
  std::int64_t comm_bits = 0;  // max reachable path length, <= bit_cap
  double dist_error = 0.0;     // exact mu-error of the final deterministic protocol
  double bit_cap = 0.0;        // 2k(a+1)/eps^2 + 2k/eps
  double a_total = 0.0;        // I(XY : T) of the input protocol
  double base_dist_error = 0.0;
  double hybrid_error = 0.0;  // coin-averaged error before truncation
  std::vector<double> per_round_info;
  std::vector<double> per_round_expected_bits;
  std::vector<double> per_round_abort_prob;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::size_t coin_budget = 0;
  std::size_t coin_choice = 0;  // realization index that was fixed
  bool budget_exhausted = false;
  double target_error = 0.0;  // base_dist_error + 2 eps
};

MultiCompressionReport compress_multiround(const ProtocolTree& pi, const FunctionSpec& f,
                                           const JointDist& mu, double eps,
                                           std::uint64_t stream_entry_cap,
                                           std::size_t coin_budget, std::uint64_t seed);

/// E[floor(log2 J)] for J geometric with success probability q_stop.
long double expected_floor_log2_geometric(long double q_stop);

}  // namespace ccomp
