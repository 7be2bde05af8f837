#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "ccomp/finite_dist.hpp"
#include "ccomp/rng.hpp"

namespace ccomp {

/// One-shot rejection pair: X ~ Q with an acceptance bit chi where
/// Pr[chi=1 | X=i] = P(i) / (2^a Q(i)). Requires 2^{-a} P <= Q pointwise.
/// Closed-form laws are exposed alongside a seeded draw so that Monte-Carlo
/// runs can always be checked against exact values.
struct RejectionPair {
  FiniteDist q;
  std::vector<double> accept_prob;  // gamma'_i, in [0, 1]
  double a = 0.0;

  /// Pr[chi = 1]; equals 2^{-a} exactly.
  double accept_rate() const;
  /// Law of X given chi = 1; equals P.
  FiniteDist conditional_given_accept() const;

  struct Draw {
    std::size_t x;
    bool accepted;
  };
  Draw draw(RandomStream& stream) const;
};

RejectionPair make_rejection_pair(const FiniteDist& p, const FiniteDist& q, double a);

/// Binomial-subsequence sampling: t i.i.d. draws from Q; the accepted ones
/// (a B(t, 2^{-a})-length subsequence) are i.i.d. P given their count.
struct CorrelatedSequence {
  std::vector<std::size_t> x_seq;        // symbols, as alphabet indices
  std::vector<std::size_t> accepted_at;  // ascending positions into x_seq
};

CorrelatedSequence correlated_sequence(const FiniteDist& p, const FiniteDist& q, double a,
                                       std::size_t t, RandomStream& stream);

/// Las-Vegas sampler against Q with an explicit abort symbol. Construction
/// from (P, Q, eps_target): r = 1/eps_target, effective exponent
/// a = r (S(P||Q) + 1), good = { i : P(i)/2^a <= Q(i) }, eps = 1 - P(good).
/// The output law is exactly P on good, 0 off good, and eps at the abort
/// symbol; the stopping index R is geometric with success 2^{-a}.
struct LasVegasSampler {
  FiniteDist q;
  std::vector<long double> gamma;  // per symbol: P'(i) 2^{-a} / Q(i), in [0, 1]
  long double beta = 0.0L;         // abort weight: eps 2^{-a} / (1 - (1-eps) 2^{-a})
  std::vector<std::size_t> good;   // ascending indices
  double eps = 0.0;                // 1 - P(good)
  double a = 0.0;                  // effective exponent

  /// Per-entry stopping probability; equals 2^{-a} exactly.
  long double stop_rate() const;
  /// E[R] = 2^a.
  double expected_stop() const;
  /// Pr[R > t_max] = (1 - 2^{-a})^{t_max}, reported analytically.
  double tail_beyond(double t_max) const;
  /// Default iteration cap 2^{a+20}.
  double default_t_max() const;

  /// Closed-form output law: probs over the alphabet plus the abort mass.
  struct OutputLaw {
    std::vector<double> probs;
    double abort = 0.0;
  };
  OutputLaw output_law() const;

  struct Trace {
    std::vector<std::size_t> x_seq;  // materialized stream draws (walked entries)
    std::optional<std::uint64_t> r;  // stopping index, 1-based; nullopt = cap hit
    std::optional<std::size_t> y;    // accepted symbol; nullopt = abort
  };
  /// Honest walk of the stream; entries are materialized up to the stop.
  Trace draw(RandomStream& stream, std::uint64_t t_max) const;
};

LasVegasSampler make_las_vegas_sampler(const FiniteDist& p, const FiniteDist& q,
                                       double eps_target);

/// Several Las-Vegas samplers run against one shared Q-stream; trace j uses
/// its own index-keyed decision stream so results are order-independent.
struct MultiSampleResult {
  std::vector<std::size_t> x_seq;  // the shared stream, materialized as walked
  struct PerTrace {
    std::optional<std::uint64_t> r;
    std::optional<std::size_t> y;
  };
  std::vector<PerTrace> traces;
  std::uint64_t root_seed = 0;
};

MultiSampleResult multi_sample(const FiniteDist& q, const std::vector<FiniteDist>& ps,
                               double eps, std::uint64_t seed,
                               std::uint64_t t_max = (1ull << 20));

/// JSON-lines dump: a header object carrying the root seed, then one
/// {"j":..,"r":..,"y":..} object per trace ("y":0 encodes abort).
void write_trace_jsonl(std::ostream& os, const FiniteDist& q, const MultiSampleResult& result);

}  // namespace ccomp
