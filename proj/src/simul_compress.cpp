#include "ccomp/simul_compress.hpp"

#include <cmath>
#include <stdexcept>

#include "ccomp/exceptions.hpp"
#include "ccomp/info.hpp"
#include "ccomp/substate.hpp"
#include "ccomp/tolerances.hpp"

namespace ccomp {

namespace {

std::int64_t ceil_log2(std::size_t n) {
  std::int64_t b = 0;
  std::size_t v = 1;
  while (v < n) {
    v <<= 1;
    ++b;
  }
  return b;
}

}  // namespace

SampleSupportResult sample_support(const FiniteDist& q, const std::vector<FiniteDist>& ps,
                                   const std::vector<std::vector<std::vector<double>>>& s,
                                   double eps, std::size_t index_space, std::uint64_t seed,
                                   std::size_t retry_budget) {
  if (ps.empty()) throw std::invalid_argument("sample_support: no target distributions");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("sample_support: eps must be in (0, 1)");
  if (s.size() != ps.size()) throw std::invalid_argument("sample_support: s/ps size mismatch");

  const std::size_t n_targets = ps.size();
  const double log2_2n = std::log2(2.0 * static_cast<double>(index_space));

  // Per-target substate data and acceptance thresholds.
  std::vector<std::vector<long double>> gamma(n_targets);
  std::vector<std::size_t> t_per(n_targets);
  std::size_t t_max = 1;
  for (std::size_t i = 0; i < n_targets; ++i) {
    const SubstateDecomposition dec = substate_decompose(ps[i], q, 1.0 / eps);
    const long double alpha = (1.0L - static_cast<long double>(eps)) *
                              std::exp2(-(static_cast<long double>(dec.a) + 1.0L) /
                                        static_cast<long double>(eps));
    gamma[i].assign(q.size(), 0.0L);
    for (std::size_t m = 0; m < q.size(); ++m) {
      if (q.p(m) > 0.0 && dec.p_tilde.p(m) > 0.0) {
        long double g = alpha * static_cast<long double>(dec.p_tilde.p(m)) /
                        static_cast<long double>(q.p(m));
        if (g > 1.0L) g = 1.0L;
        gamma[i][m] = g;
      }
    }
    const double t_real = 8.0 * std::exp2((dec.a + 1.0) / eps) * log2_2n /
                          ((1.0 - eps) * eps * eps);
    if (!(t_real < 1e9))
      throw std::length_error("sample_support: required sample length exceeds 1e9 entries");
    t_per[i] = static_cast<std::size_t>(std::ceil(t_real));
    if (t_per[i] > t_max) t_max = t_per[i];
  }

  // Exact means p_ij = E_{P_i}[s_ij].
  std::vector<std::vector<double>> p_exact(n_targets);
  for (std::size_t i = 0; i < n_targets; ++i) {
    p_exact[i].resize(s[i].size());
    for (std::size_t j = 0; j < s[i].size(); ++j) {
      if (s[i][j].size() != q.size())
        throw std::invalid_argument("sample_support: s table has wrong symbol arity");
      double acc = 0.0;
      for (std::size_t m = 0; m < q.size(); ++m) acc += ps[i].p(m) * s[i][j][m];
      p_exact[i][j] = acc;
    }
  }

  RandomStream root(seed);
  for (std::size_t attempt = 0; attempt < retry_budget; ++attempt) {
    RandomStream round = root.child(attempt);
    RandomStream shared = round.child(0);
    std::vector<RandomStream> decide;
    decide.reserve(n_targets);
    for (std::size_t i = 0; i < n_targets; ++i) decide.push_back(round.child(i + 1));

    SampleSupportResult res;
    res.x_seq.reserve(t_max);
    res.subsequences.assign(n_targets, {});
    res.t_per_target = t_per;
    res.retries_used = attempt;
    for (std::size_t pos = 0; pos < t_max; ++pos) {
      const std::size_t m = q.sample(shared);
      res.x_seq.push_back(m);
      for (std::size_t i = 0; i < n_targets; ++i) {
        const long double u = static_cast<long double>(decide[i].uniform());
        if (pos < t_per[i] && u < gamma[i][m]) res.subsequences[i].push_back(pos);
      }
    }

    bool ok = true;
    for (std::size_t i = 0; i < n_targets && ok; ++i) {
      if (res.subsequences[i].empty()) {
        ok = false;
        break;
      }
      for (std::size_t j = 0; j < s[i].size() && ok; ++j) {
        double mean = 0.0;
        for (std::size_t pos : res.subsequences[i]) mean += s[i][j][res.x_seq[pos]];
        mean /= static_cast<double>(res.subsequences[i].size());
        if (std::abs(mean - p_exact[i][j]) > 2.0 * eps) ok = false;
      }
    }
    if (ok) return res;
  }
  throw BudgetExhausted("sample_support: no draw satisfied the 2*eps deviation bound within " +
                        std::to_string(retry_budget) + " retries");
}

SimulCompressionReport compress_simultaneous(const SimulProtocol& pi, const FunctionSpec& f,
                                             double eps, std::uint64_t seed,
                                             std::size_t retry_budget) {
  pi.validate();
  f.validate();
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("compress_simultaneous: eps must be in (0, 1)");
  const std::size_t nx = pi.x_range.size(), ny = pi.y_range.size();
  const std::size_t index_space = std::max(nx, ny);
  const double n_bits = std::log2(static_cast<double>(index_space));

  SimulCompressionReport rep;
  rep.eps = eps;
  rep.seed = seed;
  rep.a_info = pi.alice_information();
  rep.b_info = pi.bob_information();
  rep.base_worst_error = pi.evaluate_error(f).worst_case;

  // Stage 1: Alice. Good_A holds the inputs whose message law sits within
  // 3a of the marginal (ties included); Markov puts at least 2/3 of X there.
  const FiniteDist qa = pi.alice_marginal();
  std::vector<FiniteDist> pa;
  for (std::size_t x = 0; x < nx; ++x) {
    const double sx = relative_entropy(pi.alice_message_dist(x), qa);
    if (sx <= 3.0 * rep.a_info + kProbSumTol) {
      rep.good_a.push_back(x);
      pa.push_back(pi.alice_message_dist(x));
    }
  }

  // s[i][y][m] = Pr[referee acceptable | Alice sends m, input (good_a[i], y)].
  std::vector<std::vector<std::vector<double>>> sa(rep.good_a.size());
  for (std::size_t i = 0; i < rep.good_a.size(); ++i) {
    const std::size_t x = rep.good_a[i];
    sa[i].assign(ny, std::vector<double>(pi.alice_alphabet.size(), 0.0));
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t ma = 0; ma < pi.alice_alphabet.size(); ++ma) {
        double ok = 0.0;
        for (std::size_t mb = 0; mb < pi.bob_alphabet.size(); ++mb) {
          if (pi.bob_policy[y][mb] > 0.0 && f.accepts_symbol(x, y, pi.referee[ma][mb]))
            ok += pi.bob_policy[y][mb];
        }
        sa[i][y][ma] = ok;
      }
    }
  }

  const SampleSupportResult sup_a =
      sample_support(qa, pa, sa, eps, index_space, mix_keys(seed, 1), retry_budget);
  rep.retries_alice = sup_a.retries_used;
  rep.alice_samples = sup_a.x_seq;
  for (std::size_t i = 0; i < rep.good_a.size(); ++i)
    rep.alice_support[rep.good_a[i]] = sup_a.subsequences[i];
  rep.alice_bits = ceil_log2(rep.alice_samples.size());
  rep.alice_bits_bound = (3.0 * rep.a_info + 1.0) / eps + std::log2(n_bits + 1.0) +
                         std::log2(1.0 / (eps * eps * (1.0 - eps))) + 4.0;

  // Stage 2: Bob, against the intermediate protocol with Alice compressed.
  // sb[i][k][mb] = Pr[acceptable | Bob sends mb, y = good_b[i], x = good_a[k]].
  const FiniteDist qb = pi.bob_marginal();
  std::vector<FiniteDist> pb;
  for (std::size_t y = 0; y < ny; ++y) {
    const double sy = relative_entropy(pi.bob_message_dist(y), qb);
    if (sy <= 3.0 * rep.b_info + kProbSumTol) {
      rep.good_b.push_back(y);
      pb.push_back(pi.bob_message_dist(y));
    }
  }
  std::vector<std::vector<std::vector<double>>> sb(rep.good_b.size());
  for (std::size_t i = 0; i < rep.good_b.size(); ++i) {
    const std::size_t y = rep.good_b[i];
    sb[i].assign(rep.good_a.size(), std::vector<double>(pi.bob_alphabet.size(), 0.0));
    for (std::size_t k = 0; k < rep.good_a.size(); ++k) {
      const std::size_t x = rep.good_a[k];
      const auto& support = rep.alice_support.at(x);
      for (std::size_t mb = 0; mb < pi.bob_alphabet.size(); ++mb) {
        double ok = 0.0;
        for (std::size_t pos : support) {
          if (f.accepts_symbol(x, y, pi.referee[rep.alice_samples[pos]][mb])) ok += 1.0;
        }
        sb[i][k][mb] = ok / static_cast<double>(support.size());
      }
    }
  }

  const SampleSupportResult sup_b =
      sample_support(qb, pb, sb, eps, index_space, mix_keys(seed, 2), retry_budget);
  rep.retries_bob = sup_b.retries_used;
  rep.bob_samples = sup_b.x_seq;
  for (std::size_t i = 0; i < rep.good_b.size(); ++i)
    rep.bob_support[rep.good_b[i]] = sup_b.subsequences[i];
  rep.bob_bits = ceil_log2(rep.bob_samples.size());
  rep.bob_bits_bound = (3.0 * rep.b_info + 1.0) / eps + std::log2(n_bits + 1.0) +
                       std::log2(1.0 / (eps * eps * (1.0 - eps))) + 4.0;

  // Exact error of the fully compressed protocol on the good rectangle.
  for (std::size_t i = 0; i < rep.good_b.size(); ++i) {
    const std::size_t y = rep.good_b[i];
    const auto& ysup = rep.bob_support.at(y);
    for (std::size_t k = 0; k < rep.good_a.size(); ++k) {
      double ok = 0.0;
      for (std::size_t pos : ysup) ok += sb[i][k][rep.bob_samples[pos]];
      ok /= static_cast<double>(ysup.size());
      const double err = 1.0 - ok;
      rep.error_per_good_pair[{rep.good_a[k], y}] = err;
      if (err > rep.error_on_good) rep.error_on_good = err;
    }
  }

  // Report guarantees, enforced before returning.
  if (3 * rep.good_a.size() < 2 * nx || 3 * rep.good_b.size() < 2 * ny)
    throw std::logic_error("compress_simultaneous: good set below two thirds of the inputs");
  if (static_cast<double>(rep.alice_bits) > rep.alice_bits_bound ||
      static_cast<double>(rep.bob_bits) > rep.bob_bits_bound)
    throw std::logic_error("compress_simultaneous: index width exceeds its budget");
  if (rep.error_on_good > rep.base_worst_error + 4.0 * eps + 1e-9)
    throw std::logic_error("compress_simultaneous: error on the good rectangle too large");
  return rep;
}

}  // namespace ccomp
