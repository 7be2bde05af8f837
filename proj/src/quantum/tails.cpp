#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "ccomp/quantum.hpp"

namespace ccomp::quantum {

namespace {

// Trials are index-keyed off the caller's stream, so results are identical
// whatever the thread count; per-trial values are reduced sequentially.
void run_trials(int trials, RandomStream& stream,
                const std::function<double(RandomStream&)>& trial,
                std::vector<double>& values) {
  values.assign(trials, 0.0);
  const int threads = std::min(thread_cap(), trials);
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) {
      RandomStream s = stream.child(t);
      values[t] = trial(s);
    }
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        RandomStream s = stream.child(t);
        values[t] = trial(s);
      }
    });
  }
  for (auto& th : pool) th.join();
}

double frequency_above(const std::vector<double>& values, double threshold) {
  std::size_t hits = 0;
  for (double v : values)
    if (v >= threshold) ++hits;
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

double mean_of(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double band_for(int trials) { return 3.0 / (2.0 * std::sqrt(static_cast<double>(trials))); }

// |P w|^2 for the projector onto the first dim coordinates.
double proj_norm_sq(const Vector& w, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += std::norm(w(i));
  return s;
}

std::complex<double> proj_inner(const Vector& w, const Vector& wp, int dim) {
  std::complex<double> s = 0.0;
  for (int i = 0; i < dim; ++i) s += std::conj(w(i)) * wp(i);
  return s;
}

void check_pair_hypotheses(int m, int d, int l, TailReport& rep) {
  if (!(d < std::sqrt(static_cast<double>(m) / l)) || !(l < m / 20)) {
    rep.hypotheses_ok = false;
    rep.note = "hypotheses d < sqrt(m/l), l < m/20 violated";
  }
  if (m % l != 0) throw std::invalid_argument("tail experiment: l must divide m");
}

}  // namespace

std::vector<TailReport> overlap_tails(int m, int d, int l, int trials, RandomStream& stream) {
  if (trials < 1) throw std::invalid_argument("overlap_tails: trials must be >= 1");
  TailReport base;
  base.m = m;
  base.d = d;
  base.l = l;
  base.trials = trials;
  base.band = band_for(trials);
  check_pair_hypotheses(m, d, l, base);
  if (!base.hypotheses_ok)
    throw std::invalid_argument("overlap_tails: " + base.note);
  const int dim = m / l;

  // One pair of Haar draws per trial feeds all three statistics.
  std::vector<double> overlap(trials), pnorm(trials), cross(trials);
  {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        RandomStream s = stream.child(t);
        const Vector w = haar_vector(m, s);
        const Vector wp = haar_vector(m, s);
        overlap[t] = std::abs(w.dot(wp));
        pnorm[t] = std::sqrt(proj_norm_sq(w, dim));
        cross[t] = std::abs(proj_inner(w, wp, dim));
      }
    };
    const int threads = std::min(thread_cap(), trials);
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
  }

  const double d2 = static_cast<double>(d) * d;
  const double d4 = d2 * d2;
  std::vector<TailReport> out(3, base);
  out[0].event = "pair_overlap";
  out[0].threshold = 1.0 / (5.0 * d2);
  out[0].analytic_bound = 2.0 * std::exp(-static_cast<double>(m) / (100.0 * d4));
  out[0].empirical = frequency_above(overlap, out[0].threshold);
  out[0].mean_value = mean_of(overlap);

  out[1].event = "projection_norm";
  out[1].threshold = 2.0 / std::sqrt(static_cast<double>(l));
  out[1].analytic_bound = 2.0 * std::exp(-static_cast<double>(m) / (4.0 * l));
  out[1].empirical = frequency_above(pnorm, out[1].threshold);
  out[1].mean_value = mean_of(pnorm);

  out[2].event = "projected_cross";
  out[2].threshold = 4.0 / (5.0 * d2 * l);
  out[2].analytic_bound = 6.0 * std::exp(-static_cast<double>(m) / (100.0 * d4 * l));
  out[2].empirical = frequency_above(cross, out[2].threshold);
  out[2].mean_value = mean_of(cross);
  return out;
}

TailReport orthopair_tail(int m, int d, int l, int trials, RandomStream& stream) {
  if (trials < 1) throw std::invalid_argument("orthopair_tail: trials must be >= 1");
  TailReport rep;
  rep.m = m;
  rep.d = d;
  rep.l = l;
  rep.trials = trials;
  rep.band = band_for(trials);
  check_pair_hypotheses(m, d, l, rep);
  if (!rep.hypotheses_ok)
    throw std::invalid_argument("orthopair_tail: " + rep.note);
  const int dim = m / l;

  std::vector<double> values;
  run_trials(trials, stream,
             [&](RandomStream& s) {
               const Vector x = haar_vector(m, s);
               const Vector y = haar_vector(m, s);
               Vector wpp = y - x.dot(y) * x;
               const double norm = wpp.norm();
               if (norm < 1e-12) return 0.0;  // probability-zero degeneracy
               wpp /= norm;
               return std::abs(proj_inner(x, wpp, dim));
             },
             values);

  const double d2 = static_cast<double>(d) * d;
  rep.event = "orthopair_cross";
  rep.threshold = 2.0 / (d2 * l);
  rep.analytic_bound =
      10.0 * std::exp(-static_cast<double>(m) / (100.0 * d2 * d2 * l));
  rep.empirical = frequency_above(values, rep.threshold);
  rep.mean_value = mean_of(values);
  return rep;
}

TailReport subspace_energy(int m, int d, int l, int trials, RandomStream& stream) {
  if (trials < 1) throw std::invalid_argument("subspace_energy: trials must be >= 1");
  if (m % l != 0) throw std::invalid_argument("subspace_energy: l must divide m");
  TailReport rep;
  rep.m = m;
  rep.d = d;
  rep.l = l;
  rep.trials = trials;
  rep.band = band_for(trials);
  const double d4 = std::pow(static_cast<double>(d), 4.0);
  if (!(200.0 * d4 * l * std::log(20.0 * d * d) < static_cast<double>(m))) {
    rep.hypotheses_ok = false;
    rep.note = "exploratory: 200 d^4 l ln(20 d^2) < m violated";
  }
  const int dim = m / l;

  std::vector<double> values;
  run_trials(trials, stream,
             [&](RandomStream& s) {
               const Matrix w = haar_orthonormal(m, d, s);
               // <w|P|w> maximized over the span: top eigenvalue of the
               // Gram matrix of the projected basis columns.
               const Matrix top = w.topRows(dim);
               Eigen::SelfAdjointEigenSolver<Matrix> es(top.adjoint() * top,
                                                        Eigen::EigenvaluesOnly);
               return es.eigenvalues().maxCoeff();
             },
             values);

  rep.event = "subspace_energy";
  rep.threshold = 6.0 / static_cast<double>(l);
  rep.analytic_bound = std::exp(-static_cast<double>(m) / (200.0 * d4 * l));
  rep.empirical = frequency_above(values, rep.threshold);
  rep.mean_value = mean_of(values);
  return rep;
}

IncompressReport incompressibility_trial(const QuantumEnsemble& ens, int d,
                                         int subspace_samples, RandomStream& stream) {
  if (d < 1 || d > ens.m)
    throw std::invalid_argument("incompressibility_trial: need 1 <= d <= m");
  IncompressReport rep;
  rep.m = ens.m;
  rep.d = d;
  rep.k_exp = ens.k_exp;
  rep.n = ens.n;

  auto defeated_fraction = [&](const Matrix& w) {
    int defeated = 0;
    for (int l = 0; l < ens.n; ++l) {
      // M_l(W) = lambda_max((B^dagger W)^dagger (B^dagger W)).
      const Matrix cross = ens.block(l).adjoint() * w;
      Eigen::SelfAdjointEigenSolver<Matrix> es(cross.adjoint() * cross,
                                               Eigen::EigenvaluesOnly);
      if (es.eigenvalues().maxCoeff() <= 0.1) ++defeated;
    }
    return static_cast<double>(defeated) / static_cast<double>(ens.n);
  };

  rep.haar_fractions.resize(subspace_samples);
  for (int t = 0; t < subspace_samples; ++t) {
    RandomStream s = stream.child(t);
    rep.haar_fractions[t] = defeated_fraction(haar_orthonormal(ens.m, d, s));
  }
  rep.haar_min = 1.0;
  for (double fval : rep.haar_fractions) {
    rep.haar_mean += fval / subspace_samples;
    rep.haar_min = std::min(rep.haar_min, fval);
  }
  // Adversarial pick: the first d vectors of block (1,1); its own projector
  // is never defeated.
  rep.adversarial_fraction = defeated_fraction(ens.block(0).leftCols(std::min(d, ens.block_size())));
  return rep;
}

}  // namespace ccomp::quantum
