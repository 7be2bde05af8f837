#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ccomp/rng.hpp"

namespace ccomp::quantum {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Uniformly random unit vector in C^m: i.i.d. complex Gaussian components,
/// normalized (resampled in the measure-zero degenerate case).
Vector haar_vector(int m, RandomStream& stream);

/// Uniformly random m x d orthonormal frame: Gram-Schmidt on d independent
/// Haar vectors, re-orthogonalized for numerical hygiene.
Matrix haar_orthonormal(int m, int d, RandomStream& stream);

/// max_{w in span(basis), |w|=1} <w|M|w> = lambda_max(B^dagger M B), in [0,1].
double povm_value(const Matrix& m_op, const Matrix& basis);

/// S(rho || sigma) = Tr rho (log rho - log sigma), base 2. Returns +infinity
/// when rho's support escapes sigma's. Throws on non-Hermitian/non-PSD input.
double quantum_relative_entropy(const Matrix& rho, const Matrix& sigma);

/// n states rho_l = (2^k/m) M_l with M_l the projectors onto the 2^k equal
/// blocks of n/2^k independent random orthonormal bases of C^m. By
/// construction Tr M_l rho_l = 1, the mean state is I/m and
/// S(rho_l || mean) = k_exp.
struct QuantumEnsemble {
  int m = 0;
  int n = 0;
  int k_exp = 0;
  std::vector<Matrix> bases;  // n / 2^k_exp unitaries, each m x m

  int block_size() const { return m >> k_exp; }
  int blocks_per_basis() const { return 1 << k_exp; }
  /// Orthonormal columns spanning the support of state l (m x m/2^k).
  Matrix block(int l) const;
  Matrix projector(int l) const;  // M_l
  Matrix state(int l) const;      // rho_l
  Matrix mean_state() const;

  /// Checks the construction identities: basis orthonormality (which pins
  /// each Tr M_l rho_l = 1 and S(rho_l || I/m) = k_exp) and the mean state
  /// against I/m. Throws on violation; called by build_ensemble.
  void verify() const;
};

QuantumEnsemble build_ensemble(int m, int k_exp, int n, RandomStream& stream);

/// One concentration experiment: empirical frequency of an event against its
/// analytic tail bound, with a one-sided 3-sigma Hoeffding band.
struct TailReport {
  std::string event;
  int m = 0, d = 0, l = 0;
  double threshold = 0.0;
  double analytic_bound = 0.0;
  double empirical = 0.0;
  double mean_value = 0.0;  // mean of the measured statistic
  int trials = 0;
  double band = 0.0;  // 3 / (2 sqrt(trials))
  bool hypotheses_ok = true;
  std::string note;
};

/// Independent unit-vector pair events against the projector onto the first
/// m/l coordinates (fixed by unitary invariance):
///   (a) |<w,w'>|   >= 1/(5 d^2)    vs 2 exp(-m/(100 d^4))
///   (b) |P w|      >= 2/sqrt(l)    vs 2 exp(-m/(4 l))
///   (c) |<w|P|w'>| >= 4/(5 d^2 l)  vs 6 exp(-m/(100 d^4 l))
std::vector<TailReport> overlap_tails(int m, int d, int l, int trials, RandomStream& stream);

/// Orthonormal-pair event |<w|P|w'>| >= 2/(d^2 l) vs 10 exp(-m/(100 d^4 l)),
/// with the pair built as w = x, w' = normalize(y - <x,y> x).
TailReport orthopair_tail(int m, int d, int l, int trials, RandomStream& stream);

/// Random d-dimensional subspace energy max_{w in W} <w|P|w> >= 6/l vs
/// exp(-m/(200 d^4 l)). Runs in exploratory mode (flagged) when the
/// feasibility hypothesis 200 d^4 l ln(20 d^2) < m fails.
TailReport subspace_energy(int m, int d, int l, int trials, RandomStream& stream);

/// Fraction of ensemble measurements defeated (M_l(W) <= 1/10) by sampled
/// d-dimensional subspaces: Haar-random draws plus the adversarial span of
/// ensemble vectors. Observed fractions are descriptive at desk scale.
struct IncompressReport {
  int m = 0, d = 0, k_exp = 0, n = 0;
  std::vector<double> haar_fractions;
  double haar_min = 0.0, haar_mean = 0.0;
  double adversarial_fraction = 0.0;  // W spanned by vectors of block (1,1)
};

IncompressReport incompressibility_trial(const QuantumEnsemble& ens, int d,
                                         int subspace_samples, RandomStream& stream);

/// Rejection-refined random covering: a delta-dense set of unit vectors of
/// C^m, feasible only for tiny m (guarded to m <= 3). Density is certified
/// statistically by a streak of covered probes.
std::vector<Vector> build_net(int m, double delta, RandomStream& stream,
                              int certify_streak = 2000);

/// Rounds a subspace to the span of the nearest net points of its basis
/// columns; returns an orthonormal basis of the rounded span.
Matrix net_round(const Matrix& basis, const std::vector<Vector>& net, double delta);

/// Thread cap honoring the CCOMPRESS_THREADS environment variable.
int thread_cap();

}  // namespace ccomp::quantum
