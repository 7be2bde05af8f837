#include <cmath>
#include <stdexcept>

#include "ccomp/quantum.hpp"

namespace ccomp::quantum {

Matrix QuantumEnsemble::block(int l) const {
  if (l < 0 || l >= n) throw std::invalid_argument("QuantumEnsemble::block: index out of range");
  const int per = blocks_per_basis();
  const int basis = l / per;
  const int j = l % per;
  return bases[basis].middleCols(j * block_size(), block_size());
}

Matrix QuantumEnsemble::projector(int l) const {
  const Matrix b = block(l);
  return b * b.adjoint();
}

Matrix QuantumEnsemble::state(int l) const {
  return (static_cast<double>(blocks_per_basis()) / m) * projector(l);
}

Matrix QuantumEnsemble::mean_state() const {
  Matrix acc = Matrix::Zero(m, m);
  for (const auto& b : bases) acc += b * b.adjoint();
  return acc / (static_cast<double>(bases.size()) * m);
}

void QuantumEnsemble::verify() const {
  const double scale = static_cast<double>(blocks_per_basis()) / m;
  for (int l = 0; l < n; ++l) {
    // Tr M_l rho_l = scale * ||B^dagger B||_F^2; orthonormal columns give
    // exactly rank(B) = m / 2^k_exp, hence 1.
    const Matrix gram = block(l).adjoint() * block(l);
    const double tr = scale * gram.squaredNorm();
    if (std::abs(tr - 1.0) > 1e-9)
      throw std::logic_error("QuantumEnsemble: Tr M_l rho_l deviates from 1");
    if ((gram - Matrix::Identity(block_size(), block_size())).cwiseAbs().maxCoeff() > 1e-9)
      throw std::logic_error("QuantumEnsemble: block columns are not orthonormal");
  }
  const Matrix mean = mean_state();
  if ((mean - Matrix::Identity(m, m) / m).cwiseAbs().maxCoeff() > 1e-8)
    throw std::logic_error("QuantumEnsemble: mean state deviates from I/m");
}

QuantumEnsemble build_ensemble(int m, int k_exp, int n, RandomStream& stream) {
  if (m < 1 || n < 1 || k_exp < 0) throw std::invalid_argument("build_ensemble: bad parameters");
  const int per = 1 << k_exp;
  if (m % per != 0) throw std::invalid_argument("build_ensemble: 2^k_exp must divide m");
  if (n % per != 0) throw std::invalid_argument("build_ensemble: 2^k_exp must divide n");
  QuantumEnsemble ens;
  ens.m = m;
  ens.n = n;
  ens.k_exp = k_exp;
  const int n_bases = n / per;
  ens.bases.reserve(n_bases);
  for (int i = 0; i < n_bases; ++i) {
    RandomStream sub = stream.child(static_cast<std::uint64_t>(i));
    ens.bases.push_back(haar_orthonormal(m, m, sub));
  }
  ens.verify();
  return ens;
}

}  // namespace ccomp::quantum
