#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "ccomp/quantum.hpp"
#include "ccomp/tolerances.hpp"

namespace ccomp::quantum {

int thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("CCOMPRESS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < static_cast<long>(hw)) return static_cast<int>(v);
    if (v >= static_cast<long>(hw)) return static_cast<int>(hw);
  }
  return static_cast<int>(hw);
}

Vector haar_vector(int m, RandomStream& stream) {
  if (m < 1) throw std::invalid_argument("haar_vector: m must be >= 1");
  Vector v(m);
  while (true) {
    for (int i = 0; i < m; ++i)
      v(i) = std::complex<double>(stream.gaussian(), stream.gaussian());
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

Matrix haar_orthonormal(int m, int d, RandomStream& stream) {
  if (d < 1 || d > m) throw std::invalid_argument("haar_orthonormal: need 1 <= d <= m");
  Matrix basis(m, d);
  for (int col = 0; col < d; ++col) {
    while (true) {
      Vector v = haar_vector(m, stream);
      // Modified Gram-Schmidt, applied twice.
      for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < col; ++j) v -= basis.col(j).dot(v) * basis.col(j);
      const double norm = v.norm();
      if (norm > 1e-8) {  // degenerate draw: resample
        basis.col(col) = v / norm;
        break;
      }
    }
  }
  return basis;
}

double povm_value(const Matrix& m_op, const Matrix& basis) {
  if (m_op.rows() != m_op.cols() || m_op.rows() != basis.rows())
    throw std::invalid_argument("povm_value: dimension mismatch");
  const Matrix compressed = basis.adjoint() * m_op * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(compressed, Eigen::EigenvaluesOnly);
  double v = es.eigenvalues().maxCoeff();
  if (v < 0.0 && v > -kIdentityTol) v = 0.0;
  if (v > 1.0 && v < 1.0 + kIdentityTol) v = 1.0;
  return v;
}

namespace {

void check_density_like(const Matrix& rho, const char* what) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument(std::string(what) + ": not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument(std::string(what) + ": not Hermitian");
}

}  // namespace

double quantum_relative_entropy(const Matrix& rho, const Matrix& sigma) {
  check_density_like(rho, "quantum_relative_entropy(rho)");
  check_density_like(sigma, "quantum_relative_entropy(sigma)");
  if (rho.rows() != sigma.rows())
    throw std::invalid_argument("quantum_relative_entropy: dimension mismatch");

  Eigen::SelfAdjointEigenSolver<Matrix> er(rho);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  const auto& lr = er.eigenvalues();
  const auto& ls = es.eigenvalues();
  if (lr.minCoeff() < -1e-8 || ls.minCoeff() < -1e-8)
    throw std::invalid_argument("quantum_relative_entropy: input not positive semidefinite");

  constexpr double kSupportTol = 1e-10;
  double s = 0.0;
  for (int i = 0; i < lr.size(); ++i) {
    const double li = lr(i);
    if (li > kSupportTol) s += li * std::log2(li);
  }
  // Tr rho log sigma via sigma's eigenbasis; mass on sigma's kernel means
  // the divergence is infinite.
  double kernel_mass = 0.0;
  for (int j = 0; j < ls.size(); ++j) {
    const double sj = ls(j);
    const double w = (es.eigenvectors().col(j).adjoint() * rho * es.eigenvectors().col(j))
                         .value()
                         .real();
    if (sj > kSupportTol) {
      s -= w * std::log2(sj);
    } else {
      kernel_mass += w;
    }
  }
  if (kernel_mass > 1e-9) return std::numeric_limits<double>::infinity();
  return s;
}

}  // namespace ccomp::quantum
