#include <cmath>
#include <stdexcept>

#include "ccomp/quantum.hpp"

namespace ccomp::quantum {

namespace {

double nearest_distance(const Vector& v, const std::vector<Vector>& net, int* index) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double d = (v - net[i]).norm();
    if (d < best) {
      best = d;
      if (index) *index = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

std::vector<Vector> build_net(int m, double delta, RandomStream& stream, int certify_streak) {
  if (m < 1 || m > 3) throw std::invalid_argument("build_net: feasible only for m <= 3");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("build_net: delta must be in (0, 1]");
  std::vector<Vector> net;
  int covered_streak = 0;
  std::uint64_t probe = 0;
  while (covered_streak < certify_streak) {
    RandomStream s = stream.child(probe++);
    const Vector v = haar_vector(m, s);
    if (net.empty() || nearest_distance(v, net, nullptr) > delta) {
      net.push_back(v);
      covered_streak = 0;
    } else {
      ++covered_streak;
    }
  }
  return net;
}

Matrix net_round(const Matrix& basis, const std::vector<Vector>& net, double delta) {
  if (net.empty()) throw std::invalid_argument("net_round: empty net");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("net_round: delta must be in (0, 1]");
  const int m = static_cast<int>(basis.rows());
  const int d = static_cast<int>(basis.cols());
  Matrix rounded(m, d);
  for (int col = 0; col < d; ++col) {
    int idx = 0;
    nearest_distance(basis.col(col), net, &idx);
    rounded.col(col) = net[static_cast<std::size_t>(idx)];
  }
  // Orthonormalize the rounded span; drop directions lost to rounding.
  Matrix out(m, d);
  int rank = 0;
  for (int col = 0; col < d; ++col) {
    Vector v = rounded.col(col);
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < rank; ++j) v -= out.col(j).dot(v) * out.col(j);
    const double norm = v.norm();
    if (norm > 1e-9) {
      out.col(rank++) = v / norm;
    }
  }
  return out.leftCols(rank);
}

}  // namespace ccomp::quantum
