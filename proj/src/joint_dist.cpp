#include "ccomp/joint_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "ccomp/tolerances.hpp"

namespace ccomp {

namespace {

std::vector<std::size_t> make_strides(const std::vector<Axis>& axes) {
  std::vector<std::size_t> strides(axes.size());
  std::size_t s = 1;
  for (std::size_t i = axes.size(); i-- > 0;) {
    strides[i] = s;
    s *= axes[i].range.size();
  }
  return strides;
}

}  // namespace

JointDist::JointDist(std::vector<Axis> axes, std::vector<double> probs)
    : axes_(std::move(axes)), probs_(std::move(probs)) {
  if (axes_.empty()) throw std::invalid_argument("JointDist: no axes");
  std::unordered_set<std::string> names;
  std::size_t cells = 1;
  for (const auto& ax : axes_) {
    if (ax.range.empty()) throw std::invalid_argument("JointDist: empty axis range");
    if (!names.insert(ax.name).second)
      throw std::invalid_argument("JointDist: duplicate axis '" + ax.name + "'");
    cells *= ax.range.size();
  }
  if (cells != probs_.size())
    throw std::invalid_argument("JointDist: table size mismatch");
  double sum = 0.0;
  for (double& p : probs_) {
    if (p < 0.0) {
      if (p < -kProbSumTol) throw std::invalid_argument("JointDist: negative probability");
      p = 0.0;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw std::invalid_argument("JointDist: probabilities sum to " + std::to_string(sum));
  strides_ = make_strides(axes_);
}

JointDist JointDist::product(const Axis& a, const FiniteDist& pa,
                             const Axis& b, const FiniteDist& pb) {
  std::vector<double> probs(pa.size() * pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j)
      probs[i * pb.size() + j] = pa.p(i) * pb.p(j);
  return JointDist({a, b}, std::move(probs));
}

std::size_t JointDist::axis_index(const std::string& name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return i;
  throw std::invalid_argument("JointDist: unknown axis '" + name + "'");
}

double JointDist::prob(const std::vector<std::size_t>& idx) const {
  if (idx.size() != axes_.size()) throw std::invalid_argument("JointDist::prob: bad index arity");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= axes_[i].range.size())
      throw std::invalid_argument("JointDist::prob: index out of range");
    flat += idx[i] * strides_[i];
  }
  return probs_[flat];
}

void JointDist::check_names_subset(const std::vector<std::string>& names) const {
  for (const auto& n : names) axis_index(n);
  std::unordered_set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size())
    throw std::invalid_argument("JointDist: repeated axis name in selection");
}

JointDist JointDist::marginal(const std::vector<std::string>& names) const {
  check_names_subset(names);
  std::vector<std::size_t> keep;
  std::vector<Axis> out_axes;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (std::find(names.begin(), names.end(), axes_[i].name) != names.end()) {
      keep.push_back(i);
      out_axes.push_back(axes_[i]);
    }
  }
  if (keep.empty()) throw std::invalid_argument("JointDist::marginal: empty selection");
  std::vector<std::size_t> out_strides(keep.size());
  std::size_t s = 1;
  for (std::size_t i = keep.size(); i-- > 0;) {
    out_strides[i] = s;
    s *= out_axes[i].range.size();
  }
  std::vector<double> out(s, 0.0);
  std::vector<std::size_t> idx(axes_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t rem = flat;
    std::size_t out_flat = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      idx[i] = rem / strides_[i];
      rem %= strides_[i];
    }
    for (std::size_t i = 0; i < keep.size(); ++i) out_flat += idx[keep[i]] * out_strides[i];
    out[out_flat] += probs_[flat];
  }
  return JointDist(std::move(out_axes), std::move(out));
}

double JointDist::axis_mass(const std::string& axis, std::size_t value) const {
  const std::size_t ai = axis_index(axis);
  if (value >= axes_[ai].range.size())
    throw std::invalid_argument("JointDist::axis_mass: value out of range");
  double m = 0.0;
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    if ((flat / strides_[ai]) % axes_[ai].range.size() == value) m += probs_[flat];
  }
  return m;
}

JointDist JointDist::condition(const std::string& axis, std::size_t value) const {
  if (axes_.size() < 2)
    throw std::invalid_argument("JointDist::condition: cannot drop the only axis");
  const std::size_t ai = axis_index(axis);
  const double m = axis_mass(axis, value);
  if (m <= 0.0) throw std::invalid_argument("JointDist::condition: zero-mass event");
  std::vector<Axis> out_axes;
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (i != ai) out_axes.push_back(axes_[i]);
  std::vector<double> out;
  out.reserve(probs_.size() / axes_[ai].range.size());
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    if ((flat / strides_[ai]) % axes_[ai].range.size() == value) out.push_back(probs_[flat] / m);
  }
  return JointDist(std::move(out_axes), std::move(out));
}

FiniteDist JointDist::flatten() const {
  std::vector<std::string> symbols;
  symbols.reserve(probs_.size());
  std::vector<std::size_t> idx(axes_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t rem = flat;
    std::string name;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      idx[i] = rem / strides_[i];
      rem %= strides_[i];
      if (i) name += '|';
      name += axes_[i].range[idx[i]];
    }
    symbols.push_back(std::move(name));
  }
  return FiniteDist(std::move(symbols), probs_);
}

FiniteDist JointDist::axis_dist(const std::string& name) const {
  const JointDist m = marginal({name});
  return FiniteDist(m.axes_[0].range, m.probs_);
}

double JointDist::entropy_all() const {
  double h = 0.0;
  for (double p : probs_)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double JointDist::entropy_of(const std::vector<std::string>& names) const {
  return marginal(names).entropy_all();
}

JointDist JointDist::tensor_power(std::size_t m, std::size_t max_cells) const {
  if (m == 0) throw std::invalid_argument("tensor_power: m must be >= 1");
  if (m == 1) return *this;
  double cells = 1.0;
  for (const auto& ax : axes_) cells *= std::pow(static_cast<double>(ax.range.size()), static_cast<double>(m));
  if (cells > static_cast<double>(max_cells))
    throw std::length_error("tensor_power: state space guard exceeded");

  std::vector<Axis> out_axes;
  for (const auto& ax : axes_) {
    Axis na;
    na.name = ax.name;
    const std::size_t n = ax.range.size();
    std::size_t total = 1;
    for (std::size_t c = 0; c < m; ++c) total *= n;
    na.range.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      std::string sym;
      std::vector<std::size_t> digits(m);
      for (std::size_t c = m; c-- > 0;) {
        digits[c] = rem % n;
        rem /= n;
      }
      for (std::size_t c = 0; c < m; ++c) {
        if (c) sym += ';';
        sym += ax.range[digits[c]];
      }
      na.range.push_back(std::move(sym));
    }
    out_axes.push_back(std::move(na));
  }

  // Probability of a tuple cell is the product over copies.
  std::vector<std::size_t> out_sizes;
  std::size_t out_total = 1;
  for (const auto& ax : out_axes) {
    out_sizes.push_back(ax.range.size());
    out_total *= ax.range.size();
  }
  std::vector<double> out(out_total);
  std::vector<std::size_t> oidx(axes_.size());
  for (std::size_t flat = 0; flat < out_total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t i = axes_.size(); i-- > 0;) {
      oidx[i] = rem % out_sizes[i];
      rem /= out_sizes[i];
    }
    double p = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<std::size_t> base_idx(axes_.size());
      for (std::size_t i = 0; i < axes_.size(); ++i) {
        const std::size_t n = axes_[i].range.size();
        std::size_t tuple_flat = oidx[i];
        // digit c (big-endian over copies)
        std::size_t div = 1;
        for (std::size_t c2 = m - 1; c2 > c; --c2) div *= n;
        base_idx[i] = (tuple_flat / div) % n;
      }
      p *= prob(base_idx);
    }
    out[flat] = p;
  }
  return JointDist(std::move(out_axes), std::move(out));
}

namespace {

std::vector<std::string> concat_names(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    const char* what) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x == y) throw std::invalid_argument(std::string(what) + ": overlapping axis sets");
}

}  // namespace

double mutual_information(const JointDist& j, const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  check_disjoint(a, b, "mutual_information");
  return j.entropy_of(a) + j.entropy_of(b) - j.entropy_of(concat_names(a, b));
}

double conditional_mutual_information(const JointDist& j,
                                      const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& z) {
  check_disjoint(a, b, "conditional_mutual_information");
  check_disjoint(a, z, "conditional_mutual_information");
  check_disjoint(b, z, "conditional_mutual_information");
  if (z.empty()) return mutual_information(j, a, b);
  return j.entropy_of(concat_names(a, z)) + j.entropy_of(concat_names(b, z)) -
         j.entropy_of(concat_names(concat_names(a, b), z)) - j.entropy_of(z);
}

}  // namespace ccomp
