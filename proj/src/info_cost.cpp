#include "ccomp/info_cost.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace ccomp {

namespace {

void check_mu_ranges(const ProtocolTree& pi, const JointDist& mu) {
  if (mu.num_axes() != 2) throw std::invalid_argument("input distribution must have two axes");
  if (mu.axes()[0].range.size() != pi.x_range().size() ||
      mu.axes()[1].range.size() != pi.y_range().size())
    throw std::invalid_argument("input distribution ranges do not match the protocol");
}

}  // namespace

JointDist protocol_joint(const ProtocolTree& pi, const JointDist& mu) {
  check_mu_ranges(pi, mu);
  const auto transcripts = pi.reachable_transcripts();
  if (transcripts.empty()) throw std::invalid_argument("protocol has no reachable transcript");
  std::map<Transcript, std::size_t> t_index;
  Axis t_axis{"T", {}};
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    t_index[transcripts[i]] = i;
    t_axis.range.push_back(pi.transcript_name(transcripts[i]));
  }

  const std::size_t nx = pi.x_range().size();
  const std::size_t ny = pi.y_range().size();
  const std::size_t nt = transcripts.size();
  std::vector<double> probs(nx * ny * nt, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double w = mu.prob({x, y});
      if (w <= 0.0) continue;
      for (const auto& [t, p] : pi.transcript_table(x, y)) {
        probs[(x * ny + y) * nt + t_index.at(t)] += w * p;
      }
    }
  }
  Axis x_axis{"X", pi.x_range()};
  Axis y_axis{"Y", pi.y_range()};
  return JointDist({x_axis, y_axis, t_axis}, std::move(probs));
}

double information_cost(const ProtocolTree& pi, const JointDist& mu) {
  const JointDist j = protocol_joint(pi, mu);
  return mutual_information(j, {"X", "Y"}, {"T"});
}

double conditional_information_cost(const ProtocolTree& pi, const PartitionedInput& pm) {
  double total = 0.0;
  for (std::size_t d = 0; d < pm.num_components(); ++d) {
    const double kd = pm.kappa().p(d);
    if (kd <= 0.0) continue;
    total += kd * information_cost(pi, pm.components()[d]);
  }
  return total;
}

ErrorReport evaluate_error(const ProtocolTree& pi, const FunctionSpec& f, const JointDist& mu) {
  check_mu_ranges(pi, mu);
  if (f.x_range.size() != pi.x_range().size() || f.y_range.size() != pi.y_range().size())
    throw std::invalid_argument("evaluate_error: task ranges do not match the protocol");
  ErrorReport rep;
  for (std::size_t x = 0; x < pi.x_range().size(); ++x) {
    for (std::size_t y = 0; y < pi.y_range().size(); ++y) {
      double wrong = 0.0;
      for (const auto& [t, p] : pi.transcript_table(x, y)) {
        if (!f.accepts_symbol(x, y, pi.output(t))) wrong += p;
      }
      rep.per_input[{x, y}] = wrong;
      rep.distributional += mu.prob({x, y}) * wrong;
      if (wrong > rep.worst_case) rep.worst_case = wrong;
    }
  }
  return rep;
}

ProtocolTree tensor_protocol(const ProtocolTree& pi, std::size_t m, std::size_t max_cells) {
  if (m == 0) throw std::invalid_argument("tensor_protocol: m must be >= 1");
  if (m == 1) return pi;

  // Guard the blown-up state space before building anything.
  double cells = static_cast<double>(pi.x_range().size()) + pi.y_range().size();
  double transcript_cells = 1.0;
  for (std::size_t i = 0; i < pi.rounds(); ++i)
    transcript_cells *= std::pow(static_cast<double>(pi.alphabet(i).size()),
                                 static_cast<double>(m));
  cells = std::pow(static_cast<double>(pi.x_range().size()), static_cast<double>(m)) *
              std::pow(static_cast<double>(pi.y_range().size()), static_cast<double>(m)) +
          transcript_cells;
  if (cells > static_cast<double>(max_cells) || transcript_cells > static_cast<double>(max_cells))
    throw std::length_error("tensor_protocol: state space guard exceeded");

  auto tuple_range = [m](const std::vector<std::string>& base) {
    std::vector<std::string> out;
    std::size_t total = 1;
    for (std::size_t c = 0; c < m; ++c) total *= base.size();
    out.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      std::vector<std::size_t> d(m);
      for (std::size_t c = m; c-- > 0;) {
        d[c] = rem % base.size();
        rem /= base.size();
      }
      std::string sym;
      for (std::size_t c = 0; c < m; ++c) {
        if (c) sym += ';';
        sym += base[d[c]];
      }
      out.push_back(std::move(sym));
    }
    return out;
  };
  auto digits = [m](std::size_t flat, std::size_t base) {
    std::vector<std::size_t> d(m);
    for (std::size_t c = m; c-- > 0;) {
      d[c] = flat % base;
      flat /= base;
    }
    return d;
  };

  std::vector<Owner> owners;
  std::vector<std::vector<std::string>> alphabets;
  for (std::size_t i = 0; i < pi.rounds(); ++i) {
    owners.push_back(pi.owner(i));
    alphabets.push_back(tuple_range(pi.alphabet(i)));
  }
  ProtocolTree out(tuple_range(pi.x_range()), tuple_range(pi.y_range()), owners, alphabets);

  // Policies: product over copies of the per-copy policies; enumerate all
  // reachable (input tuple, prefix tuple) nodes.
  const std::size_t nx = pi.x_range().size();
  const std::size_t ny = pi.y_range().size();
  const std::size_t nxm = out.x_range().size();
  const std::size_t nym = out.y_range().size();

  std::function<void(std::size_t, Transcript&, std::vector<Transcript>&)> fill =
      [&](std::size_t round, Transcript& prefix, std::vector<Transcript>& copy_prefix) {
        if (round == pi.rounds()) {
          // Tuples with an unreachable copy transcript stay output-free.
          for (std::size_t c = 0; c < m; ++c)
            if (pi.output_table().count(copy_prefix[c]) == 0) return;
          std::string z;
          for (std::size_t c = 0; c < m; ++c) {
            if (c) z += ';';
            z += pi.output(copy_prefix[c]);
          }
          out.set_output(prefix, z);
          return;
        }
        const std::size_t base_n = pi.alphabet(round).size();
        const std::size_t owner_n = pi.owner(round) == Owner::alice ? nx : ny;
        const std::size_t owner_nm = pi.owner(round) == Owner::alice ? nxm : nym;
        for (std::size_t input = 0; input < owner_nm; ++input) {
          const auto in_d = digits(input, owner_n);
          std::vector<double> probs(out.alphabet(round).size());
          bool live = true;
          for (std::size_t c = 0; c < m && live; ++c)
            live = pi.has_policy(round, in_d[c], copy_prefix[c]);
          if (!live) continue;
          for (std::size_t mm = 0; mm < probs.size(); ++mm) {
            const auto md = digits(mm, base_n);
            double p = 1.0;
            for (std::size_t c = 0; c < m; ++c)
              p *= pi.policy(round, in_d[c], copy_prefix[c])[md[c]];
            probs[mm] = p;
          }
          out.set_policy(round, input, prefix, std::move(probs));
        }
        for (std::size_t mm = 0; mm < out.alphabet(round).size(); ++mm) {
          const auto md = digits(mm, base_n);
          prefix.push_back(mm);
          for (std::size_t c = 0; c < m; ++c) copy_prefix[c].push_back(md[c]);
          fill(round + 1, prefix, copy_prefix);
          for (std::size_t c = 0; c < m; ++c) copy_prefix[c].pop_back();
          prefix.pop_back();
        }
      };
  Transcript prefix;
  std::vector<Transcript> copy_prefix(m);
  fill(0, prefix, copy_prefix);
  return out;
}

}  // namespace ccomp
