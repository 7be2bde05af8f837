#include "ccomp/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "ccomp/info.hpp"
#include "ccomp/substate.hpp"

namespace ccomp {

namespace {

void check_domination(const FiniteDist& p, const FiniteDist& q, double a) {
  const long double scale = std::exp2(static_cast<long double>(-a));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (scale * static_cast<long double>(p.p(i)) >
        static_cast<long double>(q.p(i)) * (1.0L + 1e-15L)) {
      throw std::invalid_argument("domination violated at symbol '" + p.symbol(i) +
                                  "': 2^{-a} P(i) > Q(i)");
    }
  }
}

}  // namespace

RejectionPair make_rejection_pair(const FiniteDist& p, const FiniteDist& q, double a) {
  if (!p.same_alphabet(q)) throw std::invalid_argument("rejection pair: alphabet mismatch");
  check_domination(p, q, a);
  RejectionPair rp{q, std::vector<double>(p.size(), 0.0), a};
  const long double scale = std::exp2(static_cast<long double>(-a));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q.p(i) > 0.0) {
      long double g = scale * static_cast<long double>(p.p(i)) / static_cast<long double>(q.p(i));
      if (g > 1.0L) g = 1.0L;  // domination holds up to rounding
      rp.accept_prob[i] = static_cast<double>(g);
    }
  }
  // Closed-form laws, verified on construction.
  const double rate = rp.accept_rate();
  if (std::abs(rate - static_cast<double>(scale)) > 1e-12 * static_cast<double>(scale))
    throw std::logic_error("rejection pair: acceptance rate deviates from 2^-a");
  const FiniteDist cond = rp.conditional_given_accept();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(cond.p(i) - p.p(i)) > 1e-12)
      throw std::logic_error("rejection pair: conditional law deviates from P");
  return rp;
}

double RejectionPair::accept_rate() const {
  long double s = 0.0L;
  for (std::size_t i = 0; i < q.size(); ++i)
    s += static_cast<long double>(q.p(i)) * static_cast<long double>(accept_prob[i]);
  return static_cast<double>(s);
}

FiniteDist RejectionPair::conditional_given_accept() const {
  const double rate = accept_rate();
  if (rate <= 0.0) throw std::domain_error("rejection pair: acceptance has zero probability");
  std::vector<double> probs(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) probs[i] = q.p(i) * accept_prob[i] / rate;
  return FiniteDist::normalized(q.alphabet(), std::move(probs));
}

RejectionPair::Draw RejectionPair::draw(RandomStream& stream) const {
  const std::size_t x = q.sample(stream);
  const bool acc = stream.uniform() < accept_prob[x];
  return {x, acc};
}

CorrelatedSequence correlated_sequence(const FiniteDist& p, const FiniteDist& q, double a,
                                       std::size_t t, RandomStream& stream) {
  if (t < 1) throw std::invalid_argument("correlated_sequence: t must be >= 1");
  const RejectionPair rp = make_rejection_pair(p, q, a);
  CorrelatedSequence out;
  out.x_seq.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    const auto d = rp.draw(stream);
    out.x_seq.push_back(d.x);
    if (d.accepted) out.accepted_at.push_back(i);
  }
  return out;
}

LasVegasSampler make_las_vegas_sampler(const FiniteDist& p, const FiniteDist& q,
                                       double eps_target) {
  if (!p.same_alphabet(q)) throw std::invalid_argument("las vegas sampler: alphabet mismatch");
  if (!(eps_target > 0.0 && eps_target <= 1.0))
    throw std::invalid_argument("las vegas sampler: eps_target must be in (0, 1]");
  const double r = 1.0 / eps_target;
  const SubstateDecomposition dec = substate_decompose(p, q, r);  // throws on infinite S(P||Q)

  LasVegasSampler lv{};
  lv.q = q;
  lv.good = dec.good;
  lv.a = r * (dec.a + 1.0);
  double good_mass = 0.0;
  for (std::size_t i : lv.good) good_mass += p.p(i);
  lv.eps = 1.0 - good_mass;
  if (lv.eps < 0.0) lv.eps = 0.0;

  const long double two_pow_ma = std::exp2(-static_cast<long double>(lv.a));
  lv.gamma.assign(p.size(), 0.0L);
  for (std::size_t i : lv.good) {
    if (q.p(i) > 0.0) {
      long double g = static_cast<long double>(p.p(i)) * two_pow_ma /
                      static_cast<long double>(q.p(i));
      if (g > 1.0L) g = 1.0L;  // good-set membership guarantees <= 1 up to rounding
      lv.gamma[i] = g;
    }
  }
  const long double denom = 1.0L - (1.0L - static_cast<long double>(lv.eps)) * two_pow_ma;
  lv.beta = denom > 0.0L ? static_cast<long double>(lv.eps) * two_pow_ma / denom : 0.0L;
  // The beta weight balances the per-entry stop mass to exactly 2^-a.
  const long double rate = lv.stop_rate();
  if (std::abs(static_cast<double>(rate - two_pow_ma)) >
      1e-12 * static_cast<double>(two_pow_ma))
    throw std::logic_error("las vegas sampler: stop rate deviates from 2^-a");
  return lv;
}

long double LasVegasSampler::stop_rate() const {
  long double s = 0.0L;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const long double gi = gamma[i];
    s += static_cast<long double>(q.p(i)) * (gi + beta * (1.0L - gi));
  }
  return s;
}

double LasVegasSampler::expected_stop() const { return std::exp2(a); }

double LasVegasSampler::tail_beyond(double t_max) const {
  // (1 - 2^{-a})^{t_max} computed in log space.
  const long double q_stop = std::exp2(-static_cast<long double>(a));
  if (q_stop >= 1.0L) return 0.0;
  return static_cast<double>(
      std::exp(static_cast<long double>(t_max) * std::log1p(-q_stop)));
}

double LasVegasSampler::default_t_max() const { return std::exp2(a + 20.0); }

LasVegasSampler::OutputLaw LasVegasSampler::output_law() const {
  OutputLaw law;
  law.probs.assign(q.size(), 0.0);
  const long double rate = stop_rate();
  for (std::size_t i = 0; i < q.size(); ++i) {
    // Pr[Y=i] = Q(i) gamma_i / stop_rate = P(i) on the good set.
    law.probs[i] = static_cast<double>(static_cast<long double>(q.p(i)) * gamma[i] / rate);
  }
  long double abort = 0.0L;
  for (std::size_t i = 0; i < q.size(); ++i)
    abort += static_cast<long double>(q.p(i)) * beta * (1.0L - gamma[i]);
  law.abort = static_cast<double>(abort / rate);
  return law;
}

LasVegasSampler::Trace LasVegasSampler::draw(RandomStream& stream, std::uint64_t t_max) const {
  Trace tr;
  for (std::uint64_t step = 1; step <= t_max; ++step) {
    const std::size_t x = q.sample(stream);
    tr.x_seq.push_back(x);
    const long double u = static_cast<long double>(stream.uniform());
    const long double g = gamma[x];
    if (u < g) {
      tr.r = step;
      tr.y = x;
      return tr;
    }
    if (u < g + beta * (1.0L - g)) {
      tr.r = step;
      tr.y = std::nullopt;  // abort symbol
      return tr;
    }
  }
  return tr;  // cap hit: r unset, treated as abort by callers
}

MultiSampleResult multi_sample(const FiniteDist& q, const std::vector<FiniteDist>& ps,
                               double eps, std::uint64_t seed, std::uint64_t t_max) {
  if (ps.empty()) throw std::invalid_argument("multi_sample: no target distributions");
  std::vector<LasVegasSampler> samplers;
  samplers.reserve(ps.size());
  for (const auto& p : ps) samplers.push_back(make_las_vegas_sampler(p, q, eps));

  MultiSampleResult out;
  out.root_seed = seed;
  out.traces.assign(ps.size(), {});
  RandomStream root(seed);
  RandomStream shared = root.child(0);  // the common Q-stream
  std::vector<RandomStream> decision;
  decision.reserve(ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j) decision.push_back(root.child(j + 1));

  std::size_t active = ps.size();
  for (std::uint64_t step = 1; step <= t_max && active > 0; ++step) {
    const std::size_t x = q.sample(shared);
    out.x_seq.push_back(x);
    for (std::size_t j = 0; j < ps.size(); ++j) {
      // Every trace consumes one decision draw per entry, stopped or not,
      // so trace outcomes do not depend on the other traces.
      const long double u = static_cast<long double>(decision[j].uniform());
      if (out.traces[j].r.has_value()) continue;
      const long double g = samplers[j].gamma[x];
      if (u < g) {
        out.traces[j].r = step;
        out.traces[j].y = x;
        --active;
      } else if (u < g + samplers[j].beta * (1.0L - g)) {
        out.traces[j].r = step;
        out.traces[j].y = std::nullopt;
        --active;
      }
    }
  }
  return out;
}

void write_trace_jsonl(std::ostream& os, const FiniteDist& q, const MultiSampleResult& result) {
  os << "{\"seed\":" << result.root_seed << "}\n";
  for (std::size_t j = 0; j < result.traces.size(); ++j) {
    const auto& t = result.traces[j];
    os << "{\"j\":" << j << ",\"r\":";
    if (t.r.has_value())
      os << *t.r;
    else
      os << "null";
    os << ",\"y\":";
    if (t.y.has_value())
      os << "\"" << q.symbol(*t.y) << "\"";
    else
      os << 0;
    os << "}\n";
  }
}

}  // namespace ccomp
