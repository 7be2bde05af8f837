#include "ccomp/round_compress.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ccomp/info.hpp"
#include "ccomp/prefix_code.hpp"
#include "ccomp/tolerances.hpp"

namespace ccomp {

namespace {

std::uint64_t prefix_key(std::size_t round, const Transcript& prefix) {
  std::uint64_t h = mix_keys(0x5b8f, round);
  for (std::size_t m : prefix) h = mix_keys(h, m + 1);
  return h;
}

std::string format_index(long double j) {
  // Exact decimal for indices that fit an integer, hex-float otherwise.
  if (j < 1e18L) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(j));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%La", j);
  return buf;
}

}  // namespace

long double expected_floor_log2_geometric(long double q_stop) {
  if (q_stop >= 1.0L) return 0.0L;
  if (q_stop <= 0.0L) throw std::domain_error("expected_floor_log2_geometric: q_stop <= 0");
  const long double lg = std::log1p(-q_stop);  // < 0
  long double sum = 0.0L;
  for (int s = 1; s < 16400; ++s) {
    const long double count = std::exp2(static_cast<long double>(s)) - 1.0L;
    const long double term = std::exp(count * lg);
    sum += term;
    if (term < 1e-30L) break;
  }
  return sum;
}

const CompressedRound& HybridProtocol::round_data(std::size_t round) const {
  if (round < stage || round >= base.rounds())
    throw std::invalid_argument("HybridProtocol: round is not compressed");
  return compressed[round - stage];
}

HybridProtocol begin_compression(const ProtocolTree& pi, const JointDist& mu, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("compression: eps must be in (0, 1)");
  if (mu.num_axes() != 2 || mu.axes()[0].range.size() != pi.x_range().size() ||
      mu.axes()[1].range.size() != pi.y_range().size())
    throw std::invalid_argument("compression: input distribution does not match the protocol");
  pi.validate();
  HybridProtocol h{pi, mu, eps, pi.rounds(), {}};
  return h;
}

void compress_round(HybridProtocol& h, std::size_t i) {
  if (i + 1 != h.stage)
    throw std::invalid_argument("compress_round: rounds must be compressed from last to first");
  const ProtocolTree& pi = h.base;
  const std::size_t k = pi.rounds();
  const double eps_share = h.eps / static_cast<double>(k);
  const double r = static_cast<double>(k) / h.eps;  // 1 / eps_share

  const std::size_t nx = pi.x_range().size();
  const std::size_t ny = pi.y_range().size();
  const bool alice = pi.owner(i) == Owner::alice;
  const std::size_t n_owner = alice ? nx : ny;

  // Reach weights w(x, y, prefix) under the original protocol and mu.
  CompressedRound cr;
  cr.round = i;
  cr.eps_share = eps_share;
  std::map<Transcript, std::vector<double>> weight;  // prefix -> flat (x,y) weights
  {
    Transcript prefix;
    std::function<void(std::size_t, std::size_t, std::size_t, double)> walk =
        [&](std::size_t round, std::size_t x, std::size_t y, double w) {
          if (w <= 0.0) return;
          if (round == i) {
            auto& vec = weight[prefix];
            if (vec.empty()) vec.assign(nx * ny, 0.0);
            vec[x * ny + y] += w;
            return;
          }
          const auto& probs = pi.policy(round, pi.owner_input_of(round, x, y), prefix);
          for (std::size_t m = 0; m < probs.size(); ++m) {
            if (probs[m] <= 0.0) continue;
            prefix.push_back(m);
            walk(round + 1, x, y, w * probs[m]);
            prefix.pop_back();
          }
        };
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) walk(0, x, y, h.mu.prob({x, y}));
  }

  const std::size_t n_sym = pi.alphabet(i).size();
  for (const auto& [prefix, w] : weight) {
    double reach = 0.0;
    for (double v : w) reach += v;
    if (reach <= 0.0) continue;

    RoundPrefixData pd;
    pd.reach = reach;
    pd.live.assign(n_owner, 0);
    // Message marginal given the prefix, under mu.
    std::vector<double> marg(n_sym, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        const double wxy = w[x * ny + y];
        if (wxy <= 0.0) continue;
        const std::size_t v = alice ? x : y;
        pd.live[v] = 1;
        const auto& probs = pi.policy(i, v, prefix);
        for (std::size_t m = 0; m < n_sym; ++m) marg[m] += wxy * probs[m];
      }
    }
    for (double& p : marg) p /= reach;
    pd.q = FiniteDist::normalized(pi.alphabet(i), marg);

    pd.gamma.assign(n_owner, std::vector<long double>(n_sym, 0.0L));
    pd.beta.assign(n_owner, 0.0L);
    pd.eps.assign(n_owner, 0.0);
    pd.a_eff.assign(n_owner, 0.0);
    pd.s_div.assign(n_owner, 0.0);
    pd.exp_enc_bits.assign(n_owner, 0.0);

    for (std::size_t v = 0; v < n_owner; ++v) {
      if (!pd.live[v]) continue;
      const FiniteDist pv(pi.alphabet(i), pi.policy(i, v, prefix));
      const double s = relative_entropy(pv, pd.q);
      if (is_infinite(s))
        throw std::domain_error("compress_round: conditional divergence infinite");
      pd.s_div[v] = s;
      const double a_eff = r * (s + 1.0);
      if (a_eff > 16000.0)
        throw std::length_error("compress_round: effective exponent exceeds long double range");
      pd.a_eff[v] = a_eff;

      // Good set: policy mass that 2^{-a_eff} pushes below the marginal.
      const long double scale = std::exp2(-static_cast<long double>(a_eff));
      double good_mass = 0.0;
      for (std::size_t m = 0; m < n_sym; ++m) {
        const long double pm = pv.p(m);
        const long double qm = pd.q.p(m);
        if (pm <= 0.0L) continue;
        if (qm > 0.0L && pm * scale <= qm) {
          long double g = pm * scale / qm;
          if (g > 1.0L) g = 1.0L;
          pd.gamma[v][m] = g;
          good_mass += pv.p(m);
        }
      }
      pd.eps[v] = std::max(0.0, 1.0 - good_mass);
      const long double denom =
          1.0L - (1.0L - static_cast<long double>(pd.eps[v])) * scale;
      pd.beta[v] =
          denom > 0.0L ? static_cast<long double>(pd.eps[v]) * scale / denom : 0.0L;

      const long double e_log = expected_floor_log2_geometric(scale);
      pd.exp_enc_bits[v] = static_cast<double>(2.0L * e_log + 2.0L);

      // Chain-rule ledger share.
      double wv = 0.0;
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y)
          if ((alice ? x : y) == v) wv += w[x * ny + y];
      cr.a_i += wv * s;
    }
    cr.prefixes.emplace(prefix, std::move(pd));
  }

  h.compressed.insert(h.compressed.begin(), std::move(cr));
  h.stage = i;
}

HybridStats evaluate_hybrid(const HybridProtocol& h, const FunctionSpec& f) {
  const ProtocolTree& pi = h.base;
  const std::size_t k = pi.rounds();
  const std::size_t nx = pi.x_range().size();
  const std::size_t ny = pi.y_range().size();
  HybridStats st;
  st.expected_bits.assign(k, 0.0);
  st.abort_mass.assign(k, 0.0);

  Transcript prefix;
  std::function<void(std::size_t, std::size_t, std::size_t, double)> walk =
      [&](std::size_t round, std::size_t x, std::size_t y, double w) {
        if (w <= 0.0) return;
        if (round == k) {
          if (!f.accepts_symbol(x, y, pi.output(prefix))) st.error += w;
          return;
        }
        const std::size_t v = pi.owner_input_of(round, x, y);
        if (round < h.stage) {
          const auto& probs = pi.policy(round, v, prefix);
          for (std::size_t m = 0; m < probs.size(); ++m) {
            if (probs[m] <= 0.0) continue;
            prefix.push_back(m);
            walk(round + 1, x, y, w * probs[m]);
            prefix.pop_back();
          }
          return;
        }
        const auto& pd = h.round_data(round).prefixes.at(prefix);
        st.abort_mass[round] += w * pd.eps[v];
        st.error += w * pd.eps[v];  // abort counts as error
        st.expected_bits[round] +=
            w * ((1.0 - pd.eps[v]) * pd.exp_enc_bits[v] + pd.eps[v] * 1.0);
        const auto& probs = pi.policy(round, v, prefix);
        for (std::size_t m = 0; m < probs.size(); ++m) {
          if (pd.gamma[v][m] <= 0.0L || probs[m] <= 0.0) continue;
          prefix.push_back(m);
          walk(round + 1, x, y, w * probs[m]);  // accepted law is the policy on good
          prefix.pop_back();
        }
      };
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) walk(0, x, y, h.mu.prob({x, y}));
  for (double b : st.expected_bits) st.total_expected_bits += b;
  return st;
}

CoinRealization::CoinRealization(const HybridProtocol& h, std::uint64_t seed,
                                 std::uint64_t max_entries)
    : h_(&h), seed_(seed), max_entries_(max_entries) {}

void CoinRealization::materialize(std::size_t round, const Transcript& prefix) {
  const auto& pd = h_->round_data(round).prefixes.at(prefix);
  const std::size_t n_owner = pd.live.size();
  const std::size_t n_sym = pd.q.size();
  std::vector<StopRecord> recs(n_owner);  // default: aborted

  RandomStream stream = RandomStream(seed_).child(prefix_key(round, prefix));
  std::vector<std::size_t> active;
  for (std::size_t v = 0; v < n_owner; ++v)
    if (pd.live[v]) active.push_back(v);

  // Per-input thresholds gamma + beta(1 - gamma); entries where every active
  // input falls in the continue band are skipped via geometric gap counts.
  auto thr = [&](std::size_t v, std::size_t m) {
    const long double g = pd.gamma[v][m];
    return g + pd.beta[v] * (1.0L - g);
  };

  long double cursor = 0.0L;
  std::uint64_t entries = 0;
  while (!active.empty() && entries < max_entries_) {
    ++entries;
    std::vector<long double> max_thr(n_sym, 0.0L);
    long double c_int = 0.0L;
    for (std::size_t m = 0; m < n_sym; ++m) {
      for (std::size_t v : active) max_thr[m] = std::max(max_thr[m], thr(v, m));
      c_int += static_cast<long double>(pd.q.p(m)) * max_thr[m];
    }
    if (c_int <= 0.0L) break;  // nobody can ever stop (degenerate)

    // Gap of boring entries, then the interesting entry itself.
    long double gap = 0.0L;
    if (c_int < 1.0L) {
      const long double u = static_cast<long double>(stream.uniform_pos());
      gap = std::floor(std::log(u) / std::log1p(-c_int));
      if (gap < 0.0L) gap = 0.0L;
    }
    cursor += gap + 1.0L;

    // Message of the interesting entry: categorical with weight q(m) max_thr(m).
    long double pick = static_cast<long double>(stream.uniform()) * c_int;
    std::size_t msg = n_sym - 1;
    for (std::size_t m = 0; m < n_sym; ++m) {
      const long double wm = static_cast<long double>(pd.q.p(m)) * max_thr[m];
      if (pick < wm) {
        msg = m;
        break;
      }
      pick -= wm;
    }
    const long double u_scaled =
        static_cast<long double>(stream.uniform()) * max_thr[msg];

    std::vector<std::size_t> still;
    still.reserve(active.size());
    for (std::size_t v : active) {
      const long double g = pd.gamma[v][msg];
      const long double t = g + pd.beta[v] * (1.0L - g);
      if (u_scaled < t) {
        StopRecord& rec = recs[v];
        const long double t_cap = std::exp2(static_cast<long double>(pd.a_eff[v]) + 20.0L);
        if (u_scaled < g && cursor <= t_cap) {
          rec.aborted = false;
          rec.index = cursor;
          rec.message = msg;
          rec.enc_bits = prefix_code_length_from_log2(
              static_cast<std::int64_t>(std::floor(std::log2(cursor))));
        } else {
          rec.aborted = true;  // dummy branch, or index past the per-input cap
          rec.enc_bits = 1;
        }
      } else {
        still.push_back(v);
      }
    }
    active.swap(still);
  }
  records_[{round, prefix}] = std::move(recs);
}

const CoinRealization::StopRecord& CoinRealization::stop(std::size_t round,
                                                         const Transcript& prefix,
                                                         std::size_t input) {
  const auto key = std::make_pair(round, prefix);
  auto it = records_.find(key);
  if (it == records_.end()) {
    materialize(round, prefix);
    it = records_.find(key);
  }
  return it->second.at(input);
}

namespace {

struct RealizationWalk {
  double error = 0.0;
  std::int64_t max_bits = 0;
};

// Runs the fully-compressed protocol under one coin realization for every
// input pair: deterministic once the realization is fixed.
RealizationWalk walk_realization(const HybridProtocol& h, const FunctionSpec& f,
                                 CoinRealization& coins, double bit_cap) {
  const ProtocolTree& pi = h.base;
  const std::size_t k = pi.rounds();
  RealizationWalk out;
  for (std::size_t x = 0; x < pi.x_range().size(); ++x) {
    for (std::size_t y = 0; y < pi.y_range().size(); ++y) {
      const double w = h.mu.prob({x, y});
      Transcript decoded;
      std::int64_t bits = 0;
      bool aborted = false;
      for (std::size_t round = 0; round < k && !aborted; ++round) {
        const std::size_t v = pi.owner_input_of(round, x, y);
        const auto& rec = coins.stop(round, decoded, v);
        if (rec.aborted) {
          // Dummy message: one bit if it fits, else a silent halt.
          if (static_cast<double>(bits + 1) <= bit_cap) bits += 1;
          aborted = true;
        } else if (static_cast<double>(bits + rec.enc_bits) > bit_cap) {
          aborted = true;  // truncation abort, nothing sent
        } else {
          bits += rec.enc_bits;
          decoded.push_back(rec.message);
        }
      }
      bool correct = false;
      if (!aborted) correct = f.accepts_symbol(x, y, pi.output(decoded));
      if (!correct) out.error += w;
      out.max_bits = std::max(out.max_bits, bits);
    }
  }
  return out;
}

}  // namespace

MultiCompressionReport compress_multiround(const ProtocolTree& pi, const FunctionSpec& f,
                                           const JointDist& mu, double eps,
                                           std::uint64_t stream_entry_cap,
                                           std::size_t coin_budget, std::uint64_t seed) {
  if (coin_budget == 0) throw std::invalid_argument("compress_multiround: zero coin budget");
  HybridProtocol h = begin_compression(pi, mu, eps);
  const std::size_t k = pi.rounds();
  for (std::size_t i = k; i-- > 0;) compress_round(h, i);

  MultiCompressionReport rep{.final_protocol = ProtocolTree(pi)};
  rep.eps = eps;
  rep.seed = seed;
  rep.coin_budget = coin_budget;
  rep.a_total = information_cost(pi, mu);
  rep.base_dist_error = evaluate_error(pi, f, mu).distributional;
  rep.target_error = rep.base_dist_error + 2.0 * eps;
  rep.bit_cap = 2.0 * k * (rep.a_total + 1.0) / (eps * eps) + 2.0 * k / eps;
  for (const auto& cr : h.compressed) rep.per_round_info.push_back(cr.a_i);

  const HybridStats stats = evaluate_hybrid(h, f);
  rep.hybrid_error = stats.error;
  rep.per_round_expected_bits = stats.expected_bits;
  rep.per_round_abort_prob = stats.abort_mass;

  // Fix the public coins: sample realizations, evaluate each exactly, keep
  // the best (error, then cost, then realization index).
  RandomStream root(seed);
  std::optional<std::size_t> best;
  double best_err = std::numeric_limits<double>::infinity();
  std::int64_t best_bits = 0;
  for (std::size_t t = 0; t < coin_budget; ++t) {
    CoinRealization coins(h, root.child(t).seed(), stream_entry_cap);
    const RealizationWalk rw = walk_realization(h, f, coins, rep.bit_cap);
    const bool better = !best || rw.error < best_err - 1e-15 ||
                        (std::abs(rw.error - best_err) <= 1e-15 && rw.max_bits < best_bits);
    if (better) {
      best = t;
      best_err = rw.error;
      best_bits = rw.max_bits;
    }
  }
  rep.coin_choice = *best;
  rep.budget_exhausted = best_err > rep.target_error + kIdentityTol;

  // Materialize the winning realization as an explicit deterministic tree.
  CoinRealization coins(h, root.child(*best).seed(), stream_entry_cap);

  // Pass 1: walk every input pair, collecting per-round symbols and paths.
  std::vector<std::map<std::string, std::int64_t>> symbols(k);  // name -> bit length
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> paths;
  std::map<std::pair<std::size_t, std::size_t>, std::string> outputs;
  std::map<Transcript, std::size_t> prefix_ids;  // decoded prefixes, for symbol naming
  auto prefix_id = [&](const Transcript& t) {
    auto [it, fresh] = prefix_ids.emplace(t, prefix_ids.size());
    (void)fresh;
    return it->second;
  };
  for (std::size_t i = 0; i < k; ++i) {
    symbols[i]["0"] = 1;   // dummy/abort message
    symbols[i]["!"] = 0;   // silent halt (truncation or post-abort padding)
  }

  for (std::size_t x = 0; x < pi.x_range().size(); ++x) {
    for (std::size_t y = 0; y < pi.y_range().size(); ++y) {
      Transcript decoded;
      std::vector<std::string> path;
      std::int64_t bits = 0;
      bool aborted = false;
      for (std::size_t round = 0; round < k; ++round) {
        if (aborted) {
          path.push_back("!");
          continue;
        }
        const std::size_t v = pi.owner_input_of(round, x, y);
        const auto& rec = coins.stop(round, decoded, v);
        if (rec.aborted) {
          if (static_cast<double>(bits + 1) <= rep.bit_cap) {
            bits += 1;
            path.push_back("0");
          } else {
            path.push_back("!");
          }
          aborted = true;
        } else if (static_cast<double>(bits + rec.enc_bits) > rep.bit_cap) {
          path.push_back("!");
          aborted = true;
        } else {
          bits += rec.enc_bits;
          const std::string name = "p" + std::to_string(prefix_id(decoded)) + "j" +
                                   format_index(rec.index);
          symbols[round][name] = rec.enc_bits;
          path.push_back(name);
          decoded.push_back(rec.message);
        }
      }
      paths[{x, y}] = path;
      outputs[{x, y}] = aborted ? std::string("\xe2\x8a\xa5") : pi.output(decoded);
    }
  }

  // Pass 2: build the deterministic tree over the collected alphabets.
  std::vector<std::vector<std::string>> alphabets(k);
  std::vector<std::map<std::string, std::size_t>> sym_index(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& [name, bits] : symbols[i]) {
      sym_index[i][name] = alphabets[i].size();
      alphabets[i].push_back(name);
    }
  }
  std::vector<Owner> owners;
  for (std::size_t i = 0; i < k; ++i) owners.push_back(pi.owner(i));
  ProtocolTree fin(pi.x_range(), pi.y_range(), owners, alphabets);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> lens(alphabets[i].size());
    for (const auto& [name, idx] : sym_index[i]) lens[idx] = symbols[i].at(name);
    fin.set_bit_lengths(i, lens);
  }
  for (std::size_t x = 0; x < pi.x_range().size(); ++x) {
    for (std::size_t y = 0; y < pi.y_range().size(); ++y) {
      const auto& path = paths.at({x, y});
      Transcript prefix;
      for (std::size_t round = 0; round < k; ++round) {
        const std::size_t v = pi.owner_input_of(round, x, y);
        const std::size_t sym = sym_index[round].at(path[round]);
        if (!fin.has_policy(round, v, prefix)) {
          std::vector<double> point(alphabets[round].size(), 0.0);
          point[sym] = 1.0;
          fin.set_policy(round, v, prefix, std::move(point));
        }
        prefix.push_back(sym);
      }
      fin.set_output(prefix, outputs.at({x, y}));
    }
  }

  rep.final_protocol = fin;
  rep.comm_bits = fin.communication_cost();
  rep.dist_error = evaluate_error(fin, f, mu).distributional;
  return rep;
}

}  // namespace ccomp
