// Acceptance suite: each criterion below prints one [PASS]/[FAIL] line with
// its runtime. The process exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ccomp/brute_force.hpp"
#include "ccomp/direct_sum.hpp"
#include "ccomp/info.hpp"
#include "ccomp/info_cost.hpp"
#include "ccomp/json_io.hpp"
#include "ccomp/quantum.hpp"
#include "ccomp/round_compress.hpp"
#include "ccomp/sampler.hpp"
#include "ccomp/simul_compress.hpp"
#include "ccomp/substate.hpp"
#include "test_util.hpp"

using namespace ccomp;

namespace {

std::string g_cli_bin;

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// --- 1. substate decomposition inequalities -------------------------------
void criterion_substate(Check& c) {
  RandomStream s(20240601);
  const double slack = 1e-12;
  for (int trial = 0; trial < 10000; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t n = 2 + t.below(15);  // alphabet size <= 16
    const auto p = testutil::random_dist(t, n);
    const auto q = testutil::random_dist(t, n, 0.05);
    for (double r : {1.0, 2.0, 4.0}) {
      const auto d = substate_decompose(p, q, r);
      double good_mass = 0.0;
      for (std::size_t i : d.good) good_mass += p.p(i);
      c.require(good_mass >= 1.0 - 1.0 / r - slack, "good mass below 1 - 1/r");
      c.require(total_variation(p, d.p_tilde) <= 2.0 / r + slack, "l1 shift above 2/r");
      for (std::size_t i = 0; i < n && c.ok; ++i)
        c.require(d.alpha * d.p_tilde.p(i) <= q.p(i) + slack, "alpha p_tilde exceeds Q");
      if (!c.ok) return;
    }
  }
}

// --- 2. sampling laws: closed forms + Monte-Carlo twins ------------------
void criterion_sampling(Check& c) {
  RandomStream s(20240602);
  const double tol = 1e-10;
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t n = 2 + t.below(7);
    const auto p = testutil::random_dist(t, n, 0.1);
    const auto q = testutil::random_dist(t, n, 0.2);

    // One-shot rejection pair at the exact domination exponent.
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (p.p(i) > 0.0) a = std::max(a, std::log2(p.p(i) / q.p(i)));
    a = std::max(a, 0.0) + 1e-9;
    const auto rp = make_rejection_pair(p, q, a);
    c.require(std::abs(rp.accept_rate() - std::exp2(-a)) <= tol, "accept rate != 2^-a");
    const FiniteDist cond = rp.conditional_given_accept();
    for (std::size_t i = 0; i < n; ++i)
      c.require(std::abs(cond.p(i) - p.p(i)) <= tol, "conditional law != P");

    // Las-Vegas sampler: stop law and output law vs the geometric series.
    const auto lv = make_las_vegas_sampler(p, q, 1.0);
    const long double q_stop = lv.stop_rate();
    c.require(std::abs(static_cast<double>(q_stop) - std::exp2(-lv.a)) <= tol,
              "stop rate != 2^-a");
    long double e_r = 0.0L, tail = 1.0L;
    std::vector<long double> law(n, 0.0L);
    long double abort = 0.0L;
    for (int r = 1; tail > 1e-16L && r < 4000000; ++r) {
      const long double pr = tail * q_stop;
      e_r += pr * r;
      for (std::size_t i = 0; i < n; ++i)
        law[i] += pr * static_cast<long double>(q.p(i)) * lv.gamma[i] / q_stop;
      long double dummy = 0.0L;
      for (std::size_t i = 0; i < n; ++i)
        dummy += static_cast<long double>(q.p(i)) * lv.beta * (1.0L - lv.gamma[i]);
      abort += pr * dummy / q_stop;
      tail *= (1.0L - q_stop);
    }
    e_r += tail / q_stop * 1.0L;  // residual mass, crude upper cap; tail < 1e-16
    c.require(std::abs(static_cast<double>(e_r) - lv.expected_stop()) <=
                  tol * std::max(1.0, lv.expected_stop()),
              "E[R] != 2^a (series oracle)");
    const auto closed = lv.output_law();
    for (std::size_t i = 0; i < n; ++i)
      c.require(std::abs(closed.probs[i] - static_cast<double>(law[i])) <= tol,
                "output law != series oracle");
    c.require(std::abs(closed.abort - static_cast<double>(abort)) <= tol,
              "abort mass != series oracle");
    std::vector<bool> in_good(n, false);
    for (std::size_t i : lv.good) in_good[i] = true;
    for (std::size_t i = 0; i < n; ++i)
      c.require(std::abs(closed.probs[i] - (in_good[i] ? p.p(i) : 0.0)) <= tol,
                "output law != P on good / 0 off good");
    c.require(std::abs(closed.abort - lv.eps) <= tol, "abort mass != eps");
  }
  if (!c.ok) return;

  // Monte-Carlo twins at 1e5 draws, three-sigma agreement.
  RandomStream ms(20240612);
  const auto p = testutil::random_dist(ms, 5, 0.1);
  const auto q = testutil::random_dist(ms, 5, 0.2);
  double a = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    if (p.p(i) > 0.0) a = std::max(a, std::log2(p.p(i) / q.p(i)));
  a = std::max(a, 0.0) + 1e-9;
  const auto rp = make_rejection_pair(p, q, a);
  const int n_draws = 100000;
  int accepted = 0;
  RandomStream d1 = ms.child(1);
  for (int i = 0; i < n_draws; ++i)
    if (rp.draw(d1).accepted) ++accepted;
  const double band = 3.0 / (2.0 * std::sqrt(static_cast<double>(n_draws)));
  c.require(std::abs(static_cast<double>(accepted) / n_draws - rp.accept_rate()) <= band,
            "rejection-pair Monte Carlo outside 3 sigma");

  const auto lv = make_las_vegas_sampler(p, q, 0.5);
  double mean = 0.0, m2 = 0.0;
  int aborts = 0;
  for (int i = 0; i < n_draws; ++i) {
    RandomStream t = ms.child(1000 + i);
    const auto tr = lv.draw(t, 1u << 22);
    const double r = static_cast<double>(tr.r.value_or(1u << 22));
    mean += r;
    m2 += r * r;
    if (!tr.y.has_value()) ++aborts;
  }
  mean /= n_draws;
  const double var = std::max(0.0, m2 / n_draws - mean * mean);
  c.require(std::abs(mean - lv.expected_stop()) <= 3.0 * std::sqrt(var / n_draws),
            "las-vegas Monte-Carlo stop mean outside 3 sigma");
  c.require(std::abs(static_cast<double>(aborts) / n_draws - lv.eps) <= band,
            "las-vegas Monte-Carlo abort rate outside 3 sigma");
}

// --- 3. information-cost identity + chain rules ----------------------------
void criterion_info_identity(Check& c) {
  RandomStream s(20240603);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t nx = 2 + t.below(7), nm = 2 + t.below(7);
    const JointDist j = testutil::random_joint(
        t, {{"X", testutil::prefixed_range("x", nx)}, {"M", testutil::prefixed_range("m", nm)}},
        0.02);
    const double mi = mutual_information(j, {"X"}, {"M"});
    const FiniteDist marg = j.axis_dist("M");
    double expected = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      const double px = j.axis_mass("X", x);
      if (px <= 0.0) continue;
      expected += px * relative_entropy(j.condition("X", x).axis_dist("M"), marg);
    }
    c.require(std::abs(mi - expected) <= 1e-9, "I(X:M) != E_x S(P_x||P)");

    const JointDist j3 = testutil::random_joint(
        t, {{"X", {"0", "1"}}, {"Y", {"0", "1"}}, {"Z", {"0", "1"}}, {"W", {"0", "1"}}}, 0.01);
    const double lhs = mutual_information(j3, {"X"}, {"Y", "Z"});
    const double rhs = mutual_information(j3, {"X"}, {"Y"}) +
                       conditional_mutual_information(j3, {"X"}, {"Z"}, {"Y"});
    c.require(std::abs(lhs - rhs) <= 1e-9, "chain-rule residual above 1e-9");
    const double cond = conditional_mutual_information(j3, {"X", "Y"}, {"Z"}, {"W"});
    const double drop = mutual_information(j3, {"X", "Y"}, {"Z"}) - j3.entropy_of({"W"});
    c.require(cond >= drop - 1e-9, "conditioning dropped more than H(W)");
  }
}

// --- 4. simultaneous-message compression bounds ----------------------------
void criterion_simul_compress(Check& c) {
  RandomStream s(20240604);
  const double eps = 0.25;
  int done = 0;
  for (int trial = 0; done < 20 && c.ok; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t nx = trial % 2 ? 16 : 8;
    const std::size_t na = trial % 3 ? 8 : 4;
    SimulProtocol pi;
    double a_info = 1.0, b_info = 1.0;
    // Low-information instances keep the sampled supports desk-sized.
    for (double mix = 0.3; a_info > 0.35 || b_info > 0.35; mix *= 0.6) {
      RandomStream g = t.child(static_cast<std::uint64_t>(mix * 1e6));
      pi = testutil::random_simul_protocol(g, nx, nx, na, na, 2, mix);
      a_info = pi.alice_information();
      b_info = pi.bob_information();
    }
    const FunctionSpec f = testutil::random_function(t, nx, nx, 2);
    const auto rep = compress_simultaneous(pi, f, eps, 77000 + trial, 64);

    const double n_bits = std::log2(static_cast<double>(nx));
    const double bound_a = (3.0 * rep.a_info + 1.0) / eps + std::log2(n_bits + 1.0) +
                           std::log2(1.0 / (eps * eps * (1.0 - eps))) + 4.0;
    const double bound_b = (3.0 * rep.b_info + 1.0) / eps + std::log2(n_bits + 1.0) +
                           std::log2(1.0 / (eps * eps * (1.0 - eps))) + 4.0;
    c.require(static_cast<double>(rep.alice_bits) <= bound_a, "alice bits exceed the formula");
    c.require(static_cast<double>(rep.bob_bits) <= bound_b, "bob bits exceed the formula");
    c.require(3 * rep.good_a.size() >= 2 * nx, "good_A below two thirds");
    c.require(3 * rep.good_b.size() >= 2 * nx, "good_B below two thirds");
    c.require(rep.error_on_good <= rep.base_worst_error + 4.0 * eps + 1e-9,
              "error on the good rectangle above delta + 4 eps");
    ++done;
  }
}

// --- 5. round-by-round compression bounds ----------------------------------
void criterion_round_compress(Check& c) {
  RandomStream s(20240605);
  int exhausted = 0;
  int runs = 0;
  for (int trial = 0; trial < 10 && c.ok; ++trial) {
    RandomStream t = s.child(trial);
    testutil::ProtoConfig cfg;
    cfg.nx = trial % 2 ? 8 : 4;
    cfg.ny = cfg.nx;
    cfg.nz = 2;
    const std::size_t k = 1 + trial % 3;
    cfg.alphabet_sizes.assign(k, trial % 2 ? 4 : 2);
    cfg.owners.clear();
    for (std::size_t i = 0; i < k; ++i)
      cfg.owners.push_back(i % 2 ? Owner::bob : Owner::alice);
    cfg.mix = 0.35;
    const ProtocolTree pi = testutil::random_protocol(t, cfg);
    const FunctionSpec f = testutil::random_function(t, cfg.nx, cfg.ny, 2);
    const JointDist mu = testutil::uniform_mu(cfg.nx, cfg.ny);

    for (double eps : {0.1, 0.25}) {
      const auto rep = compress_multiround(pi, f, mu, eps, 1u << 20, 64, 88000 + trial);
      ++runs;
      if (rep.budget_exhausted) ++exhausted;
      const double cap =
          2.0 * k * (rep.a_total + 1.0) / (eps * eps) + 2.0 * k / eps;
      c.require(static_cast<double>(rep.comm_bits) <= cap + 1e-9,
                "communication exceeds 2k(a+1)/eps^2 + 2k/eps");
      if (!rep.budget_exhausted)
        c.require(rep.dist_error <= rep.base_dist_error + 2.0 * eps + 1e-9,
                  "distributional error above delta + 2 eps");
      double ledger = 0.0;
      for (double ai : rep.per_round_info) ledger += ai;
      c.require(std::abs(ledger - information_cost(pi, mu)) <= 1e-9,
                "per-round divergence ledger misses I(XY:T)");
    }
  }
  c.require(static_cast<double>(exhausted) / runs < 0.05,
            "coin-budget exhaustion rate at or above 5%");
}

// --- 6. superadditivity of conditional information cost --------------------
void criterion_superadditivity(Check& c) {
  RandomStream s(20240606);
  testutil::ProtoConfig cfg;
  cfg.nx = 2;
  cfg.ny = 2;
  cfg.nz = 2;
  cfg.alphabet_sizes = {2, 2};
  cfg.mix = 0.7;
  const ProtocolTree pi = testutil::random_protocol(s, cfg);
  const Axis ax{"X", pi.x_range()};
  const Axis ay{"Y", pi.y_range()};
  RandomStream t0 = s.child(1);
  const JointDist c0 =
      JointDist::product(ax, testutil::random_dist(t0, 2), ay, testutil::random_dist(t0, 2));
  RandomStream t1 = s.child(2);
  const JointDist c1 =
      JointDist::product(ax, testutil::random_dist(t1, 2), ay, testutil::random_dist(t1, 2));
  const PartitionedInput pm(FiniteDist({"d0", "d1"}, {0.35, 0.65}), {c0, c1});
  for (std::size_t m : {std::size_t{2}, std::size_t{3}}) {
    const auto rep = superadditivity_experiment(pi, pm, m);
    c.require(std::abs(rep.residual) <= 1e-9,
              "tensor conditional cost is not m times the single copy");
  }
}

// --- 7. direct-sum arithmetic vs independent oracle -------------------------
void criterion_bound_arithmetic(Check& c) {
  RandomStream s(20240607);
  for (int trial = 0; trial < 120 && c.ok; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t m = 1 + t.below(16);
    const std::size_t k = 1 + t.below(5);
    const double eps = 0.05 + 0.9 * t.uniform();
    const double delta = t.uniform();
    const double cv = 200.0 * t.uniform();
    const double h = 3.0 * t.uniform();
    const auto r = multiround_bound(m, k, eps, delta, cv, h);
    const double oracle =
        static_cast<double>(m) * eps * eps * cv / (2.0 * static_cast<double>(k)) -
        static_cast<double>(m) * (2.0 + h);
    c.require(std::abs(r.bound - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)),
              "multi-round bound differs from the oracle");
    c.require(r.vacuous == (r.bound <= 0.0), "vacuous flag wrong");

    const double n = 1.0 + 20.0 * t.uniform();
    const double rt = 300.0 * t.uniform();
    const auto sr = simul_bound(m, n, eps, delta, rt);
    const double log_term = std::log2(n + 1.0);
    const double eps_term = std::log2(1.0 / (eps * eps * (1.0 - eps)));
    const double oracle2 = static_cast<double>(m) * eps / 3.0 *
                           (rt - 2.0 * log_term - 2.0 * eps_term - 2.0 / eps - 8.0);
    c.require(std::abs(sr.bound - oracle2) <= 1e-12 * std::max(1.0, std::abs(oracle2)),
              "simultaneous bound differs from the oracle");
  }
}

// --- 8. random-basis ensembles ---------------------------------------------
void criterion_ensemble(Check& c) {
  using namespace ccomp::quantum;
  RandomStream s(20240608);
  const std::vector<std::array<int, 3>> params{{64, 1, 16}, {256, 2, 64}};
  for (const auto& [m, k_exp, n] : params) {
    RandomStream t = s.child(static_cast<std::uint64_t>(m));
    const QuantumEnsemble ens = build_ensemble(m, k_exp, n, t);
    const Matrix mean = ens.mean_state();
    c.require((mean - Matrix::Identity(m, m) / m).cwiseAbs().maxCoeff() <= 1e-8,
              "mean state deviates from I/m beyond 1e-8");
    for (int l = 0; l < n && c.ok; ++l) {
      const double tr = (ens.projector(l) * ens.state(l)).trace().real();
      c.require(std::abs(tr - 1.0) <= 1e-9, "Tr M_l rho_l deviates from 1 beyond 1e-9");
      const double srel = quantum_relative_entropy(ens.state(l), mean);
      c.require(std::abs(srel - k_exp) <= 1e-6,
                "S(rho_l || mean) deviates from k beyond 1e-6");
    }
    if (!c.ok) return;
  }
}

// --- 9. concentration tails -------------------------------------------------
void criterion_tails(Check& c) {
  using namespace ccomp::quantum;
  RandomStream s(20240609);
  RandomStream s1 = s.child(1);
  for (const auto& r : overlap_tails(512, 2, 4, 10000, s1))
    c.require(r.empirical <= r.analytic_bound + r.band,
              r.event + " frequency above its bound");
  RandomStream s2 = s.child(2);
  const auto ortho = orthopair_tail(512, 2, 4, 10000, s2);
  c.require(ortho.empirical <= ortho.analytic_bound + ortho.band,
            "orthonormal-pair frequency above its bound");
  RandomStream s3 = s.child(3);
  const auto energy = subspace_energy(1024, 2, 4, 10000, s3);
  c.require(energy.empirical <= energy.analytic_bound + energy.band,
            "subspace-energy frequency above its bound");
}

// --- 10. CLI determinism -----------------------------------------------------
int run_cli(const std::string& args) {
  const std::string cmd = g_cli_bin + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_cli_determinism(Check& c) {
  if (g_cli_bin.empty()) {
    c.require(false, "CLI binary path not supplied (argv[1])");
    return;
  }
  const std::string dir = "acceptance_cli";
  std::filesystem::create_directories(dir);

  RandomStream s(20240610);
  testutil::ProtoConfig cfg;
  cfg.mix = 0.4;
  const ProtocolTree pi = testutil::random_protocol(s, cfg);
  const FunctionSpec f = testutil::random_function(s, cfg.nx, cfg.ny, 2);
  const JointDist mu = testutil::uniform_mu(cfg.nx, cfg.ny);
  io::write_file_atomic(dir + "/p.json", io::to_json(pi).dump(2));
  io::write_file_atomic(dir + "/f.json", io::to_json(f).dump(2));
  io::write_file_atomic(dir + "/mu.json", io::to_json(mu).dump(2));

  const std::string out = dir + "/rounds.json";
  const std::string cmd = "compress --mode rounds --protocol " + dir + "/p.json --function " +
                          dir + "/f.json --mu " + dir + "/mu.json" +
                          " --eps 0.25 --budget 16 --seed 12345 --out " + out;
  c.require(run_cli(cmd) == 0, "rounds compression run failed");
  const std::string first = slurp(out);
  c.require(run_cli(cmd) == 0, "rounds compression re-run failed");
  c.require(slurp(out) == first, "re-run produced different bytes (rounds report)");

  const std::string csv = dir + "/tails.csv";
  const std::string qcmd = "quantum tails --m 128 --d 2 --l 4 --trials 500 --seed 777 --out " + csv;
  c.require(run_cli(qcmd) == 0, "quantum tails run failed");
  const std::string csv1 = slurp(csv);
  c.require(run_cli(qcmd) == 0, "quantum tails re-run failed");
  c.require(slurp(csv) == csv1, "re-run produced different bytes (tails CSV)");

  const std::string bout = dir + "/bound.json";
  const std::string bcmd =
      "bounds --theorem simul --copies 3 --eps 0.2 --delta 0.1 --r-tilde 64 --n-bits 4 --out " +
      bout;
  c.require(run_cli(bcmd) == 0, "bounds run failed");
  const std::string b1 = slurp(bout);
  c.require(run_cli(bcmd) == 0, "bounds re-run failed");
  c.require(slurp(bout) == b1, "re-run produced different bytes (bound report)");
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<void(Check&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_bin = argv[1];
  const std::vector<Criterion> criteria{
      {"substate inequalities over 1e4 seeded pairs, r in {1,2,4}", 5.0, criterion_substate},
      {"sampling laws: closed forms, series oracle, 1e5-draw Monte Carlo", 60.0,
       criterion_sampling},
      {"information-cost identity and chain rules on 1e3 joints", 10.0,
       criterion_info_identity},
      {"simultaneous compression bounds on 20 protocols", 300.0, criterion_simul_compress},
      {"round compression bounds on 20 runs, eps in {0.1, 0.25}", 600.0,
       criterion_round_compress},
      {"superadditivity of conditional information cost, m in {2,3}", 30.0,
       criterion_superadditivity},
      {"direct-sum bound arithmetic vs oracle on 240 points", 1.0,
       criterion_bound_arithmetic},
      {"ensemble identities at (64,1,16) and (256,2,64)", 30.0, criterion_ensemble},
      {"concentration tails at m=512 and m=1024, 1e4 trials", 300.0, criterion_tails},
      {"CLI determinism: byte-identical re-runs", 120.0, criterion_cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      criteria[i].fn(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criteria[i].budget_seconds) {
      check.ok = false;
      check.detail = "runtime budget exceeded";
    }
    std::printf("[%s] %2zu. %s  (%.1fs/%.0fs)%s%s\n", check.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), elapsed, criteria[i].budget_seconds,
                check.ok ? "" : " -- ", check.ok ? "" : check.detail.c_str());
    if (!check.ok) ++failures;
  }
  return failures;
}
