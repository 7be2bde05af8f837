// ccompress: batch front-end for the protocol-compression laboratory.
// Subcommands load protocol/function/distribution files, run compression or
// experiments, and write machine-readable reports. Every output embeds the
// tool version, the full config echo and the root seed; re-running a command
// with the same config reproduces the output byte for byte.

#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ccomp/direct_sum.hpp"
#include "ccomp/exceptions.hpp"
#include "ccomp/json_io.hpp"
#include "ccomp/quantum.hpp"
#include "ccomp/quantum_io.hpp"
#include "ccomp/round_compress.hpp"
#include "ccomp/simul_compress.hpp"

namespace {

constexpr const char* kVersion = "ccompress 1.0.0";

using ccomp::io::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t config_seed(const json& config, const std::optional<std::uint64_t>& given) {
  if (given) return *given;
  return ccomp::fnv1a(config.dump());
}

void write_json_report(const std::string& path, const json& config, std::uint64_t seed,
                       json result) {
  json out{{"tool_version", kVersion}, {"config", config}, {"seed", seed},
           {"result", std::move(result)}};
  ccomp::io::write_file_atomic(path, out.dump(2) + "\n");
}

std::string csv_header(const json& config, std::uint64_t seed) {
  std::ostringstream os;
  os << "# tool_version=" << kVersion << "\n";
  os << "# config=" << config.dump() << "\n";
  os << "# seed=" << seed << "\n";
  return os.str();
}

void append_tail_row(std::ostringstream& os, const ccomp::quantum::TailReport& r,
                     std::uint64_t seed) {
  os << r.m << "," << r.d << "," << r.l << "," << r.event << "," << fmt17(r.threshold) << ","
     << fmt17(r.analytic_bound) << "," << fmt17(r.empirical) << "," << fmt17(r.band) << ","
     << r.trials << "," << seed << "," << (r.hypotheses_ok ? "ok" : "flagged") << "\n";
}

int cmd_info_cost(const std::string& protocol_path, const std::string& mu_path,
                  const std::string& function_path, const std::string& partition_path,
                  const std::string& out_path, std::optional<std::uint64_t> seed_opt) {
  json config{{"command", "info-cost"},
              {"protocol", protocol_path},
              {"mu", mu_path},
              {"function", function_path},
              {"partition", partition_path},
              {"out", out_path}};
  const std::uint64_t seed = config_seed(config, seed_opt);
  config["seed"] = seed;

  const ccomp::ProtocolTree pi =
      ccomp::io::protocol_from_json(ccomp::io::load_json_file(protocol_path));
  const ccomp::JointDist mu = ccomp::io::joint_from_json(ccomp::io::load_json_file(mu_path));
  const ccomp::FunctionSpec f =
      ccomp::io::function_from_json(ccomp::io::load_json_file(function_path));

  json result;
  result["information_cost"] = ccomp::information_cost(pi, mu);
  result["communication_cost"] = pi.communication_cost();
  result["error_report"] = ccomp::io::to_json(ccomp::evaluate_error(pi, f, mu));
  if (!partition_path.empty()) {
    const ccomp::PartitionedInput pm =
        ccomp::io::partition_from_json(ccomp::io::load_json_file(partition_path));
    result["conditional_information_cost"] = ccomp::conditional_information_cost(pi, pm);
  } else {
    result["conditional_information_cost"] = nullptr;
  }
  write_json_report(out_path, config, seed, std::move(result));
  return 0;
}

int cmd_compress(const std::string& mode, const std::string& protocol_path,
                 const std::string& function_path, const std::string& mu_path, double eps,
                 std::size_t budget, std::uint64_t tmax, const std::string& out_path,
                 std::optional<std::uint64_t> seed_opt) {
  json config{{"command", "compress"}, {"mode", mode},        {"protocol", protocol_path},
              {"function", function_path}, {"mu", mu_path},   {"eps", eps},
              {"budget", budget},      {"tmax", tmax},        {"out", out_path}};
  const std::uint64_t seed = config_seed(config, seed_opt);
  config["seed"] = seed;

  const ccomp::FunctionSpec f =
      ccomp::io::function_from_json(ccomp::io::load_json_file(function_path));
  if (mode == "simul") {
    const ccomp::SimulProtocol pi =
        ccomp::io::simul_from_json(ccomp::io::load_json_file(protocol_path));
    const ccomp::SimulCompressionReport rep =
        ccomp::compress_simultaneous(pi, f, eps, seed, budget);
    write_json_report(out_path, config, seed, ccomp::io::to_json(rep));
    return 0;
  }
  if (mode == "rounds") {
    const ccomp::ProtocolTree pi =
        ccomp::io::protocol_from_json(ccomp::io::load_json_file(protocol_path));
    const ccomp::JointDist mu = ccomp::io::joint_from_json(ccomp::io::load_json_file(mu_path));
    const ccomp::MultiCompressionReport rep =
        ccomp::compress_multiround(pi, f, mu, eps, tmax, budget, seed);
    write_json_report(out_path, config, seed, ccomp::io::to_json(rep));
    return rep.budget_exhausted ? 3 : 0;
  }
  throw ccomp::ParseError("compress: mode must be simul|rounds");
}

int cmd_bounds(const std::string& theorem, std::size_t copies, std::size_t rounds, double eps,
               double delta, double c_value, double h_kappa, double r_tilde, double n_bits,
               const std::string& out_path, std::optional<std::uint64_t> seed_opt) {
  json config{{"command", "bounds"}, {"theorem", theorem}, {"copies", copies},
              {"rounds", rounds},    {"eps", eps},         {"delta", delta},
              {"c_value", c_value},  {"h_kappa", h_kappa}, {"r_tilde", r_tilde},
              {"n_bits", n_bits},    {"out", out_path}};
  const std::uint64_t seed = config_seed(config, seed_opt);
  config["seed"] = seed;

  ccomp::BoundReport rep;
  if (theorem == "multiround") {
    rep = ccomp::multiround_bound(copies, rounds, eps, delta, c_value, h_kappa);
  } else if (theorem == "simul") {
    rep = ccomp::simul_bound(copies, n_bits, eps, delta, r_tilde);
  } else {
    throw ccomp::ParseError("bounds: theorem must be multiround|simul");
  }
  write_json_report(out_path, config, seed, ccomp::io::to_json(rep));
  return 0;
}

int cmd_quantum_tails(int m, int d, int l, int trials, const std::string& out_path,
                      std::optional<std::uint64_t> seed_opt) {
  json config{{"command", "quantum-tails"}, {"m", m},          {"d", d},
              {"l", l},                     {"trials", trials}, {"out", out_path}};
  const std::uint64_t seed = config_seed(config, seed_opt);
  config["seed"] = seed;

  ccomp::RandomStream root(seed);
  std::ostringstream os;
  os << csv_header(config, seed);
  os << "m,d,l,event,threshold,analytic_bound,empirical_freq,band,trials,seed,hypotheses\n";
  ccomp::RandomStream s1 = root.child(1);
  for (const auto& r : ccomp::quantum::overlap_tails(m, d, l, trials, s1))
    append_tail_row(os, r, seed);
  ccomp::RandomStream s2 = root.child(2);
  append_tail_row(os, ccomp::quantum::orthopair_tail(m, d, l, trials, s2), seed);
  ccomp::RandomStream s3 = root.child(3);
  append_tail_row(os, ccomp::quantum::subspace_energy(m, d, l, trials, s3), seed);
  ccomp::io::write_file_atomic(out_path, os.str());
  return 0;
}

int cmd_quantum_ensemble(int m, int k_exp, int n, const std::string& out_path,
                         std::optional<std::uint64_t> seed_opt) {
  json config{{"command", "quantum-ensemble"}, {"m", m}, {"k_exp", k_exp}, {"n", n},
              {"out", out_path}};
  const std::uint64_t seed = config_seed(config, seed_opt);
  config["seed"] = seed;

  ccomp::RandomStream root(seed);
  const ccomp::quantum::QuantumEnsemble ens = ccomp::quantum::build_ensemble(m, k_exp, n, root);
  // Verify the construction identities before saving.
  json checks;
  double worst_tr = 0.0;
  for (int l = 0; l < ens.n; ++l) {
    const double tr = (ens.projector(l) * ens.state(l)).trace().real();
    worst_tr = std::max(worst_tr, std::abs(tr - 1.0));
  }
  checks["max_abs_tr_deviation"] = worst_tr;
  const ccomp::quantum::Matrix mean = ens.mean_state();
  checks["mean_state_deviation"] =
      (mean - ccomp::quantum::Matrix::Identity(m, m) / m).cwiseAbs().maxCoeff();
  double worst_s = 0.0;
  for (int l = 0; l < ens.n; ++l)
    worst_s = std::max(worst_s, std::abs(ccomp::quantum::quantum_relative_entropy(
                                             ens.state(l), mean) -
                                         k_exp));
  checks["max_abs_entropy_deviation"] = worst_s;

  json result{{"checks", checks}, {"ensemble", ccomp::io::to_json(ens)}};
  write_json_report(out_path, config, seed, std::move(result));
  return 0;
}

int cmd_quantum_incompress(int m, int k_exp, int n, int d, int samples,
                           const std::string& out_path,
                           std::optional<std::uint64_t> seed_opt) {
  json config{{"command", "quantum-incompress"},
              {"m", m},
              {"k_exp", k_exp},
              {"n", n},
              {"d", d},
              {"samples", samples},
              {"out", out_path}};
  const std::uint64_t seed = config_seed(config, seed_opt);
  config["seed"] = seed;

  ccomp::RandomStream root(seed);
  ccomp::RandomStream builder = root.child(1);
  const ccomp::quantum::QuantumEnsemble ens =
      ccomp::quantum::build_ensemble(m, k_exp, n, builder);
  ccomp::RandomStream sampler = root.child(2);
  const ccomp::quantum::IncompressReport rep =
      ccomp::quantum::incompressibility_trial(ens, d, samples, sampler);

  std::ostringstream os;
  os << csv_header(config, seed);
  os << "m,d,k_exp,n,subspace,defeated_fraction,seed\n";
  for (std::size_t i = 0; i < rep.haar_fractions.size(); ++i)
    os << rep.m << "," << rep.d << "," << rep.k_exp << "," << rep.n << ",haar" << i << ","
       << fmt17(rep.haar_fractions[i]) << "," << seed << "\n";
  os << rep.m << "," << rep.d << "," << rep.k_exp << "," << rep.n << ",adversarial,"
     << fmt17(rep.adversarial_fraction) << "," << seed << "\n";
  ccomp::io::write_file_atomic(out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"protocol compression laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::function<int()> action;
  std::optional<std::uint64_t> seed_opt;

  std::string protocol_path, mu_path, function_path, partition_path, out_path = "report.json";
  std::string mode = "rounds", theorem = "multiround", format = "json";
  double eps = 0.25, delta = 1.0 / 3.0;
  double c_value = 0.0, h_kappa = 0.0, r_tilde = 0.0, n_bits = 1.0;
  std::size_t copies = 1, rounds = 1, budget = 64;
  std::uint64_t tmax = 1ull << 20;
  int qm = 64, qd = 2, ql = 4, qk = 1, qn = 16, trials = 10000, samples = 8;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { seed_opt = v; },
        "root seed (default: derived from the config hash)");
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output file path");
    cmd->add_option("--format", format, "output format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}));
    add_seed(cmd);
  };

  CLI::App* info = app.add_subcommand("info-cost", "information/communication cost of a protocol");
  info->add_option("--protocol", protocol_path, "protocol tree JSON")->required();
  info->add_option("--mu", mu_path, "input distribution JSON")->required();
  info->add_option("--function", function_path, "task JSON")->required();
  info->add_option("--partition", partition_path, "mixture-of-products JSON (optional)");
  add_common(info);
  info->callback([&] {
    action = [&] {
      return cmd_info_cost(protocol_path, mu_path, function_path, partition_path, out_path,
                           seed_opt);
    };
  });

  CLI::App* comp = app.add_subcommand("compress", "compress a protocol");
  comp->add_option("--mode", mode, "simul|rounds")->required();
  comp->add_option("--protocol", protocol_path, "protocol JSON")->required();
  comp->add_option("--function", function_path, "task JSON")->required();
  comp->add_option("--mu", mu_path, "input distribution JSON (rounds mode)");
  comp->add_option("--eps", eps, "error budget per stage");
  comp->add_option("--budget", budget, "retry / coin-realization budget");
  comp->add_option("--tmax", tmax, "per-stream materialization cap");
  add_common(comp);
  comp->callback([&] {
    action = [&] {
      return cmd_compress(mode, protocol_path, function_path, mu_path, eps, budget, tmax,
                          out_path, seed_opt);
    };
  });

  CLI::App* bounds = app.add_subcommand("bounds", "direct-sum lower-bound arithmetic");
  bounds->add_option("--theorem", theorem, "multiround|simul")->required();
  bounds->add_option("--copies", copies, "number of copies m");
  bounds->add_option("--rounds", rounds, "round count k");
  bounds->add_option("--eps", eps, "epsilon");
  bounds->add_option("--delta", delta, "delta");
  bounds->add_option("--c-value", c_value, "distributional complexity input");
  bounds->add_option("--h-kappa", h_kappa, "partition entropy H(kappa)");
  bounds->add_option("--r-tilde", r_tilde, "restricted complexity input (simul)");
  bounds->add_option("--n-bits", n_bits, "input length n in bits (simul)");
  add_common(bounds);
  bounds->callback([&] {
    action = [&] {
      return cmd_bounds(theorem, copies, rounds, eps, delta, c_value, h_kappa, r_tilde, n_bits,
                        out_path, seed_opt);
    };
  });

  CLI::App* q = app.add_subcommand("quantum", "desk-scale quantum experiments");
  q->require_subcommand(1);
  CLI::App* qt = q->add_subcommand("tails", "concentration tail experiments (CSV)");
  qt->add_option("--m", qm, "ambient dimension");
  qt->add_option("--d", qd, "subspace dimension");
  qt->add_option("--l", ql, "co-dimension factor (projector rank m/l)");
  qt->add_option("--trials", trials, "Monte-Carlo trials");
  add_common(qt);
  qt->callback([&] {
    action = [&] { return cmd_quantum_tails(qm, qd, ql, trials, out_path, seed_opt); };
  });
  CLI::App* qe = q->add_subcommand("ensemble", "build + verify a random-basis ensemble (JSON)");
  qe->add_option("--m", qm, "ambient dimension");
  qe->add_option("--k-exp", qk, "per-state divergence k");
  qe->add_option("--n", qn, "number of states");
  add_common(qe);
  qe->callback([&] {
    action = [&] { return cmd_quantum_ensemble(qm, qk, qn, out_path, seed_opt); };
  });
  CLI::App* qi = q->add_subcommand("incompress", "defeated-measurement fractions (CSV)");
  qi->add_option("--m", qm, "ambient dimension");
  qi->add_option("--k-exp", qk, "per-state divergence k");
  qi->add_option("--n", qn, "number of states");
  qi->add_option("--d", qd, "subspace dimension");
  qi->add_option("--samples", samples, "sampled subspaces");
  add_common(qi);
  qi->callback([&] {
    action = [&] { return cmd_quantum_incompress(qm, qk, qn, qd, samples, out_path, seed_opt); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const ccomp::BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const ccomp::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
