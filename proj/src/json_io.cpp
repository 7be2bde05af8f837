#include "ccomp/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccomp/exceptions.hpp"

namespace ccomp::io {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

template <typename Fn>
auto wrap(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const FiniteDist& d) {
  return json{{"alphabet", d.alphabet()}, {"probs", d.probs()}};
}

FiniteDist dist_from_json(const json& j) {
  return wrap("distribution", [&] {
    return FiniteDist(j.at("alphabet").get<std::vector<std::string>>(),
                      j.at("probs").get<std::vector<double>>());
  });
}

json to_json(const JointDist& d) {
  json axes = json::array();
  for (const auto& ax : d.axes()) axes.push_back({{"name", ax.name}, {"range", ax.range}});
  return json{{"axes", axes}, {"probs", d.probs()}};
}

JointDist joint_from_json(const json& j) {
  return wrap("joint distribution", [&] {
    std::vector<Axis> axes;
    for (const auto& aj : j.at("axes"))
      axes.push_back({aj.at("name").get<std::string>(),
                      aj.at("range").get<std::vector<std::string>>()});
    return JointDist(std::move(axes), j.at("probs").get<std::vector<double>>());
  });
}

json to_json(const PartitionedInput& p) {
  json comps = json::array();
  for (const auto& c : p.components()) comps.push_back(to_json(c));
  return json{{"kappa", to_json(p.kappa())}, {"components", comps}};
}

PartitionedInput partition_from_json(const json& j) {
  return wrap("partitioned input", [&] {
    std::vector<JointDist> comps;
    for (const auto& cj : j.at("components")) comps.push_back(joint_from_json(cj));
    return PartitionedInput(dist_from_json(j.at("kappa")), std::move(comps));
  });
}

json to_json(const FunctionSpec& f) {
  json accept = json::object();
  for (std::size_t x = 0; x < f.x_range.size(); ++x) {
    for (std::size_t y = 0; y < f.y_range.size(); ++y) {
      json zs = json::array();
      for (std::size_t z : f.accept[x][y]) zs.push_back(f.z_range[z]);
      accept[f.x_range[x] + "," + f.y_range[y]] = zs;
    }
  }
  return json{{"x", f.x_range}, {"y", f.y_range}, {"z", f.z_range}, {"accept", accept}};
}

FunctionSpec function_from_json(const json& j) {
  return wrap("function spec", [&] {
    FunctionSpec f;
    f.x_range = j.at("x").get<std::vector<std::string>>();
    f.y_range = j.at("y").get<std::vector<std::string>>();
    f.z_range = j.at("z").get<std::vector<std::string>>();
    auto find = [](const std::vector<std::string>& range, const std::string& s) {
      for (std::size_t i = 0; i < range.size(); ++i)
        if (range[i] == s) return i;
      throw ParseError("function spec: unknown symbol '" + s + "'");
    };
    f.accept.assign(f.x_range.size(),
                    std::vector<std::set<std::size_t>>(f.y_range.size()));
    for (const auto& [key, zs] : j.at("accept").items()) {
      const auto parts = split(key, ',');
      if (parts.size() != 2) throw ParseError("function spec: bad accept key '" + key + "'");
      const std::size_t x = find(f.x_range, parts[0]);
      const std::size_t y = find(f.y_range, parts[1]);
      for (const auto& zj : zs) f.accept[x][y].insert(find(f.z_range, zj.get<std::string>()));
    }
    f.validate();
    return f;
  });
}

json to_json(const ProtocolTree& p) {
  json owners = json::array();
  for (std::size_t i = 0; i < p.rounds(); ++i)
    owners.push_back(p.owner(i) == Owner::alice ? "alice" : "bob");
  json alphabets = json::array();
  json bit_lengths = json::array();
  for (std::size_t i = 0; i < p.rounds(); ++i) {
    alphabets.push_back(p.alphabet(i));
    json lens = json::array();
    for (std::size_t s = 0; s < p.alphabet(i).size(); ++s) lens.push_back(p.bit_length(i, s));
    bit_lengths.push_back(lens);
  }
  json policy = json::object();
  for (const auto& [key, probs] : p.policy_table()) {
    const auto& [round, input, prefix] = key;
    std::vector<std::string> prefix_syms;
    for (std::size_t r = 0; r < prefix.size(); ++r)
      prefix_syms.push_back(p.alphabet(r)[prefix[r]]);
    const std::string input_sym = p.owner_range_of(round)[input];
    policy[std::to_string(round) + "|" + input_sym + "|" + join(prefix_syms, ',')] = probs;
  }
  json output = json::object();
  for (const auto& [t, z] : p.output_table()) output[p.transcript_name(t)] = z;
  return json{{"rounds", p.rounds()},   {"owners", owners},
              {"x_range", p.x_range()}, {"y_range", p.y_range()},
              {"alphabets", alphabets}, {"policy", policy},
              {"output", output},       {"bit_lengths", bit_lengths}};
}

ProtocolTree protocol_from_json(const json& j) {
  return wrap("protocol", [&] {
    const auto owners_s = j.at("owners").get<std::vector<std::string>>();
    std::vector<Owner> owners;
    for (const auto& o : owners_s) {
      if (o != "alice" && o != "bob") throw ParseError("protocol: owner must be alice|bob");
      owners.push_back(o == "alice" ? Owner::alice : Owner::bob);
    }
    if (j.contains("rounds") && j.at("rounds").get<std::size_t>() != owners.size())
      throw ParseError("protocol: rounds field disagrees with owners length");
    ProtocolTree p(j.at("x_range").get<std::vector<std::string>>(),
                   j.at("y_range").get<std::vector<std::string>>(), owners,
                   j.at("alphabets").get<std::vector<std::vector<std::string>>>());
    auto index_in = [](const std::vector<std::string>& range, const std::string& s) {
      for (std::size_t i = 0; i < range.size(); ++i)
        if (range[i] == s) return i;
      throw ParseError("protocol: unknown symbol '" + s + "'");
    };
    for (const auto& [key, probs] : j.at("policy").items()) {
      const auto parts = split(key, '|');
      if (parts.size() != 3) throw ParseError("protocol: bad policy key '" + key + "'");
      const std::size_t round = std::stoul(parts[0]);
      if (round >= p.rounds()) throw ParseError("protocol: policy round out of range");
      const std::size_t input = index_in(p.owner_range_of(round), parts[1]);
      Transcript prefix;
      if (!parts[2].empty()) {
        const auto syms = split(parts[2], ',');
        for (std::size_t r = 0; r < syms.size(); ++r)
          prefix.push_back(index_in(p.alphabet(r), syms[r]));
      }
      p.set_policy(round, input, prefix, probs.get<std::vector<double>>());
    }
    for (const auto& [key, z] : j.at("output").items()) {
      const auto syms = split(key, ',');
      Transcript t;
      for (std::size_t r = 0; r < syms.size(); ++r)
        t.push_back(index_in(p.alphabet(r), syms[r]));
      p.set_output(t, z.get<std::string>());
    }
    if (j.contains("bit_lengths")) {
      const auto lens = j.at("bit_lengths").get<std::vector<std::vector<std::int64_t>>>();
      for (std::size_t i = 0; i < lens.size(); ++i) p.set_bit_lengths(i, lens[i]);
    }
    return p;
  });
}

json to_json(const SimulProtocol& p) {
  json referee = json::object();
  for (std::size_t ma = 0; ma < p.alice_alphabet.size(); ++ma)
    for (std::size_t mb = 0; mb < p.bob_alphabet.size(); ++mb)
      referee[p.alice_alphabet[ma] + "," + p.bob_alphabet[mb]] = p.referee[ma][mb];
  return json{{"x_range", p.x_range},
              {"y_range", p.y_range},
              {"alice_alphabet", p.alice_alphabet},
              {"bob_alphabet", p.bob_alphabet},
              {"alice_policy", p.alice_policy},
              {"bob_policy", p.bob_policy},
              {"referee", referee}};
}

SimulProtocol simul_from_json(const json& j) {
  return wrap("simultaneous protocol", [&] {
    SimulProtocol p;
    p.x_range = j.at("x_range").get<std::vector<std::string>>();
    p.y_range = j.at("y_range").get<std::vector<std::string>>();
    p.alice_alphabet = j.at("alice_alphabet").get<std::vector<std::string>>();
    p.bob_alphabet = j.at("bob_alphabet").get<std::vector<std::string>>();
    p.alice_policy = j.at("alice_policy").get<std::vector<std::vector<double>>>();
    p.bob_policy = j.at("bob_policy").get<std::vector<std::vector<double>>>();
    auto index_in = [](const std::vector<std::string>& range, const std::string& s) {
      for (std::size_t i = 0; i < range.size(); ++i)
        if (range[i] == s) return i;
      throw ParseError("simultaneous protocol: unknown symbol '" + s + "'");
    };
    p.referee.assign(p.alice_alphabet.size(),
                     std::vector<std::string>(p.bob_alphabet.size()));
    std::size_t filled = 0;
    for (const auto& [key, z] : j.at("referee").items()) {
      const auto parts = split(key, ',');
      if (parts.size() != 2) throw ParseError("simultaneous protocol: bad referee key");
      p.referee[index_in(p.alice_alphabet, parts[0])][index_in(p.bob_alphabet, parts[1])] =
          z.get<std::string>();
      ++filled;
    }
    if (filled != p.alice_alphabet.size() * p.bob_alphabet.size())
      throw ParseError("simultaneous protocol: referee table not total");
    p.validate();
    return p;
  });
}

json to_json(const SubstateDecomposition& d) {
  json good = json::array();
  for (std::size_t i : d.good) good.push_back(d.p_tilde.alphabet()[i]);
  return json{{"a", d.a},
              {"r", d.r},
              {"good", good},
              {"alpha", d.alpha},
              {"p_tilde", to_json(d.p_tilde)}};
}

json to_json(const ErrorReport& r) {
  json per = json::array();
  for (const auto& [xy, e] : r.per_input)
    per.push_back({{"x", xy.first}, {"y", xy.second}, {"error", e}});
  return json{{"worst_case", r.worst_case},
              {"distributional", r.distributional},
              {"per_input", per}};
}

json to_json(const BoundReport& r) {
  return json{{"m", r.m},
              {"k", r.k},
              {"eps", r.eps},
              {"delta", r.delta},
              {"c_value", r.c_value},
              {"h_kappa", r.h_kappa},
              {"bound", r.bound},
              {"vacuous", r.vacuous},
              {"provenance", r.provenance}};
}

json to_json(const SimulCompressionReport& r) {
  auto support_json = [](const std::map<std::size_t, std::vector<std::size_t>>& sup) {
    json out = json::object();
    for (const auto& [input, positions] : sup) out[std::to_string(input)] = positions;
    return out;
  };
  return json{{"good_a", r.good_a},
              {"good_b", r.good_b},
              {"alice_samples", r.alice_samples},
              {"bob_samples", r.bob_samples},
              {"alice_support", support_json(r.alice_support)},
              {"bob_support", support_json(r.bob_support)},
              {"alice_bits", r.alice_bits},
              {"bob_bits", r.bob_bits},
              {"alice_bits_bound", r.alice_bits_bound},
              {"bob_bits_bound", r.bob_bits_bound},
              {"a_info", r.a_info},
              {"b_info", r.b_info},
              {"error_on_good", r.error_on_good},
              {"base_worst_error", r.base_worst_error},
              {"eps", r.eps},
              {"seed", r.seed},
              {"retries", {r.retries_alice, r.retries_bob}}};
}

json to_json(const MultiCompressionReport& r) {
  json per_round = json::array();
  for (std::size_t i = 0; i < r.per_round_info.size(); ++i) {
    per_round.push_back({{"i", i},
                         {"a_i", r.per_round_info[i]},
                         {"expected_bits", r.per_round_expected_bits[i]},
                         {"abort_prob", r.per_round_abort_prob[i]}});
  }
  return json{{"comm_bits", r.comm_bits},
              {"dist_error", r.dist_error},
              {"bit_cap", r.bit_cap},
              {"a_total", r.a_total},
              {"base_dist_error", r.base_dist_error},
              {"hybrid_error", r.hybrid_error},
              {"target_error", r.target_error},
              {"per_round", per_round},
              {"eps", r.eps},
              {"seed", r.seed},
              {"coin_budget", r.coin_budget},
              {"coin_choice", r.coin_choice},
              {"budget_exhausted", r.budget_exhausted},
              {"final_protocol", to_json(r.final_protocol)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move output into place at '" + path + "'");
}

}  // namespace ccomp::io
