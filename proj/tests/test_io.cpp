#include <doctest.h>

#include <fstream>

#include "ccomp/exceptions.hpp"
#include "ccomp/info_cost.hpp"
#include "ccomp/json_io.hpp"
#include "test_util.hpp"

using namespace ccomp;

TEST_CASE("function spec JSON round trip") {
  const FunctionSpec eq = make_equality(3);
  const auto j = io::to_json(eq);
  const FunctionSpec back = io::function_from_json(j);
  CHECK(back.x_range == eq.x_range);
  CHECK(back.z_range == eq.z_range);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) CHECK(back.accept[x][y] == eq.accept[x][y]);
  CHECK(io::to_json(back).dump() == j.dump());
}

TEST_CASE("protocol tree JSON round trip preserves laws and bit lengths") {
  RandomStream s(233);
  testutil::ProtoConfig cfg;
  cfg.alphabet_sizes = {2, 3};
  ProtocolTree pi = testutil::random_protocol(s, cfg);
  pi.set_bit_lengths(1, {1, 2, 2});
  const auto j = io::to_json(pi);
  const ProtocolTree back = io::protocol_from_json(j);
  CHECK(back.rounds() == pi.rounds());
  for (std::size_t x = 0; x < cfg.nx; ++x) {
    for (std::size_t y = 0; y < cfg.ny; ++y) {
      const auto a = pi.transcript_table(x, y);
      const auto b = back.transcript_table(x, y);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-15));
      }
    }
  }
  CHECK(back.communication_cost() == pi.communication_cost());
  CHECK(io::to_json(back).dump() == j.dump());
}

TEST_CASE("joint and partition round trips") {
  RandomStream s(239);
  const JointDist j = testutil::random_joint(s, {{"X", {"a", "b"}}, {"Y", {"c", "d", "e"}}});
  const JointDist jb = io::joint_from_json(io::to_json(j));
  CHECK(jb.probs() == j.probs());
  CHECK(jb.axes()[1].range == j.axes()[1].range);

  const Axis ax{"X", {"0", "1"}};
  const Axis ay{"Y", {"0", "1"}};
  RandomStream t = s.child(1);
  const JointDist c0 =
      JointDist::product(ax, testutil::random_dist(t, 2), ay, testutil::random_dist(t, 2));
  const PartitionedInput pm(FiniteDist({"d0"}, {1.0}), {c0});
  const PartitionedInput back = io::partition_from_json(io::to_json(pm));
  CHECK(back.mu().probs() == pm.mu().probs());
}

TEST_CASE("simul protocol round trip") {
  RandomStream s(241);
  const SimulProtocol p = testutil::random_simul_protocol(s, 3, 3, 2, 2, 2, 0.7);
  const SimulProtocol back = io::simul_from_json(io::to_json(p));
  CHECK(back.alice_policy == p.alice_policy);
  CHECK(back.referee == p.referee);
}

TEST_CASE("parse errors carry context") {
  CHECK_THROWS_AS(io::load_json_file("/nonexistent/file.json"), ParseError);
  CHECK_THROWS_AS(io::dist_from_json(io::json{{"alphabet", {"a"}}}), ParseError);
  CHECK_THROWS_AS(io::function_from_json(io::json{{"x", {"a"}}}), ParseError);
  const io::json bad_policy{{"owners", {"alice"}},
                            {"x_range", {"x0"}},
                            {"y_range", {"y0"}},
                            {"alphabets", {{"m0"}}},
                            {"policy", {{"0|x9|", {1.0}}}},
                            {"output", io::json::object()}};
  CHECK_THROWS_AS(io::protocol_from_json(bad_policy), ParseError);
}

TEST_CASE("atomic write leaves no temp file and is readable") {
  const std::string path = "test_io_atomic_out.json";
  io::write_file_atomic(path, "{\"ok\":true}\n");
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "{\"ok\":true}\n");
  std::ifstream tmp(path + ".tmp");
  CHECK_FALSE(tmp.good());
  std::remove(path.c_str());
}
