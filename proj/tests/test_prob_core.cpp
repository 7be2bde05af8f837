#include <doctest.h>

#include <cmath>

#include "ccomp/info.hpp"
#include "ccomp/joint_dist.hpp"
#include "ccomp/json_io.hpp"
#include "ccomp/partitioned_input.hpp"
#include "test_util.hpp"

using namespace ccomp;

TEST_CASE("entropy basics") {
  CHECK(entropy(FiniteDist::uniform(numeric_alphabet(4))) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy(FiniteDist::point_mass(numeric_alphabet(3), 1)) == 0.0);
  // -0.25 log 0.25 - 0.75 log 0.75, frozen by hand
  CHECK(entropy(FiniteDist::from_probs({0.25, 0.75})) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("relative entropy basics") {
  const FiniteDist p = FiniteDist::from_probs({0.5, 0.5});
  CHECK(relative_entropy(p, p) == 0.0);
  CHECK(is_infinite(relative_entropy(FiniteDist::from_probs({1.0, 0.0}),
                                     FiniteDist::from_probs({0.0, 1.0}))));
  // 0.5 log 2 + 0.5 log(2/3)
  CHECK(relative_entropy(p, FiniteDist::from_probs({0.25, 0.75})) ==
        doctest::Approx(0.2075187496394219).epsilon(1e-12));
  CHECK_THROWS_AS(relative_entropy(p, FiniteDist::uniform({"a", "b"})), std::invalid_argument);
}

TEST_CASE("total variation basics and metric") {
  const FiniteDist p = FiniteDist::from_probs({0.9, 0.1});
  const FiniteDist q = FiniteDist::from_probs({0.5, 0.5});
  CHECK(total_variation(p, p) == 0.0);
  CHECK(total_variation(FiniteDist::from_probs({1.0, 0.0}),
                        FiniteDist::from_probs({0.0, 1.0})) == doctest::Approx(2.0));
  CHECK(total_variation(p, q) == doctest::Approx(0.8).epsilon(1e-12));

  RandomStream s(7);
  for (int trial = 0; trial < 500; ++trial) {
    RandomStream t = s.child(trial);
    const auto a = testutil::random_dist(t, 5);
    const auto b = testutil::random_dist(t, 5);
    const auto c = testutil::random_dist(t, 5);
    CHECK(total_variation(a, c) <= total_variation(a, b) + total_variation(b, c) + 1e-12);
    CHECK(total_variation(a, b) >= 0.0);
    CHECK(total_variation(a, b) <= 2.0 + 1e-12);
  }
}

TEST_CASE("relative entropy nonnegativity and two-point monotonicity") {
  RandomStream s(11);
  for (int trial = 0; trial < 1000; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t n = 2 + t.below(8);
    const auto p = testutil::random_dist(t, n);
    const auto q = testutil::random_dist(t, n, 0.05);
    const double full = relative_entropy(p, q);
    CHECK(full >= -1e-12);

    // Random event: coarse-grain both distributions to (in, out). Both
    // masses are computed as sums so the two coarse tables stay consistent.
    std::vector<std::size_t> event, complement;
    for (std::size_t i = 0; i < n; ++i)
      (t.uniform() < 0.5 ? event : complement).push_back(i);
    std::vector<double> dp{p.mass(event), p.mass(complement)};
    std::vector<double> dq{q.mass(event), q.mass(complement)};
    CHECK(relative_entropy(FiniteDist::normalized({"in", "out"}, dp),
                           FiniteDist::normalized({"in", "out"}, dq)) <= full + 1e-12);
  }
}

TEST_CASE("mutual information basics") {
  const Axis ax{"X", {"0", "1"}};
  const Axis am{"M", {"0", "1"}};
  const JointDist indep = JointDist::product(ax, FiniteDist::from_probs({0.3, 0.7}), am,
                                             FiniteDist::from_probs({0.6, 0.4}));
  CHECK(mutual_information(indep, {"X"}, {"M"}) == doctest::Approx(0.0).epsilon(1e-12));

  const JointDist copy({ax, am}, {0.5, 0.0, 0.0, 0.5});
  CHECK(mutual_information(copy, {"X"}, {"M"}) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(mutual_information(copy, {"X"}, {"X"}), std::invalid_argument);
}

TEST_CASE("mutual information equals expected divergence to the marginal") {
  RandomStream s(13);
  for (int trial = 0; trial < 200; ++trial) {
    RandomStream t = s.child(trial);
    const JointDist j =
        testutil::random_joint(t, {{"X", {"a", "b", "c"}}, {"M", {"0", "1", "2"}}}, 0.02);
    const double mi = mutual_information(j, {"X"}, {"M"});
    const FiniteDist marg = j.axis_dist("M");
    double expected = 0.0;
    for (std::size_t x = 0; x < 3; ++x) {
      const double px = j.axis_mass("X", x);
      if (px <= 0.0) continue;
      const FiniteDist cond = j.condition("X", x).axis_dist("M");
      expected += px * relative_entropy(cond, marg);
    }
    CHECK(mi == doctest::Approx(expected).epsilon(0).scale(1).epsilon(1e-9));
    CHECK(mi >= -1e-9);
  }
}

TEST_CASE("conditional mutual information: vacuous conditioning and chain rule") {
  RandomStream s(17);
  // Z constant: conditioning changes nothing.
  const JointDist jz = testutil::random_joint(s, {{"A", {"0", "1"}}, {"B", {"0", "1"}},
                                                  {"Z", {"only"}}});
  CHECK(conditional_mutual_information(jz, {"A"}, {"B"}, {"Z"}) ==
        doctest::Approx(mutual_information(jz, {"A"}, {"B"})).epsilon(1e-12));

  for (int trial = 0; trial < 200; ++trial) {
    RandomStream t = s.child(trial);
    const JointDist j = testutil::random_joint(
        t, {{"X", {"0", "1"}}, {"Y", {"0", "1"}}, {"Z", {"0", "1"}}}, 0.01);
    // I(X : YZ) = I(X : Y) + I((X : Z) | Y)
    const double lhs = mutual_information(j, {"X"}, {"Y", "Z"});
    const double rhs = mutual_information(j, {"X"}, {"Y"}) +
                       conditional_mutual_information(j, {"X"}, {"Z"}, {"Y"});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("conditioning drops information by at most the conditioner's entropy") {
  RandomStream s(19);
  for (int trial = 0; trial < 200; ++trial) {
    RandomStream t = s.child(trial);
    const JointDist j = testutil::random_joint(
        t, {{"A", {"0", "1"}}, {"B", {"0", "1"}}, {"C", {"0", "1"}}, {"W", {"0", "1"}}}, 0.01);
    const double lhs = conditional_mutual_information(j, {"A", "B"}, {"C"}, {"W"});
    const double rhs = mutual_information(j, {"A", "B"}, {"C"}) - j.entropy_of({"W"});
    CHECK(lhs >= rhs - 1e-9);
  }
}

TEST_CASE("deviation frequencies respect the sampling tail bound") {
  RandomStream s(23);
  const std::size_t r = 200;
  const double eps = 0.1;
  const double bound = testutil::chernoff_bound(eps, r);
  const auto p = testutil::random_dist(s, 6);
  std::vector<double> predicate(6);
  for (auto& v : predicate) v = s.uniform();
  double target = 0.0;
  for (std::size_t i = 0; i < 6; ++i) target += p.p(i) * predicate[i];

  int deviations = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    RandomStream t = s.child(trial);
    double mean = 0.0;
    for (std::size_t i = 0; i < r; ++i) mean += predicate[p.sample(t)];
    mean /= static_cast<double>(r);
    if (std::abs(mean - target) > eps) ++deviations;
  }
  CHECK(static_cast<double>(deviations) / trials <= 3.0 * bound + 1e-12);
}

TEST_CASE("joint distribution marginal/condition bookkeeping") {
  const JointDist j({{"X", {"0", "1"}}, {"Y", {"0", "1", "2"}}},
                    {0.1, 0.2, 0.1, 0.15, 0.25, 0.2});
  CHECK(j.axis_mass("X", 0) == doctest::Approx(0.4));
  const FiniteDist my = j.axis_dist("Y");
  CHECK(my.p(0) == doctest::Approx(0.25));
  const JointDist cond = j.condition("X", 1);
  CHECK(cond.prob({0}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(j.condition("X", 5), std::invalid_argument);
  CHECK_THROWS_AS(j.marginal({"nope"}), std::invalid_argument);
}

TEST_CASE("partitioned input validates mixtures of products") {
  const Axis ax{"X", {"0", "1"}};
  const Axis ay{"Y", {"0", "1"}};
  const JointDist c0 = JointDist::product(ax, FiniteDist::from_probs({0.9, 0.1}), ay,
                                          FiniteDist::from_probs({0.2, 0.8}));
  const JointDist c1 = JointDist::product(ax, FiniteDist::from_probs({0.3, 0.7}), ay,
                                          FiniteDist::from_probs({0.5, 0.5}));
  const PartitionedInput pm(FiniteDist({"d0", "d1"}, {0.25, 0.75}), {c0, c1});
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      CHECK(pm.mu().prob({x, y}) ==
            doctest::Approx(0.25 * c0.prob({x, y}) + 0.75 * c1.prob({x, y})).epsilon(1e-12));

  // Correlated component rejected.
  const JointDist corr({ax, ay}, {0.5, 0.0, 0.0, 0.5});
  CHECK_THROWS_AS(PartitionedInput(FiniteDist({"d"}, {1.0}), {corr}), std::invalid_argument);
}

TEST_CASE("distribution JSON round trip preserves order and values") {
  const FiniteDist d({"zebra", "apple", "mid"}, {0.25, 0.5, 0.25});
  const auto j = io::to_json(d);
  const FiniteDist back = io::dist_from_json(j);
  CHECK(back.alphabet() == d.alphabet());
  CHECK(back.probs() == d.probs());
  CHECK(j.dump() == io::to_json(back).dump());
}

TEST_CASE("finite dist validation") {
  CHECK_THROWS_AS(FiniteDist({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteDist({"a", "a"}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteDist({"a", "b"}, {0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteDist({"a", "b"}, {-0.1, 1.1}), std::invalid_argument);
  CHECK(FiniteDist({"a", "b"}, {1.0 - 1e-13, 1e-13}).p(0) == doctest::Approx(1.0));
}
