#include <doctest.h>

#include <cmath>

#include "ccomp/info.hpp"
#include "ccomp/json_io.hpp"
#include "ccomp/substate.hpp"
#include "test_util.hpp"

using namespace ccomp;

TEST_CASE("identical distributions decompose trivially") {
  const FiniteDist p = FiniteDist::from_probs({0.4, 0.35, 0.25});
  const auto d = substate_decompose(p, p, 2.0);
  CHECK(d.a == doctest::Approx(0.0));
  CHECK(d.good.size() == p.size());
  CHECK(d.p_tilde.probs() == p.probs());
  CHECK(d.alpha == doctest::Approx(0.125).epsilon(1e-12));  // (1/2) * 2^{-2}
}

TEST_CASE("skewed pair keeps the full support in good at r = 1") {
  const FiniteDist p = FiniteDist::from_probs({0.9, 0.1});
  const FiniteDist q = FiniteDist::from_probs({0.5, 0.5});
  const auto d = substate_decompose(p, q, 1.0);
  // a = 0.9 log2(1.8) + 0.1 log2(0.2), frozen by hand
  CHECK(d.a == doctest::Approx(0.5310044064107189).epsilon(1e-10));
  const double threshold = std::exp2(d.a + 1.0);
  CHECK(threshold == doctest::Approx(2.8898696223368305).epsilon(1e-10));
  CHECK(p.p(0) / threshold <= q.p(0));
  CHECK(p.p(1) / threshold <= q.p(1));
  CHECK(d.good.size() == 2);
  CHECK(d.p_tilde.probs() == p.probs());
  CHECK(d.alpha == 0.0);  // (r-1)/r vanishes at r = 1
}

TEST_CASE("good sets grow with r") {
  RandomStream s(31);
  for (int trial = 0; trial < 300; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t n = 2 + t.below(10);
    const auto p = testutil::random_dist(t, n);
    const auto q = testutil::random_dist(t, n, 0.05);
    const auto d1 = substate_decompose(p, q, 1.0);
    const auto d2 = substate_decompose(p, q, 2.5);
    for (std::size_t i : d1.good) {
      CHECK(std::find(d2.good.begin(), d2.good.end(), i) != d2.good.end());
    }
  }
}

TEST_CASE("decomposition inequalities hold on random pairs") {
  RandomStream s(37);
  for (int trial = 0; trial < 500; ++trial) {
    RandomStream t = s.child(trial);
    const std::size_t n = 2 + t.below(15);
    const auto p = testutil::random_dist(t, n);
    const auto q = testutil::random_dist(t, n, 0.05);
    for (double r : {1.0, 2.0, 4.0}) {
      const auto d = substate_decompose(p, q, r);
      double good_mass = 0.0;
      for (std::size_t i : d.good) good_mass += p.p(i);
      CHECK(good_mass >= 1.0 - 1.0 / r - 1e-12);
      CHECK(total_variation(p, d.p_tilde) <= 2.0 / r + 1e-12);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(d.alpha * d.p_tilde.p(i) <= q.p(i) + 1e-12);
      }
      // p_tilde is supported on good and renormalized there.
      double tilde_good = 0.0;
      for (std::size_t i : d.good) tilde_good += d.p_tilde.p(i);
      CHECK(tilde_good == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("error cases") {
  const FiniteDist p = FiniteDist::from_probs({1.0, 0.0});
  const FiniteDist q = FiniteDist::from_probs({0.0, 1.0});
  CHECK_THROWS_AS(substate_decompose(p, q, 2.0), std::domain_error);
  CHECK_THROWS_AS(substate_decompose(p, p, 0.5), std::invalid_argument);
}

TEST_CASE("decomposition serializes for inspection") {
  const FiniteDist p = FiniteDist::from_probs({0.7, 0.3});
  const FiniteDist q = FiniteDist::from_probs({0.4, 0.6});
  const auto d = substate_decompose(p, q, 2.0);
  const auto j = io::to_json(d);
  CHECK(j.at("r").get<double>() == 2.0);
  CHECK(j.at("good").size() == d.good.size());
  CHECK(j.contains("alpha"));
  CHECK(j.at("p_tilde").at("probs").size() == 2);
}
