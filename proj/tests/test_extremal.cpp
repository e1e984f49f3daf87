#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mmb/extremal.hpp"
#include "mmb/matching.hpp"
#include "mmb/moments.hpp"

using namespace mmb::extremal;
using mmb::Rat;

TEST_CASE("k=2: single node at sqrt(3), mass 1/6") {
  auto d = extremal_even(2);
  REQUIRE(d.positive_nodes.size() == 1);
  CHECK(d.positive_nodes[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
  CHECK(d.side_masses[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(d.center_mass == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(d.r_star() == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("k=4: He_5 node squares and 5-point quadrature weights") {
  auto d = extremal_even(4);
  REQUIRE(d.positive_nodes.size() == 2);
  const double s10 = std::sqrt(10.0);
  CHECK(d.positive_nodes[0] * d.positive_nodes[0] ==
        doctest::Approx(5.0 - s10).epsilon(1e-12));
  CHECK(d.positive_nodes[1] * d.positive_nodes[1] ==
        doctest::Approx(5.0 + s10).epsilon(1e-12));
  CHECK(d.side_masses[0] == doctest::Approx(0.2220759220056126).epsilon(1e-11));
  CHECK(d.side_masses[1] == doctest::Approx(0.0112574113277207).epsilon(1e-11));
  CHECK(d.center_mass == doctest::Approx(8.0 / 15.0).epsilon(1e-11));
  CHECK(d.r_star() == doctest::Approx(7.0 / 30.0).epsilon(1e-11));
}

TEST_CASE("k=6: center mass 16/35") {
  auto d = extremal_even(6);
  CHECK(d.center_mass == doctest::Approx(16.0 / 35.0).epsilon(1e-10));
}

TEST_CASE("deviation at zero") {
  CHECK(deviation_at_zero(extremal_even(2)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(deviation_at_zero(extremal_even(4)) ==
        doctest::Approx(4.0 / 15.0).epsilon(1e-11));
  SymmetricDistribution degenerate;
  degenerate.positive_nodes = {1.0};
  degenerate.side_masses = {0.5};
  degenerate.center_mass = 0.0;
  CHECK(deviation_at_zero(degenerate) == doctest::Approx(0.0));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(extremal_even(3), std::invalid_argument);
  CHECK_THROWS_AS(extremal_even(0), std::invalid_argument);
  CHECK_THROWS_AS(extremal_even(42), std::invalid_argument);
}

TEST_CASE("p0 equals the exact Hankel bound for k in {2,4,6,8}") {
  for (int k = 2; k <= 8; k += 2) {
    auto d = extremal_even(k);
    const double bound = mmb::rat_double(mmb::moments::lindsay_bound(k));
    CHECK(std::fabs(d.center_mass - bound) <= 1e-10);
  }
}

TEST_CASE("half-bound reports pass and both s routes agree, k <= 12") {
  for (int k = 2; k <= 12; k += 2) {
    auto rep = verify_half_bound(k);
    CHECK(rep.pass);
    CHECK(rep.p0_diff <= 1e-10);
    CHECK(rep.deviation_diff <= 1e-10);
    CHECK(rep.s_rel_diff <= 1e-10);
    CHECK(rep.r_star_identity_diff <= 1e-10);
  }
}

TEST_CASE("side masses strictly positive for even k <= 20") {
  for (int k = 2; k <= 20; k += 2) {
    auto d = extremal_even(k);
    for (double q : d.side_masses) CHECK(q > 0.0);
    CHECK(d.center_mass > 0.0);
    CHECK(d.center_mass < 1.0);
  }
}

TEST_CASE("quadrature exactness: all k half-moment equations reproduced") {
  for (int k = 2; k <= 10; k += 2) {
    auto d = extremal_even(k);
    for (int i = 1; i <= k; ++i) {
      long double acc = 0.0L;
      for (std::size_t j = 0; j < d.positive_nodes.size(); ++j)
        acc += static_cast<long double>(d.side_masses[j]) *
               std::pow(static_cast<long double>(d.positive_nodes[j]),
                        2L * i);
      const double target =
          mmb::rat_double(mmb::moments::normal_moment(2 * i) / 2);
      CHECK(std::fabs(static_cast<double>(acc) - target) <=
            1e-11 * std::max(1.0, target));
    }
  }
}

TEST_CASE("k=3 sweep: monotone escape toward the k=2 answer") {
  auto sweep = odd_case_sweep(3, {5.0, 10.0, 100.0});
  REQUIRE(sweep.records.size() == 3);
  double prev_p0 = 0.0;
  for (const auto& rec : sweep.records) {
    REQUIRE(rec.feasible);
    CHECK(rec.p0 > prev_p0 - 1e-12);
    CHECK(rec.p0 < 2.0 / 3.0);
    CHECK(rec.tail_mass <= rec.tail_bound * (1.0 + 1e-9));
    CHECK(rec.tail_mass > 0.0);
    prev_p0 = rec.p0;
  }
  const auto& last = sweep.records.back();
  CHECK(std::fabs(last.p0 - 2.0 / 3.0) <= 0.01);
  CHECK(std::fabs(last.node_squares[0] - 3.0) <= 0.05);
  CHECK(std::fabs(last.masses[0] - 1.0 / 6.0) <= 0.01);
}

TEST_CASE("k=5 sweep approaches 8/15") {
  auto sweep = odd_case_sweep(5, {5.0, 10.0, 30.0});
  REQUIRE(sweep.records.size() == 3);
  double prev_p0 = 0.0;
  const double limit = 8.0 / 15.0;
  for (const auto& rec : sweep.records) {
    REQUIRE(rec.feasible);
    CHECK(rec.p0 > prev_p0);
    CHECK(rec.p0 < limit);
    CHECK(rec.tail_mass <= rec.tail_bound * (1.0 + 1e-9));
    prev_p0 = rec.p0;
  }
  CHECK(std::fabs(sweep.records.back().p0 - limit) <= 0.02);
}

TEST_CASE("sweep records stay below the (k-1) bound") {
  for (int k : {3, 5}) {
    auto sweep = odd_case_sweep(
        k, k == 3 ? std::vector<double>{5.0, 20.0} : std::vector<double>{6.0});
    const double bound =
        mmb::rat_double(mmb::moments::lindsay_bound(k - 1));
    for (const auto& rec : sweep.records)
      if (rec.feasible) CHECK(rec.p0 < bound);
  }
}

TEST_CASE("derivative engine: largest-node partial negative near records") {
  // In the odd-k n-node parametrization (n = k equations, positive masses)
  // the largest-node partial of r* is negative, so escape raises p0.
  auto sweep = odd_case_sweep(3, {5.0, 10.0, 100.0});
  std::vector<double> mom(3);
  for (int i = 1; i <= 3; ++i)
    mom[i - 1] = mmb::rat_double(mmb::moments::normal_moment(2 * i) / 2);
  for (const auto& rec : sweep.records) {
    REQUIRE(rec.feasible);
    // split the interior node to reach the k-point representation
    std::vector<double> pts{0.9 * rec.node_squares[0],
                            1.1 * rec.node_squares[0], rec.node_squares[1]};
    auto sol = mmb::matching::solve_probabilities({pts}, mom);
    for (double p : sol.probabilities) REQUIRE(p > 0.0);
    auto d = mmb::matching::r_star_partials({pts}, mom);
    auto fd = mmb::matching::r_star_partials_fd({pts}, mom);
    CHECK(d.back() < 0.0);
    CHECK(std::fabs(d.back() - fd.back()) <=
          1e-5 * std::fabs(d.back()));
  }
}

TEST_CASE("sweep validation") {
  CHECK_THROWS_AS(odd_case_sweep(4, {5.0}), std::invalid_argument);
  CHECK_THROWS_AS(odd_case_sweep(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(odd_case_sweep(3, {10.0, 5.0}), std::invalid_argument);
  // schedule must start above the even-case largest node (sqrt(3) for k=3)
  CHECK_THROWS_AS(odd_case_sweep(3, {1.0}), std::invalid_argument);
}

TEST_CASE("s route from root squares matches quadrature values") {
  const double s10 = std::sqrt(10.0);
  CHECK(s_from_root_squares(4, {5.0 - s10, 5.0 + s10}) ==
        doctest::Approx(56.0).epsilon(1e-12));
  CHECK(s_from_root_squares(2, {3.0}) == doctest::Approx(2.0).epsilon(1e-14));
}
