#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "test_support.hpp"

using namespace projconst;
using testsupport::cubic_from_roots;
using testsupport::cubic_roots_oracle;

TEST_CASE("kadets-snobar bound", "[bounds]") {
  CHECK(kadets_snobar(1) == Catch::Approx(1.0));
  CHECK(kadets_snobar(2) == Catch::Approx(std::sqrt(2.0)));
  CHECK(4.0 / 3.0 <= kadets_snobar(2));
  CHECK(kadets_snobar(4) == Catch::Approx(2.0));
  CHECK(5.0 / 3.0 <= kadets_snobar(4));
  CHECK_THROWS_AS(kadets_snobar(0), std::invalid_argument);
}

TEST_CASE("equiangular-line bound", "[bounds]") {
  CHECK(kll_upper(3, 6) == Catch::Approx((1.0 + std::sqrt(5.0)) / 2.0).margin(1e-12));
  for (int n = 1; n <= 6; ++n) CHECK(kll_upper(n, n) == Catch::Approx(1.0).margin(1e-12));
  CHECK(kll_upper(2, 3) == Catch::Approx(4.0 / 3.0).margin(1e-12));
  CHECK_THROWS_AS(kll_upper(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(kll_upper(4, 3), std::invalid_argument);
}

TEST_CASE("bohnenblust bound", "[bounds]") {
  CHECK(bohnenblust_upper(2) == Catch::Approx(1.0));
  CHECK(bohnenblust_upper(3) == Catch::Approx(4.0 / 3.0));
  CHECK(bohnenblust_upper(6) == Catch::Approx(5.0 / 3.0));
  CHECK_THROWS_AS(bohnenblust_upper(1), std::invalid_argument);
}

TEST_CASE("lift bound", "[bounds]") {
  for (int d : {2, 5, 9}) CHECK(lift_upper(2, d, 4.0 / 3.0) == Catch::Approx(7.0 / 3.0));
  for (int d : {3, 7}) {
    CHECK(lift_upper(1, d, 1.0) == Catch::Approx(2.0));
    CHECK(bohnenblust_upper(d) < lift_upper(1, d, 1.0));
  }
  CHECK(lift_upper(4, 6, kadets_snobar(4)) == Catch::Approx(3.0));
}

TEST_CASE("cubic root bound reference cases", "[bounds]") {
  // roots {1,2,3}: A = -3, C = 0, bound exactly the largest root
  const Cubic p = cubic_from_roots(1.0, 2.0, 3.0);
  CHECK(p.b == Catch::Approx(-6.0));
  CHECK(p.c == Catch::Approx(11.0));
  CHECK(p.e == Catch::Approx(-6.0));
  CHECK(cubic_root_upper(p) == Catch::Approx(3.0).margin(1e-12));

  // triple root: degenerate branch returns -b/3
  CHECK(cubic_root_upper(Cubic{}) == Catch::Approx(0.0));
  CHECK(cubic_root_upper(cubic_from_roots(2.0, 2.0, 2.0)) == Catch::Approx(2.0).margin(1e-9));

  // complex roots violate the precondition
  CHECK_THROWS_AS(cubic_root_upper(Cubic{0.0, 0.0, 1.0}), std::domain_error);
}

TEST_CASE("cubic root bound dominates the companion-matrix roots", "[bounds]") {
  Rng rng(51);
  for (int trial = 0; trial < 1000; ++trial) {
    const Cubic p = cubic_from_roots(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                                     rng.uniform(-3.0, 3.0));
    const std::vector<double> roots = cubic_roots_oracle(p);
    REQUIRE(cubic_root_upper(p) >= roots[0] - 1e-9);
  }
  // arithmetic-progression roots make C = 0 and the bound exact
  for (int trial = 0; trial < 200; ++trial) {
    const double mid = rng.uniform(-2.0, 2.0);
    const double step = rng.uniform(0.0, 2.0);
    const Cubic p = cubic_from_roots(mid - step, mid, mid + step);
    REQUIRE(cubic_root_upper(p) == Catch::Approx(mid + step).margin(1e-9));
  }
}

TEST_CASE("pair-sum cubic", "[bounds]") {
  const Cubic h = pair_sum_cubic(cubic_from_roots(1.0, 2.0, 3.0));
  CHECK(h.b == Catch::Approx(-12.0).margin(1e-12));
  CHECK(h.c == Catch::Approx(47.0).margin(1e-12));
  CHECK(h.e == Catch::Approx(-60.0).margin(1e-12));
  const std::vector<double> roots = cubic_roots_oracle(h);
  CHECK(roots[0] == Catch::Approx(5.0).margin(1e-9));
  CHECK(roots[1] == Catch::Approx(4.0).margin(1e-9));
  CHECK(roots[2] == Catch::Approx(3.0).margin(1e-9));

  const Cubic zero = pair_sum_cubic(Cubic{});
  CHECK(zero.b == 0.0);
  CHECK(zero.c == 0.0);
  CHECK(zero.e == 0.0);
}

TEST_CASE("pair-sum cubic on the simplex-weight instance", "[bounds]") {
  // q(x) = x^3 - t x^2 - s(1-s) x + s t w with s+t+w = 1 maps to
  // x^3 - 2t x^2 + (t^2 - s(1-s)) x + s t^2
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> stw = rng.dirichlet(3);
    const double s = stw[0], t = stw[1], w = stw[2];
    const Cubic q{-t, -s * (1.0 - s), s * t * w};
    const Cubic h = pair_sum_cubic(q);
    CHECK(h.b == Catch::Approx(-2.0 * t).margin(1e-12));
    CHECK(h.c == Catch::Approx(t * t - s * (1.0 - s)).margin(1e-12));
    CHECK(h.e == Catch::Approx(s * t * t).margin(1e-12));
  }
}

TEST_CASE("pair-sum composed with the root bound caps the top two roots", "[bounds]") {
  Rng rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    double roots[3] = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    std::sort(roots, roots + 3, std::greater<>());
    const Cubic p = cubic_from_roots(roots[0], roots[1], roots[2]);
    const Cubic h = pair_sum_cubic(p);

    const std::vector<double> pair_sums = cubic_roots_oracle(h);
    REQUIRE(pair_sums[0] == Catch::Approx(roots[0] + roots[1]).margin(1e-8));
    REQUIRE(pair_sums[1] == Catch::Approx(roots[0] + roots[2]).margin(1e-8));
    REQUIRE(pair_sums[2] == Catch::Approx(roots[1] + roots[2]).margin(1e-8));

    REQUIRE(cubic_root_upper(h) >= roots[0] + roots[1] - 1e-9);
  }
}
