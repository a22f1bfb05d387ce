#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "test_support.hpp"

using namespace projconst;
using testsupport::random_sign_matrix;

namespace {

SignMatrix r3() { return polygon_matrix(1); }

SignMatrix complete_sign_matrix(int d) {
  SignMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) m.set_sign(i, j, -1);
  return m;
}

OptimizerConfig quick_config() {
  OptimizerConfig cfg;
  cfg.starts = 8;
  return cfg;
}

}  // namespace

TEST_CASE("optimizer config validation", "[search]") {
  OptimizerConfig cfg;
  cfg.starts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.value_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("simplex projection", "[search]") {
  const std::vector<double> p = project_simplex({0.4, 0.4, 0.4});
  for (double x : p) CHECK(x == Catch::Approx(1.0 / 3.0).margin(1e-12));

  const std::vector<double> q = project_simplex({2.0, 0.0, -1.0});
  CHECK(q[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(q[1] == Catch::Approx(0.0).margin(1e-12));
  CHECK(q[2] == Catch::Approx(0.0).margin(1e-12));

  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = rng.uniform_int(1, 9);
    std::vector<double> v(static_cast<std::size_t>(d));
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    const std::vector<double> proj = project_simplex(v);
    double sum = 0.0;
    for (double x : proj) {
      REQUIRE(x >= 0.0);
      sum += x;
    }
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("maximize_weights on the transitive odd families", "[search]") {
  const WeightOptimum r3_opt = maximize_weights(r3(), 2, quick_config());
  CHECK(r3_opt.uniform_shortcut);
  CHECK(r3_opt.value == Catch::Approx(4.0 / 3.0).margin(1e-12));
  for (double w : r3_opt.weights) CHECK(w == Catch::Approx(1.0 / 3.0).margin(1e-12));

  const WeightOptimum r5_opt = maximize_weights(polygon_matrix(2), 2, quick_config());
  CHECK(r5_opt.uniform_shortcut);
  CHECK(r5_opt.value == Catch::Approx(2.0 * (1.0 + std::sqrt(5.0)) / 5.0).margin(1e-10));

  // Lemma 4.2 consistency across the polygon family
  for (int n = 1; n <= 6; ++n) {
    const int d = 2 * n + 1;
    const WeightOptimum opt = maximize_weights(polygon_matrix(n), 2, quick_config());
    for (double w : opt.weights) REQUIRE(std::abs(w - 1.0 / d) <= 1e-6);
  }
}

TEST_CASE("maximize_weights on the doubled-complement class", "[search]") {
  const SignMatrix a3 = complement(kronecker_double(r3()));
  const WeightOptimum opt = maximize_weights(a3, 4, quick_config());
  CHECK_FALSE(opt.uniform_shortcut);  // even order, no direct shortcut
  CHECK(opt.value == Catch::Approx(5.0 / 3.0).margin(1e-9));
  for (double w : opt.weights) CHECK(w == Catch::Approx(1.0 / 6.0).margin(1e-6));
}

TEST_CASE("maximize_weights reaches the blown-up optimum", "[search]") {
  // weights merged across the twin pair reproduce the R3 maximizer, so the
  // value is exactly 4/3 on an interior segment
  const WeightOptimum opt = maximize_weights(blow_up(r3(), 0), 2, quick_config());
  CHECK(opt.value == Catch::Approx(4.0 / 3.0).margin(1e-9));
  CHECK(opt.weights[0] + opt.weights[3] == Catch::Approx(1.0 / 3.0).margin(1e-6));
  CHECK(opt.weights[1] == Catch::Approx(1.0 / 3.0).margin(1e-6));
  CHECK(opt.weights[2] == Catch::Approx(1.0 / 3.0).margin(1e-6));
}

TEST_CASE("orbit symmetry at the concave optimum", "[search]") {
  // invertible with positive index equal to the cut: the maximizer can be
  // chosen constant on stabilizer orbits
  for (const SignMatrix& a : {complement(kronecker_double(r3())), testsupport::paper_a2()}) {
    const int n = signature(a).positive;
    const WeightOptimum opt = maximize_weights(a, n, quick_config());
    const OrbitPartition orbits = orbit_decomposition(a);
    for (const auto& block : orbits.blocks) {
      double lo = 1.0, hi = 0.0;
      for (int i : block) {
        lo = std::min(lo, opt.weights[static_cast<std::size_t>(i)]);
        hi = std::max(hi, opt.weights[static_cast<std::size_t>(i)]);
      }
      REQUIRE(hi - lo <= 1e-6);
    }
  }
}

TEST_CASE("maximize_weights determinism", "[search]") {
  OptimizerConfig cfg = quick_config();
  cfg.seed = 99;
  const SignMatrix a = testsupport::paper_a1();
  const WeightOptimum first = maximize_weights(a, 4, cfg);
  const WeightOptimum second = maximize_weights(a, 4, cfg);
  REQUIRE(first.value == second.value);
  REQUIRE(first.weights == second.weights);
}

TEST_CASE("sign flip local search", "[search]") {
  OptimizerConfig cfg;

  // R3 is already sign-optimal for n = 2
  const SignFlipResult fixed = sign_flip_local_search(r3(), 2, cfg);
  CHECK(fixed.converged);
  CHECK(fixed.iterations == 0);
  CHECK(fixed.matrix == r3());
  CHECK(fixed.value == Catch::Approx(4.0 / 3.0).margin(1e-12));

  // the complete-graph matrix improves strictly after the first sweep
  const SignMatrix k5 = complete_sign_matrix(5);
  const double before = partial_sum(eigenvalues(k5.to_sym()), 2) / 5.0;
  OptimizerConfig one_sweep = cfg;
  one_sweep.max_iters = 1;
  const SignFlipResult swept = sign_flip_local_search(k5, 2, one_sweep);
  CHECK(swept.value > before + 1e-6);
  const SignFlipResult full = sign_flip_local_search(k5, 2, cfg);
  CHECK(full.converged);
  CHECK(full.value >= swept.value - 1e-12);

  // n = d: the Gram matrix is the identity, an immediate fixed point of value 1
  Rng rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = rng.uniform_int(1, 7);
    const SignMatrix a = random_sign_matrix(rng, d);
    const SignFlipResult res = sign_flip_local_search(a, d, cfg);
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK(res.value == Catch::Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("sign flip values never decrease", "[search]") {
  Rng rng(63);
  OptimizerConfig step = quick_config();
  step.max_iters = 1;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = rng.uniform_int(3, 8);
    const int n = rng.uniform_int(1, d);
    SignMatrix a = random_sign_matrix(rng, d);
    double value = partial_sum(eigenvalues(a.to_sym()), n) / d;
    for (int sweep = 0; sweep < 6; ++sweep) {
      const SignFlipResult res = sign_flip_local_search(a, n, step);
      REQUIRE(res.value >= value - 1e-12);
      value = res.value;
      a = res.matrix;
      if (res.converged) break;
    }
  }
}

TEST_CASE("sign optimality check", "[search]") {
  CHECK(check_sign_optimality(r3(), 2) == SignOptimality::kOptimal);
  CHECK(check_sign_optimality(complete_sign_matrix(5), 2) == SignOptimality::kImprovable);
  Rng rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = rng.uniform_int(2, 7);
    CHECK(check_sign_optimality(random_sign_matrix(rng, d), d) == SignOptimality::kOptimal);
  }
}

TEST_CASE("exhaustive best constants at desk scale", "[search]") {
  OptimizerConfig cfg = quick_config();

  const Certificate c23 = best_constant(2, 3, cfg, SearchMode::kExhaustive);
  CHECK(c23.value == Catch::Approx(4.0 / 3.0).margin(1e-10));
  CHECK(canonical_form(c23.matrix) == canonical_form(r3()));
  for (int i = 0; i < 3; ++i) CHECK(c23.weights[i] == Catch::Approx(1.0 / 3.0).margin(1e-9));
  CHECK(c23.uniform_shortcut_used);
  CHECK(c23.sign_optimal);
  CHECK(c23.orbit_symmetric);

  const Certificate c11 = best_constant(1, 1, cfg, SearchMode::kExhaustive);
  CHECK(c11.value == Catch::Approx(1.0).margin(1e-12));
  const Certificate c12 = best_constant(1, 2, cfg, SearchMode::kExhaustive);
  CHECK(c12.value == Catch::Approx(1.0).margin(1e-10));

  CHECK_THROWS_AS(best_constant(2, 8, cfg, SearchMode::kExhaustive), BudgetError);
  CHECK_THROWS_AS(best_constant(0, 3, cfg, SearchMode::kExhaustive), std::invalid_argument);
}

TEST_CASE("clique pruning does not change the exhaustive optimum", "[search]") {
  OptimizerConfig cfg = quick_config();
  for (int d = 3; d <= 4; ++d) {
    const auto reps = enumerate_two_graphs(d);
    std::vector<SignMatrix> filtered;
    for (const auto& m : reps)
      if (is_clique_free(two_graph_of(m), 4)) filtered.push_back(m);
    const Certificate with = best_over_census(filtered, 2, cfg);
    const Certificate without = best_over_census(reps, 2, cfg);
    REQUIRE(std::abs(with.value - without.value) <= 1e-9);
  }
}

TEST_CASE("certificates respect the closed-form bounds", "[search]") {
  OptimizerConfig cfg = quick_config();
  std::vector<Certificate> certs;
  certs.push_back(best_constant(2, 3, cfg, SearchMode::kExhaustive));
  certs.push_back(best_constant(2, 4, cfg, SearchMode::kExhaustive));
  certs.push_back(best_constant(3, 4, cfg, SearchMode::kExhaustive));
  for (const auto& c : certs) {
    CHECK(c.value <= kll_upper(c.n, c.d) + 1e-9);
    CHECK(c.value <= kadets_snobar(c.n) + 1e-9);
    CHECK(c.value >= static_cast<double>(c.n) / c.d - 1e-12);
    CHECK(std::abs(weighted_objective(c.matrix, c.weights, c.n) - c.value) <= 1e-10);
  }
}

TEST_CASE("heuristic search finds the doubled classes", "[search]") {
  OptimizerConfig cfg = quick_config();
  const Certificate c = best_constant(2, 5, cfg, SearchMode::kHeuristic);
  CHECK(c.value >= 2.0 * (1.0 + std::sqrt(5.0)) / 5.0 - 1e-9);
  CHECK(c.value <= 4.0 / 3.0 + 1e-9);

  const Certificate c46 = best_constant(4, 6, cfg, SearchMode::kHeuristic);
  CHECK(c46.value == Catch::Approx(5.0 / 3.0).margin(1e-6));
}
