#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
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

std::vector<int> random_subset(Rng& rng, int d) {
  std::vector<int> subset;
  for (int v = 0; v < d; ++v)
    if (rng.coin()) subset.push_back(v);
  return subset;
}

}  // namespace

TEST_CASE("sign matrix of a graph", "[twograph]") {
  const SignMatrix empty3 = sign_matrix_of_graph(Graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(empty3.sign(i, j) == 1);

  Graph k3(3);
  k3.add_edge(0, 1);
  k3.add_edge(1, 2);
  k3.add_edge(0, 2);
  CHECK(sign_matrix_of_graph(k3) == complete_sign_matrix(3));

  // the graph extracted from a6 reproduces a6
  CHECK(sign_matrix_of_graph(graph_of_sign_matrix(a6())) == a6());

  Graph g(2);
  CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 5), std::invalid_argument);
}

TEST_CASE("switching", "[twograph]") {
  Rng rng(21);
  const SignMatrix a = random_sign_matrix(rng, 6);
  CHECK(switch_subset(a, {}) == a);
  CHECK(switch_subset(a, {0, 1, 2, 3, 4, 5}) == a);

  const SignMatrix ones(3);
  const SignMatrix switched = switch_subset(ones, {0});
  CHECK(switched.sign(0, 1) == -1);
  CHECK(switched.sign(0, 2) == -1);
  CHECK(switched.sign(1, 2) == 1);

  CHECK_THROWS_AS(switch_subset(ones, {7}), std::invalid_argument);
}

TEST_CASE("two-graph extraction", "[twograph]") {
  CHECK(two_graph_of(SignMatrix(3)).triples().empty());

  const TwoGraph t3 = two_graph_of(r3());
  REQUIRE(t3.triples().size() == 1);
  CHECK(t3.triples()[0] == std::array<int, 3>{0, 1, 2});

  // switching invariance
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform_int(3, 8);
    const SignMatrix a = random_sign_matrix(rng, d);
    CHECK(two_graph_of(switch_subset(a, random_subset(rng, d))) == two_graph_of(a));
  }
}

TEST_CASE("cocycle condition holds for extracted two-graphs", "[twograph]") {
  // construction validates the even-triple condition on every 4-subset
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = rng.uniform_int(4, 8);
    CHECK_NOTHROW(two_graph_of(random_sign_matrix(rng, d)));
  }
  // a raw triple set violating the condition is rejected
  CHECK_THROWS_AS(TwoGraph(4, {{0, 1, 2}, {0, 1, 3}}), std::invalid_argument);
}

TEST_CASE("switching equivalence", "[twograph]") {
  Rng rng(24);
  const SignMatrix a = random_sign_matrix(rng, 7);
  CHECK(switching_equivalent(a, a));
  CHECK(switching_equivalent(a, switch_subset(a, random_subset(rng, 7))));
  CHECK_FALSE(switching_equivalent(SignMatrix(3), r3()));
  CHECK_THROWS_AS(switching_equivalent(a, SignMatrix(3)), std::invalid_argument);
}

TEST_CASE("clique freeness", "[twograph]") {
  CHECK_FALSE(is_clique_free(two_graph_of(complete_sign_matrix(4)), 4));
  CHECK(is_clique_free(two_graph_of(SignMatrix(5)), 3));
  CHECK(is_clique_free(two_graph_of(polygon_matrix(2)), 4));
  CHECK(is_clique_free(two_graph_of(r3()), 4));  // m > largest coherent set
  CHECK_FALSE(is_clique_free(two_graph_of(r3()), 3));
  CHECK(is_clique_free(two_graph_of(complete_sign_matrix(4)), 5));  // m > d
  CHECK_THROWS_AS(is_clique_free(two_graph_of(r3()), 2), std::invalid_argument);
}

TEST_CASE("blow-up duplicates a row", "[twograph]") {
  const SignMatrix two = blow_up(SignMatrix(1), 0);
  CHECK(two == SignMatrix(2));

  const SignMatrix b = blow_up(r3(), 0);
  REQUIRE(b.order() == 4);
  // rows 0 and 3 agree on every shared off-diagonal coordinate
  for (int j = 1; j <= 2; ++j) CHECK(b.sign(0, j) == b.sign(3, j));
  CHECK(b.sign(0, 3) == 1);
  CHECK(b.sign(3, 1) == 1);
  CHECK(b.sign(3, 2) == -1);

  CHECK_THROWS_AS(blow_up(r3(), 3), std::invalid_argument);
}

TEST_CASE("blow-up preserves clique freeness", "[twograph]") {
  Rng rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = rng.uniform_int(3, 6);
    const int m = rng.uniform_int(3, 5);
    const SignMatrix a = random_sign_matrix(rng, d);
    const SignMatrix b = blow_up(a, rng.uniform_int(0, d - 1));
    CHECK(is_clique_free(two_graph_of(a), m) == is_clique_free(two_graph_of(b), m));
  }
}

TEST_CASE("blow-up profile", "[twograph]") {
  CHECK(blow_up_profile(r3(), {1, 1, 1}) == r3());
  CHECK(blow_up_profile(r3(), {2, 1, 1}) == blow_up(r3(), 0));
  CHECK_THROWS_AS(blow_up_profile(r3(), {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(blow_up_profile(r3(), {0, 1, 1}), std::invalid_argument);

  // uniform weights on the blown-up matrix reproduce the rational-weight
  // spectrum of the base matrix, padded with zeros
  Rng rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = rng.uniform_int(1, 5);
    const SignMatrix a = random_sign_matrix(rng, d);
    std::vector<int> mult(static_cast<std::size_t>(d));
    int total = 0;
    for (auto& m : mult) {
      m = rng.uniform_int(1, 3);
      total += m;
    }
    const SignMatrix big = blow_up_profile(a, mult);
    REQUIRE(big.order() == total);
    const Spectrum padded = weighted_spectrum(big, std::vector<double>(total, 1.0 / total));
    std::vector<double> w(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = static_cast<double>(mult[static_cast<std::size_t>(i)]) / total;
    std::vector<double> expected = weighted_spectrum(a, w).values;
    expected.insert(expected.end(), static_cast<std::size_t>(total - d), 0.0);
    std::sort(expected.begin(), expected.end(), std::greater<>());
    for (int k = 0; k < total; ++k)
      REQUIRE(padded.values[static_cast<std::size_t>(k)] ==
              Catch::Approx(expected[static_cast<std::size_t>(k)]).margin(1e-9));
  }
}

TEST_CASE("signed permutation algebra matches matrix arithmetic", "[twograph]") {
  Rng rng(27);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform_int(2, 6);
    const SignMatrix a = random_sign_matrix(rng, d);
    auto random_q = [&] {
      SignedPermutation q = SignedPermutation::identity(d);
      for (int i = d - 1; i > 0; --i)
        std::swap(q.perm[static_cast<std::size_t>(i)], q.perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
      for (auto& s : q.signs) s = rng.coin() ? 1 : -1;
      return q;
    };
    const SignedPermutation q1 = random_q(), q2 = random_q();

    // conjugate() against explicit Q A Q^t with Q_{il} = s_{perm(i)} [l == perm(i)]
    std::vector<std::vector<double>> qm(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i < d; ++i)
      qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(q1.perm[static_cast<std::size_t>(i)])] =
          q1.signs[static_cast<std::size_t>(q1.perm[static_cast<std::size_t>(i)])];
    const SignMatrix lhs = conjugate(q1, a);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int l = 0; l < d; ++l)
          for (int m = 0; m < d; ++m)
            acc += qm[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] * a.sign(l, m) *
                   qm[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
        REQUIRE(static_cast<double>(lhs.sign(i, j)) == Catch::Approx(acc));
      }

    CHECK(conjugate(compose(q1, q2), a) == conjugate(q1, conjugate(q2, a)));
    CHECK(conjugate(inverse(q1), conjugate(q1, a)) == a);
    CHECK(compose(q1, inverse(q1)).perm == SignedPermutation::identity(d).perm);
  }
}

TEST_CASE("stabilizer groups", "[twograph]") {
  // the all-ones matrix is stabilized by every permutation with constant signs
  const auto ones_group = stabilizer(SignMatrix(3));
  CHECK(ones_group.size() == 12);

  const auto r3_group = stabilizer(r3());
  CHECK(r3_group.size() % 2 == 0);
  bool has_id = false, has_neg_id = false;
  for (const auto& q : r3_group) {
    if (q == SignedPermutation::identity(3)) has_id = true;
    if (q == SignedPermutation::identity(3).negated()) has_neg_id = true;
  }
  CHECK(has_id);
  CHECK(has_neg_id);
  CHECK(orbit_decomposition(r3()).blocks.size() == 1);  // transitive action

  // group closure and inverses, and membership really stabilizes
  Rng rng(28);
  std::vector<SignMatrix> samples{SignMatrix(3), r3(), testsupport::paper_a1(),
                                  random_sign_matrix(rng, 5)};
  for (const auto& a : samples) {
    const auto group = stabilizer(a);
    for (const auto& q : group) REQUIRE(conjugate(q, a) == a);
    for (std::size_t x = 0; x < group.size(); ++x) {
      REQUIRE(std::binary_search(group.begin(), group.end(), inverse(group[x])));
      for (std::size_t y = 0; y < group.size(); ++y)
        REQUIRE(std::binary_search(group.begin(), group.end(), compose(group[x], group[y])));
    }
  }

  CHECK_THROWS_AS(stabilizer(SignMatrix(11)), BudgetError);
}

TEST_CASE("orbit decompositions of the paper matrices", "[twograph]") {
  const OrbitPartition o1 = orbit_decomposition(testsupport::paper_a1());
  REQUIRE(o1.blocks == std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4, 5}});

  const OrbitPartition o2 = orbit_decomposition(testsupport::paper_a2());
  REQUIRE(o2.blocks == std::vector<std::vector<int>>{{0}, {1, 2}, {3, 4, 5}});

  for (int n = 1; n <= 3; ++n)
    CHECK(orbit_decomposition(polygon_matrix(n)).blocks.size() == 1);

  CHECK(orbit_decomposition(testsupport::paper_a3()).blocks.size() == 1);
}

TEST_CASE("vertex-deleted switching classes detect orbits", "[twograph]") {
  // cross-check: i and j lie in the same orbit iff the vertex-deleted
  // submatrices are switching-isomorphic
  Rng rng(29);
  std::vector<SignMatrix> samples{testsupport::paper_a1(), testsupport::paper_a2(), a6(),
                                  polygon_matrix(2)};
  for (int trial = 0; trial < 10; ++trial) samples.push_back(random_sign_matrix(rng, rng.uniform_int(4, 6)));

  for (const auto& a : samples) {
    const int d = a.order();
    const OrbitPartition orbits = orbit_decomposition(a);
    std::vector<std::string> deleted_form;
    for (int v = 0; v < d; ++v) {
      std::vector<int> keep;
      for (int u = 0; u < d; ++u)
        if (u != v) keep.push_back(u);
      deleted_form.push_back(canonical_form(a.principal_submatrix(keep)));
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        REQUIRE((orbits.block_of(i) == orbits.block_of(j)) ==
                (deleted_form[static_cast<std::size_t>(i)] == deleted_form[static_cast<std::size_t>(j)]));
  }
}

TEST_CASE("switching preserves the spectrum", "[twograph]") {
  Rng rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform_int(2, 8);
    const SignMatrix a = random_sign_matrix(rng, d);
    const SignMatrix b = switch_subset(a, random_subset(rng, d));
    const Spectrum sa = eigenvalues(a.to_sym());
    const Spectrum sb = eigenvalues(b.to_sym());
    for (int k = 0; k < d; ++k)
      REQUIRE(sa.values[static_cast<std::size_t>(k)] ==
              Catch::Approx(sb.values[static_cast<std::size_t>(k)]).margin(1e-9));
  }
}
