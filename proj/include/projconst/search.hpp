#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "projconst/bounds.hpp"
#include "projconst/core_spectra.hpp"
#include "projconst/errors.hpp"
#include "projconst/families.hpp"
#include "projconst/objective.hpp"
#include "projconst/parallel.hpp"
#include "projconst/rng.hpp"
#include "projconst/twograph.hpp"

namespace projconst {

struct OptimizerConfig {
  int starts = 16;
  double step_tol = 1e-12;
  double value_tol = 1e-10;
  int max_iters = 5000;
  double gap_tol = 1e-8;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 = PROJCONST_JOBS or hardware concurrency

  void validate() const {
    if (starts < 1) throw std::invalid_argument("OptimizerConfig: starts must be >= 1");
    if (step_tol <= 0 || value_tol <= 0 || gap_tol <= 0)
      throw std::invalid_argument("OptimizerConfig: tolerances must be positive");
    if (max_iters < 1) throw std::invalid_argument("OptimizerConfig: max_iters must be >= 1");
  }
};

// Euclidean projection onto the standard simplex (sorting-based water-filling).
inline std::vector<double> project_simplex(std::vector<double> v) {
  const int d = static_cast<int>(v.size());
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (int k = 0; k < d; ++k) {
    cum += u[static_cast<std::size_t>(k)];
    const double cand = (1.0 - cum) / (k + 1);
    if (u[static_cast<std::size_t>(k)] + cand > 0.0) {
      rho = k + 1;
      theta = cand;
    }
  }
  (void)rho;
  for (auto& x : v) x = std::max(0.0, x + theta);
  return v;
}

namespace detail {

// Gradient of the padded objective, valid on boundary points: only the
// restricted eigenvalues that actually rank inside the padded top-n
// contribute, zero coordinates get a zero component. Also reports the padded
// gap at the cut (smoothness indicator).
struct BoundaryGradient {
  std::vector<double> g;
  double value = 0.0;
  double gap = 0.0;
};

inline BoundaryGradient boundary_gradient(const SignMatrix& a, const std::vector<double>& w, int n) {
  const int d = a.order();
  const WeightedEigen we = weighted_eigen(a, w);
  const int s = static_cast<int>(we.support.size());
  BoundaryGradient out;
  out.value = partial_sum(we.padded, n);
  out.gap = n < d ? we.padded.values[static_cast<std::size_t>(n - 1)] -
                        we.padded.values[static_cast<std::size_t>(n)]
                  : 1.0;

  // count restricted eigenvalues inside the padded top-n
  int zeros_left = d - s;
  int m = 0, taken = 0;
  while (taken < n) {
    const bool have_restricted = m < s;
    const double rv = have_restricted ? we.restricted.values[static_cast<std::size_t>(m)] : 0.0;
    if (zeros_left > 0 && (!have_restricted || rv <= 0.0)) {
      --zeros_left;
    } else {
      ++m;
    }
    ++taken;
  }

  out.g.assign(static_cast<std::size_t>(d), 0.0);
  for (int si = 0; si < s; ++si) {
    const int i = we.support[static_cast<std::size_t>(si)];
    double acc = 0.0;
    for (int k = 0; k < m; ++k)
      acc += we.restricted.values[static_cast<std::size_t>(k)] * we.restricted.vector(si, k) *
             we.restricted.vector(si, k);
    out.g[static_cast<std::size_t>(i)] = acc / w[static_cast<std::size_t>(i)];
  }
  return out;
}

// Projected gradient ascent over group-total variables. Groups tie weights
// together (stabilizer orbits in phase one, singletons in the polish phase);
// the simplex variable is the total weight per group, spread uniformly inside.
struct GroupAscent {
  std::vector<double> weights;
  double value = 0.0;
};

inline GroupAscent ascend_groups(const SignMatrix& a, int n,
                                 const std::vector<std::vector<int>>& groups,
                                 const std::vector<double>& w0, const OptimizerConfig& cfg) {
  const int d = a.order();
  const int ng = static_cast<int>(groups.size());
  auto expand = [&](const std::vector<double>& t) {
    std::vector<double> w(static_cast<std::size_t>(d), 0.0);
    for (int g = 0; g < ng; ++g)
      for (int i : groups[static_cast<std::size_t>(g)])
        w[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(g)] /
                                         static_cast<double>(groups[static_cast<std::size_t>(g)].size());
    return w;
  };

  std::vector<double> t(static_cast<std::size_t>(ng), 0.0);
  for (int g = 0; g < ng; ++g)
    for (int i : groups[static_cast<std::size_t>(g)])
      t[static_cast<std::size_t>(g)] += w0[static_cast<std::size_t>(i)];
  t = project_simplex(t);

  double value = weighted_objective(a, expand(t), n);
  double alpha = 1.0;
  int stall = 0;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const std::vector<double> w = expand(t);
    const BoundaryGradient bg = boundary_gradient(a, w, n);
    std::vector<double> gt(static_cast<std::size_t>(ng), 0.0);
    for (int g = 0; g < ng; ++g) {
      double acc = 0.0;
      for (int i : groups[static_cast<std::size_t>(g)]) acc += bg.g[static_cast<std::size_t>(i)];
      gt[static_cast<std::size_t>(g)] = acc / static_cast<double>(groups[static_cast<std::size_t>(g)].size());
    }

    // backtracking line search; a closed gap just means we are trying a
    // subgradient direction, acceptance still requires strict ascent
    bool accepted = false;
    double try_alpha = std::min(alpha * 2.0, 1e6);
    if (bg.gap <= cfg.gap_tol) try_alpha = std::min(try_alpha, 0.25);
    double improvement = 0.0;
    while (try_alpha > 1e-18) {
      std::vector<double> tn(static_cast<std::size_t>(ng));
      for (int g = 0; g < ng; ++g)
        tn[static_cast<std::size_t>(g)] = t[static_cast<std::size_t>(g)] +
                                          try_alpha * gt[static_cast<std::size_t>(g)];
      tn = project_simplex(std::move(tn));
      double move = 0.0;
      for (int g = 0; g < ng; ++g)
        move = std::max(move, std::abs(tn[static_cast<std::size_t>(g)] - t[static_cast<std::size_t>(g)]));
      if (move < cfg.step_tol) break;
      const double candidate = weighted_objective(a, expand(tn), n);
      if (candidate > value) {
        improvement = candidate - value;
        t = std::move(tn);
        value = candidate;
        alpha = try_alpha;
        accepted = true;
        break;
      }
      try_alpha *= 0.5;
    }

    if (accepted) {
      stall = improvement < cfg.value_tol ? stall + 1 : 0;
      if (stall >= 3) break;
      continue;
    }

    // no ascent along the (sub)gradient; probe re-entry of zeroed groups
    bool escaped = false;
    for (int g = 0; g < ng && !escaped; ++g) {
      if (t[static_cast<std::size_t>(g)] > 0.0) continue;
      const double h = 1e-4;
      std::vector<double> tn = t;
      for (auto& x : tn) x *= 1.0 - h;
      tn[static_cast<std::size_t>(g)] += h;
      const double candidate = weighted_objective(a, expand(tn), n);
      if (candidate > value + cfg.value_tol) {
        t = std::move(tn);
        value = candidate;
        alpha = 1.0;
        escaped = true;
      }
    }
    if (!escaped) break;
  }
  return {expand(t), value};
}

inline std::vector<std::vector<int>> singleton_groups(int d) {
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) groups[static_cast<std::size_t>(i)] = {i};
  return groups;
}

}  // namespace detail

struct WeightOptimum {
  std::vector<double> weights;
  double value = 0.0;
  bool uniform_shortcut = false;
};

// Inner maximization of Theorem-2.1 type over the weight simplex for a fixed
// sign matrix. Transitive stabilizer action at odd order pins the maximizer to
// uniform weights directly; otherwise projected-gradient multistart, first
// with weights tied across stabilizer orbits, then a full-dimensional polish.
inline WeightOptimum maximize_weights(const SignMatrix& a, int n, const OptimizerConfig& cfg) {
  cfg.validate();
  const int d = a.order();
  if (n < 1 || n > d) throw std::invalid_argument("maximize_weights: n out of range");

  OrbitPartition orbits;
  if (d <= kStabilizerOrderBudget) {
    orbits = orbit_decomposition(a, cfg.jobs);
  } else {
    orbits.blocks = detail::singleton_groups(d);
  }

  const std::vector<double> uniform(static_cast<std::size_t>(d), 1.0 / d);
  if (orbits.blocks.size() == 1 && d % 2 == 1) {
    return {uniform, weighted_objective(a, uniform, n), true};
  }

  std::vector<std::vector<double>> starts;
  starts.push_back(uniform);
  const int ng = static_cast<int>(orbits.blocks.size());
  if (ng > 1 && ng < d) {
    std::vector<double> bary(static_cast<std::size_t>(d), 0.0);
    for (const auto& block : orbits.blocks)
      for (int i : block)
        bary[static_cast<std::size_t>(i)] = 1.0 / (ng * static_cast<double>(block.size()));
    starts.push_back(std::move(bary));
  }
  Rng rng(cfg.seed);
  while (static_cast<int>(starts.size()) < cfg.starts) starts.push_back(rng.dirichlet(d));

  const bool tie_phase = ng < d && ng >= 1;
  std::vector<detail::GroupAscent> results(starts.size());
  parallel_for(static_cast<int>(starts.size()), cfg.jobs, [&](int si) {
    std::vector<double> w = starts[static_cast<std::size_t>(si)];
    if (tie_phase) {
      OptimizerConfig inner = cfg;
      inner.jobs = 1;
      w = detail::ascend_groups(a, n, orbits.blocks, w, inner).weights;
    }
    OptimizerConfig inner = cfg;
    inner.jobs = 1;
    results[static_cast<std::size_t>(si)] =
        detail::ascend_groups(a, n, detail::singleton_groups(d), w, inner);
  });

  int best = 0;
  for (int si = 1; si < static_cast<int>(results.size()); ++si)
    if (results[static_cast<std::size_t>(si)].value > results[static_cast<std::size_t>(best)].value)
      best = si;

  std::vector<double> w = results[static_cast<std::size_t>(best)].weights;
  double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return {w, results[static_cast<std::size_t>(best)].value, false};
}

enum class SignOptimality { kOptimal, kImprovable, kIndeterminate };

// Checks the first-order sign-pattern condition a_ij = sgn(<r_i, r_j>) against
// the Gram matrix of the top-n eigenvector rows at uniform weights. A
// mismatched pair certifies an improving flip for any choice of top-n
// eigenbasis (von Neumann trace inequality), so kImprovable is sound even at a
// closed spectral gap; certifying optimality needs the gap, otherwise the
// eigenbasis is ambiguous and the result is indeterminate.
inline SignOptimality check_sign_optimality(const SignMatrix& a, int n,
                                            double gap_tol = kDefaultGapTolerance) {
  const int d = a.order();
  if (n < 1 || n > d) throw std::invalid_argument("check_sign_optimality: n out of range");
  if (n == d) return SignOptimality::kOptimal;  // U U^t = Id, nothing to test
  const EigenDecomposition eig = eigen_sym(a.to_sym());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double gram = 0.0;
      for (int k = 0; k < n; ++k) gram += eig.vector(i, k) * eig.vector(j, k);
      if (std::abs(gram) <= gap_tol) continue;
      if (a.sign(i, j) != (gram > 0.0 ? 1 : -1)) return SignOptimality::kImprovable;
    }
  if (eig.values[static_cast<std::size_t>(n - 1)] - eig.values[static_cast<std::size_t>(n)] <= gap_tol)
    return SignOptimality::kIndeterminate;
  return SignOptimality::kOptimal;
}

struct SignFlipResult {
  SignMatrix matrix;
  double value = 0.0;  // pi_n(matrix)/d
  bool converged = false;
  int iterations = 0;
};

// Local search over sign matrices at uniform weights: flip every off-diagonal
// entry disagreeing with the sign of the eigenvector-row Gram matrix, one
// sweep per iteration. Each sweep increases pi_n (von Neumann trace
// inequality), so the walk terminates at a sign-pattern fixed point.
inline SignFlipResult sign_flip_local_search(const SignMatrix& a0, int n,
                                             const OptimizerConfig& cfg) {
  cfg.validate();
  const int d = a0.order();
  if (n < 1 || n > d) throw std::invalid_argument("sign_flip_local_search: n out of range");

  SignMatrix a = a0;
  EigenDecomposition eig = eigen_sym(a.to_sym());
  double value = partial_sum(eig.spectrum(), n);
  SignMatrix best_matrix = a;
  double best_value = value;
  int iter = 0;
  bool converged = false;

  for (; iter < cfg.max_iters; ++iter) {
    std::vector<std::pair<int, int>> flips;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        double gram = 0.0;
        for (int k = 0; k < n; ++k) gram += eig.vector(i, k) * eig.vector(j, k);
        if (std::abs(gram) <= cfg.gap_tol) continue;
        if (a.sign(i, j) != (gram > 0.0 ? 1 : -1)) flips.emplace_back(i, j);
      }
    if (flips.empty()) {
      converged = true;
      break;
    }
    for (const auto& [i, j] : flips) a.flip(i, j);
    eig = eigen_sym(a.to_sym());
    const double next = partial_sum(eig.spectrum(), n);
    if (next > best_value) {
      best_value = next;
      best_matrix = a;
    }
    if (next - value < cfg.value_tol) {
      value = next;
      converged = true;
      break;
    }
    value = next;
  }
  if (!converged) {
    return {best_matrix, best_value / d, false, iter};
  }
  return {a, std::max(value, best_value) / d, true, iter};
}

// Recomputable witness of a lower bound for Pi(n,d).
struct Certificate {
  int n = 0;
  int d = 0;
  SignMatrix matrix;
  WeightVector weights;
  double value = 0.0;
  Spectrum spectrum;
  bool sign_optimal = false;
  bool orbit_symmetric = false;
  bool uniform_shortcut_used = false;

  Certificate(int n_, int d_, SignMatrix m, WeightVector w)
      : n(n_), d(d_), matrix(std::move(m)), weights(std::move(w)) {}
};

constexpr double kCertificateValueTolerance = 1e-10;
constexpr double kCertificateBoundSlack = 1e-9;

inline Certificate make_certificate(const SignMatrix& a, int n, const WeightOptimum& opt) {
  const int d = a.order();
  std::vector<double> w = opt.weights;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  Certificate cert(n, d, a, WeightVector(w));
  cert.value = weighted_objective(a, w, n);
  if (std::abs(cert.value - opt.value) > kCertificateValueTolerance)
    throw std::logic_error("make_certificate: value does not recompute");
  cert.spectrum = weighted_spectrum(a, w);
  cert.sign_optimal = check_sign_optimality(a, n) == SignOptimality::kOptimal;
  cert.uniform_shortcut_used = opt.uniform_shortcut;
  cert.orbit_symmetric = false;
  if (d <= kStabilizerOrderBudget) {
    const OrbitPartition orbits = orbit_decomposition(a);
    bool symmetric = true;
    for (const auto& block : orbits.blocks) {
      double lo = 1.0, hi = 0.0;
      for (int i : block) {
        lo = std::min(lo, w[static_cast<std::size_t>(i)]);
        hi = std::max(hi, w[static_cast<std::size_t>(i)]);
      }
      if (hi - lo > 1e-6) symmetric = false;
    }
    cert.orbit_symmetric = symmetric;
  }
  if (cert.value > kll_upper(n, d) + kCertificateBoundSlack ||
      cert.value > kadets_snobar(n) + kCertificateBoundSlack)
    throw std::logic_error("make_certificate: value exceeds a proven upper bound");
  return cert;
}

// Best certificate across census representatives; scanning in input order with
// a strict comparison makes ties resolve to the earlier (lower canonical form)
// representative, so the result is deterministic.
inline Certificate best_over_census(const std::vector<SignMatrix>& reps, int n,
                                    const OptimizerConfig& cfg) {
  if (reps.empty()) throw std::invalid_argument("best_over_census: no representatives");
  std::vector<std::optional<WeightOptimum>> opts(reps.size());
  parallel_for(static_cast<int>(reps.size()), cfg.jobs, [&](int idx) {
    OptimizerConfig inner = cfg;
    inner.jobs = 1;
    opts[static_cast<std::size_t>(idx)] = maximize_weights(reps[static_cast<std::size_t>(idx)], n, inner);
  });
  int best = 0;
  for (int idx = 1; idx < static_cast<int>(reps.size()); ++idx)
    if (opts[static_cast<std::size_t>(idx)]->value > opts[static_cast<std::size_t>(best)]->value + cfg.value_tol)
      best = idx;
  return make_certificate(reps[static_cast<std::size_t>(best)], n, *opts[static_cast<std::size_t>(best)]);
}

enum class SearchMode { kExhaustive, kHeuristic };

constexpr int kExhaustiveOrderBudget = 7;

namespace detail {

inline std::vector<SignMatrix> census_reps(int d, int jobs) {
  if (d == 1) return {SignMatrix(1)};
  if (d == 2) return {SignMatrix(2)};
  return enumerate_two_graphs(d, jobs);
}

inline void push_unique(std::vector<SignMatrix>& list, const SignMatrix& m) {
  for (const auto& x : list)
    if (x == m) return;
  list.push_back(m);
}

// Deterministic heuristic seed pool: polygon / a6 / omega members of matching
// order, Kronecker doubles of half-order family members, and complements.
inline std::vector<SignMatrix> family_seeds(int d) {
  std::vector<SignMatrix> seeds;
  if (d % 2 == 1 && d >= 3) push_unique(seeds, polygon_matrix((d - 1) / 2));
  if (d == 6) push_unique(seeds, a6());
  if (d >= 3)
    for (const auto& m : omega_members(std::max(3, d)))
      if (m.order() == d) push_unique(seeds, m);
  if (d % 2 == 0 && d / 2 >= 1) {
    std::vector<SignMatrix> halves;
    if ((d / 2) % 2 == 1 && d / 2 >= 3) push_unique(halves, polygon_matrix((d / 2 - 1) / 2));
    if (d / 2 == 6) push_unique(halves, a6());
    if (d / 2 >= 3)
      for (const auto& m : omega_members(std::max(3, d / 2)))
        if (m.order() == d / 2) push_unique(halves, m);
    if (d / 2 < 3) push_unique(halves, SignMatrix(d / 2));
    for (const auto& m : halves) push_unique(seeds, kronecker_double(m));
  }
  if (seeds.empty()) push_unique(seeds, SignMatrix(d));
  const std::size_t base = seeds.size();
  for (std::size_t k = 0; k < base; ++k) push_unique(seeds, complement(seeds[k]));
  return seeds;
}

inline SignMatrix random_sign_matrix(int d, Rng& rng) {
  SignMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (rng.coin()) m.set_sign(i, j, -1);
  return m;
}

}  // namespace detail

// Outer maximization over sign matrices. Exhaustive mode walks the census of
// switching classes, pruned to K_{n+2}-free two-graphs; heuristic mode runs
// the sign-flip local search from family seeds and random matrices, then
// optimizes weights for the strongest candidates. Only exhaustive results
// carry an optimality claim.
inline Certificate best_constant(int n, int d, const OptimizerConfig& cfg, SearchMode mode) {
  cfg.validate();
  if (n < 1 || n > d) throw std::invalid_argument("best_constant: require 1 <= n <= d");

  if (mode == SearchMode::kExhaustive) {
    if (d > kExhaustiveOrderBudget)
      throw BudgetError("best_constant: exhaustive mode requires d <= " +
                        std::to_string(kExhaustiveOrderBudget));
    std::vector<SignMatrix> reps = detail::census_reps(d, cfg.jobs);
    std::vector<SignMatrix> kept;
    for (const auto& rep : reps)
      if (is_clique_free(two_graph_of(rep), n + 2)) kept.push_back(rep);
    return best_over_census(kept, n, cfg);
  }

  std::vector<SignMatrix> seeds = detail::family_seeds(d);
  Rng rng(cfg.seed);
  for (int k = 0; k < cfg.starts; ++k)
    detail::push_unique(seeds, detail::random_sign_matrix(d, rng));

  std::vector<std::optional<SignFlipResult>> flips(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), cfg.jobs, [&](int idx) {
    OptimizerConfig inner = cfg;
    inner.jobs = 1;
    flips[static_cast<std::size_t>(idx)] =
        sign_flip_local_search(seeds[static_cast<std::size_t>(idx)], n, inner);
  });

  std::vector<int> order(seeds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return flips[static_cast<std::size_t>(x)]->value > flips[static_cast<std::size_t>(y)]->value;
  });
  const int top = std::min<int>(static_cast<int>(order.size()), std::max(3, cfg.starts / 4));

  std::optional<Certificate> best;
  for (int k = 0; k < top; ++k) {
    const SignMatrix& cand = flips[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]->matrix;
    bool duplicate = false;
    for (int p = 0; p < k && !duplicate; ++p)
      duplicate = flips[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])]->matrix == cand;
    if (duplicate) continue;
    const WeightOptimum opt = maximize_weights(cand, n, cfg);
    if (!best || opt.value > best->value + cfg.value_tol)
      best = make_certificate(cand, n, opt);
  }
  return *best;
}

}  // namespace projconst
