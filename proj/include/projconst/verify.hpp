#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "projconst/bounds.hpp"
#include "projconst/families.hpp"
#include "projconst/io.hpp"
#include "projconst/objective.hpp"
#include "projconst/rng.hpp"
#include "projconst/search.hpp"

namespace projconst {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<Certificate> certificates;
  double elapsed_seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void add(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Grunbaum's constant: exhaustive search over orders 3..6 plus the polygon
// family must peak at 4/3, attained by R_3 with uniform weights.
inline VerifyReport verify_pi2(const OptimizerConfig& cfg) {
  detail::Stopwatch clock;
  VerifyReport rep;

  double global = 0.0;
  for (int d = 3; d <= 6; ++d) {
    Certificate cert = best_constant(2, d, cfg, SearchMode::kExhaustive);
    global = std::max(global, cert.value);
    rep.certificates.push_back(std::move(cert));
  }
  double poly_best = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const int d = 2 * n + 1;
    const double v = weighted_objective(polygon_matrix(n), std::vector<double>(d, 1.0 / d), 2);
    poly_best = std::max(poly_best, v);
  }
  global = std::max(global, poly_best);

  rep.add("global maximum over d=3..6 and polygon family equals 4/3",
          std::abs(global - 4.0 / 3.0) <= 1e-7, "best = " + format_screen(global));
  const double r3_uniform =
      weighted_objective(polygon_matrix(1), std::vector<double>(3, 1.0 / 3.0), 2);
  rep.add("R_3 with uniform weights achieves 4/3",
          std::abs(r3_uniform - 4.0 / 3.0) <= 1e-12, "value = " + format_screen(r3_uniform));

  rep.elapsed_seconds = clock.seconds();
  return rep;
}

// Pi(3,6): the order-6 census has 16 classes and its optimized maximum is the
// golden ratio, the equiangular-line bound for six lines in R^3.
inline VerifyReport verify_pi36(const OptimizerConfig& cfg) {
  detail::Stopwatch clock;
  VerifyReport rep;
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;

  const std::vector<SignMatrix> reps = enumerate_two_graphs(6, cfg.jobs);
  rep.add("order-6 census has 16 switching classes", static_cast<int>(reps.size()) == 16,
          "classes = " + std::to_string(reps.size()));

  Certificate cert = best_over_census(reps, 3, cfg);
  rep.add("optimized maximum over all classes equals (1+sqrt 5)/2",
          std::abs(cert.value - golden) <= 1e-6, "best = " + format_screen(cert.value));
  rep.add("equiangular-line bound kll_upper(3,6) equals (1+sqrt 5)/2",
          std::abs(kll_upper(3, 6) - golden) <= 1e-12,
          "kll_upper(3,6) = " + format_screen(kll_upper(3, 6)));
  rep.certificates.push_back(std::move(cert));

  rep.elapsed_seconds = clock.seconds();
  return rep;
}

// Pi(4,6): exactly three classes have signature (4,0,2); their optimized
// maximum is 5/3, attained at the class of complement(kronecker_double(R_3))
// with uniform weights.
inline VerifyReport verify_pi46(const OptimizerConfig& cfg) {
  detail::Stopwatch clock;
  VerifyReport rep;

  const std::vector<SignMatrix> reps = enumerate_two_graphs(6, cfg.jobs);
  std::vector<SignMatrix> candidates;
  for (const auto& m : reps) {
    const Signature s = signature(m);
    if (s.positive == 4 && s.zero == 0 && s.negative == 2) candidates.push_back(m);
  }
  rep.add("exactly 3 classes have signature (4,0,2)",
          static_cast<int>(candidates.size()) == 3,
          "count = " + std::to_string(candidates.size()));
  if (candidates.empty()) {
    rep.elapsed_seconds = clock.seconds();
    return rep;
  }

  Certificate cert = best_over_census(candidates, 4, cfg);
  rep.add("optimized maximum over signature-(4,0,2) classes equals 5/3",
          std::abs(cert.value - 5.0 / 3.0) <= 1e-6, "best = " + format_screen(cert.value));

  const SignMatrix a3 = complement(kronecker_double(polygon_matrix(1)));
  rep.add("maximum attained at the class of complement(kronecker_double(R_3))",
          canonical_form(cert.matrix) == canonical_form(a3),
          "winning class " + canonical_form(cert.matrix));
  double weight_dev = 0.0;
  for (int i = 0; i < cert.d; ++i)
    weight_dev = std::max(weight_dev, std::abs(cert.weights[i] - 1.0 / 6.0));
  rep.add("maximizing weights are uniform", weight_dev <= 1e-6,
          "max deviation = " + format_screen(weight_dev));
  rep.certificates.push_back(std::move(cert));

  rep.elapsed_seconds = clock.seconds();
  return rep;
}

namespace detail {

inline SignMatrix random_sign_matrix_of(Rng& rng, int d) {
  SignMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (rng.coin()) m.set_sign(i, j, -1);
  return m;
}

}  // namespace detail

// Identity suites: blow-up/deletion spectra, Kronecker doubling, the
// complement trace identity, and the polygon family monotonicity.
inline VerifyReport verify_lemmas(const OptimizerConfig& cfg) {
  detail::Stopwatch clock;
  VerifyReport rep;
  Rng rng(cfg.seed);

  {  // blow-up weight merging: spectrum unchanged apart from one zero
    double worst = 0.0;
    bool zero_found = true;
    for (int trial = 0; trial < 200; ++trial) {
      const int base = rng.uniform_int(1, 7);
      const int d = base + 1;
      const SignMatrix a_base = detail::random_sign_matrix_of(rng, base);
      const int dup = rng.uniform_int(0, base - 1);
      const SignMatrix a = blow_up(a_base, dup);
      std::vector<int> units(static_cast<std::size_t>(d));
      int total = 0;
      for (auto& u : units) {
        u = rng.uniform_int(1, 5);
        total += u;
      }
      std::vector<double> w(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = static_cast<double>(units[static_cast<std::size_t>(i)]) / total;
      std::vector<double> w_base(w.begin(), w.end() - 1);
      w_base[static_cast<std::size_t>(dup)] += w[static_cast<std::size_t>(d - 1)];

      const Spectrum big = weighted_spectrum(a, w);
      const Spectrum small = weighted_spectrum(a_base, w_base);
      int zero_at = 0;
      for (int k = 1; k < d; ++k)
        if (std::abs(big.values[static_cast<std::size_t>(k)]) <
            std::abs(big.values[static_cast<std::size_t>(zero_at)]))
          zero_at = k;
      if (std::abs(big.values[static_cast<std::size_t>(zero_at)]) > 1e-9) zero_found = false;
      std::vector<double> reduced = big.values;
      reduced.erase(reduced.begin() + zero_at);
      for (int k = 0; k < base; ++k)
        worst = std::max(worst, std::abs(reduced[static_cast<std::size_t>(k)] -
                                         small.values[static_cast<std::size_t>(k)]));
    }
    rep.add("blow-up weight merging preserves the spectrum up to one zero entry",
            zero_found && worst <= 1e-9, "max deviation = " + format_screen(worst));
  }

  {  // Kronecker doubling and complement trace identity
    // pi_n(A)/d = pi_n(A (x) J_2)/(2d) needs lambda_n(A) >= 0 (the doubled
    // matrix pads the spectrum with zeros, which outrank negative
    // eigenvalues); below the positive index we check the exact doubled
    // spectrum {2 lambda} + {0}^d instead.
    double worst_double = 0.0, worst_spectrum = 0.0, worst_complement = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int d = rng.uniform_int(1, 8);
      const SignMatrix a = detail::random_sign_matrix_of(rng, d);
      const Spectrum spec = eigenvalues(a.to_sym());
      const Spectrum spec2 = eigenvalues(kronecker_double(a).to_sym());
      const Spectrum specc = eigenvalues(complement(a).to_sym());

      std::vector<double> expected;
      for (double v : spec.values) expected.push_back(2.0 * v);
      expected.insert(expected.end(), static_cast<std::size_t>(d), 0.0);
      std::sort(expected.begin(), expected.end(), std::greater<>());
      for (int k = 0; k < 2 * d; ++k)
        worst_spectrum = std::max(worst_spectrum, std::abs(spec2.values[static_cast<std::size_t>(k)] -
                                                           expected[static_cast<std::size_t>(k)]));

      for (int n = 1; n <= d; ++n) {
        if (spec.values[static_cast<std::size_t>(n - 1)] >= 0.0) {
          const double lhs = partial_sum(spec, n) / d;
          const double rhs = partial_sum(spec2, n) / (2.0 * d);
          worst_double = std::max(worst_double, std::abs(lhs - rhs));
        }
        const double comp = n == d ? 0.0 : partial_sum(specc, d - n);
        const double identity = d + comp - 2.0 * (d - n);
        worst_complement = std::max(worst_complement, std::abs(partial_sum(spec, n) - identity));
      }
    }
    rep.add("Kronecker doubling preserves the normalized objective", worst_double <= 1e-10,
            "max deviation = " + format_screen(worst_double));
    rep.add("Kronecker doubling doubles the spectrum and pads zeros", worst_spectrum <= 1e-10,
            "max deviation = " + format_screen(worst_spectrum));
    rep.add("complement trace identity holds", worst_complement <= 1e-9,
            "max deviation = " + format_screen(worst_complement));
  }

  {  // polygon family: nonincreasing normalized objective, doubled top eigenvalue
    bool monotone = true, doubled = true;
    double prev = 0.0;
    for (int n = 1; n <= 10; ++n) {
      const int d = 2 * n + 1;
      const SignMatrix r = polygon_matrix(n);
      const Spectrum spec = eigenvalues(r.to_sym());
      const double v = partial_sum(spec, 2) / d;
      if (n > 1 && v > prev + 1e-9) monotone = false;
      prev = v;
      if (spec.values[0] - spec.values[1] > 1e-8) doubled = false;
    }
    rep.add("polygon family objective is nonincreasing in the order", monotone, "");
    rep.add("polygon family top eigenvalue has multiplicity at least two", doubled, "");
  }

  rep.elapsed_seconds = clock.seconds();
  return rep;
}

}  // namespace projconst
