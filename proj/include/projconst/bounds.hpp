#pragma once

#include <cmath>
#include <stdexcept>

namespace projconst {

// Kadets-Snobar bound: Pi_n <= sqrt(n).
inline double kadets_snobar(int n) {
  if (n < 1) throw std::invalid_argument("kadets_snobar: n must be >= 1");
  return std::sqrt(static_cast<double>(n));
}

// Koenig-Lewis-Lin bound: Pi(n,d) <= n/d + sqrt((d-1)(n/d)(1-n/d)), with
// equality exactly when R^n admits d distinct equiangular lines.
inline double kll_upper(int n, int d) {
  if (n < 1 || d < n) throw std::invalid_argument("kll_upper: require 1 <= n <= d");
  const double r = static_cast<double>(n) / d;
  return r + std::sqrt((d - 1) * r * (1.0 - r));
}

// Bohnenblust: Pi(d-1,d) <= 2 - 2/d.
inline double bohnenblust_upper(int d) {
  if (d < 2) throw std::invalid_argument("bohnenblust_upper: d must be >= 2");
  return 2.0 - 2.0 / d;
}

// Pi(d-n,d) <= Pi_n + 1; the caller supplies a valid upper bound for Pi_n.
inline double lift_upper(int n, int d, double pi_n_value) {
  if (n < 1 || d < n) throw std::invalid_argument("lift_upper: require 1 <= n <= d");
  return pi_n_value + 1.0;
}

// Monic cubic x^3 + b x^2 + c x + e.
struct Cubic {
  double b = 0.0;
  double c = 0.0;
  double e = 0.0;

  double eval(double x) const { return ((x + b) * x + c) * x + e; }

  // 18bce - 4b^3 e + b^2 c^2 - 4c^3 - 27e^2; nonnegative iff all roots real.
  double discriminant() const {
    return 18.0 * b * c * e - 4.0 * b * b * b * e + b * b * c * c - 4.0 * c * c * c -
           27.0 * e * e;
  }
};

constexpr double kCubicDiscriminantTolerance = -1e-12;
constexpr double kCubicDegenerateTolerance = 1e-12;

// Upper bound for the largest root of a cubic with three real roots:
//   x1 <= (1/3)(-b + sqrt(3) sqrt(-A) + C/(6(-A))),
// A = 3c - b^2, C = -(2b^3 - 9bc + 27e). The bound comes from linearizing the
// trigonometric root formula and is exact when C = 0 (roots in arithmetic
// progression). A triple root (-A ~ 0) returns -b/3.
inline double cubic_root_upper(const Cubic& p) {
  if (p.discriminant() < kCubicDiscriminantTolerance)
    throw std::domain_error("cubic_root_upper: cubic does not have three real roots");
  const double minus_a = p.b * p.b - 3.0 * p.c;
  if (minus_a <= kCubicDegenerateTolerance) return -p.b / 3.0;
  const double big_c = -(2.0 * p.b * p.b * p.b - 9.0 * p.b * p.c + 27.0 * p.e);
  return (-p.b + std::sqrt(3.0) * std::sqrt(minus_a) + big_c / (6.0 * minus_a)) / 3.0;
}

// Cubic whose roots are the pairwise root sums (x1+x2, x1+x3, x2+x3) of p,
// from Vieta's formulas: with e1, e2, e3 the elementary symmetric values,
//   x^3 - 2e1 x^2 + (e1^2 + e2) x - (e1 e2 - e3).
inline Cubic pair_sum_cubic(const Cubic& p) {
  const double e1 = -p.b;
  const double e2 = p.c;
  const double e3 = -p.e;
  Cubic h;
  h.b = -2.0 * e1;
  h.c = e1 * e1 + e2;
  h.e = -(e1 * e2 - e3);
  return h;
}

}  // namespace projconst
