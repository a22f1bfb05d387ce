#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "projconst/core_spectra.hpp"
#include "projconst/errors.hpp"
#include "projconst/twograph.hpp"

namespace projconst {

// Weighted spectral data for pi_n(sqrt(D) A sqrt(D)). Zero weights are handled
// by diagonalizing the principal submatrix on the support and padding the
// spectrum with zeros; the zero rows of sqrt(D) A sqrt(D) contribute exactly
// those zeros, and the submatrix route avoids 0/0 in the gradient
// parametrization.
struct WeightedEigen {
  std::vector<int> support;        // indices with positive weight
  EigenDecomposition restricted;   // eigenpairs of the support submatrix
  Spectrum padded;                 // restricted spectrum plus zeros, length d
};

namespace detail {

inline SymMatrix weighted_matrix(const SignMatrix& a, const std::vector<double>& w,
                                 const std::vector<int>& idx) {
  const int s = static_cast<int>(idx.size());
  std::vector<double> root(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) root[static_cast<std::size_t>(i)] = std::sqrt(w[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
  SymMatrix m(s);
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      m.set(i, j, root[static_cast<std::size_t>(i)] * root[static_cast<std::size_t>(j)] *
                      a.sign(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]));
  return m;
}

}  // namespace detail

inline WeightedEigen weighted_eigen(const SignMatrix& a, const std::vector<double>& w) {
  const int d = a.order();
  if (static_cast<int>(w.size()) != d)
    throw std::invalid_argument("weighted_eigen: weight length mismatch");
  WeightedEigen out;
  for (int i = 0; i < d; ++i) {
    if (w[static_cast<std::size_t>(i)] < 0.0)
      throw std::invalid_argument("weighted_eigen: negative weight");
    if (w[static_cast<std::size_t>(i)] > 0.0) out.support.push_back(i);
  }
  if (out.support.empty()) throw std::invalid_argument("weighted_eigen: all weights zero");
  out.restricted = eigen_sym(detail::weighted_matrix(a, w, out.support));

  std::vector<double> padded = out.restricted.values;
  padded.insert(padded.end(), static_cast<std::size_t>(d - static_cast<int>(out.support.size())), 0.0);
  std::stable_sort(padded.begin(), padded.end(), std::greater<>());
  out.padded = Spectrum(std::move(padded));
  return out;
}

// pi_n(sqrt(D) A sqrt(D)) for a nonnegative weight vector (not necessarily on
// the simplex; optimizers and finite-difference checks perturb the total mass).
inline double weighted_objective(const SignMatrix& a, const std::vector<double>& w, int n) {
  if (n < 1 || n > a.order())
    throw std::invalid_argument("weighted_objective: n out of range");
  return partial_sum(weighted_eigen(a, w).padded, n);
}

inline double weighted_objective(const SignMatrix& a, const WeightVector& d, int n) {
  return weighted_objective(a, d.values(), n);
}

inline Spectrum weighted_spectrum(const SignMatrix& a, const std::vector<double>& w) {
  return weighted_eigen(a, w).padded;
}

constexpr double kDefaultGapTolerance = 1e-8;

// Gradient of w -> pi_n(sqrt(D) A sqrt(D)) at a strictly positive weight
// vector: g_i = sum_{k<=n} lambda_k u_{k,i}^2 / w_i, from first-order
// perturbation of simple invariant subspaces. Differentiability needs the
// spectral gap at the cut; a closed gap raises GapError and callers fall back
// to a damped subgradient step with whatever eigenbasis was computed.
inline std::vector<double> objective_gradient(const SignMatrix& a, const std::vector<double>& w,
                                              int n, double gap_tol = kDefaultGapTolerance) {
  const int d = a.order();
  if (n < 1 || n > d) throw std::invalid_argument("objective_gradient: n out of range");
  if (static_cast<int>(w.size()) != d)
    throw std::invalid_argument("objective_gradient: weight length mismatch");
  for (double wi : w)
    if (wi <= 0.0) throw std::domain_error("objective_gradient: weights must be strictly positive");

  const EigenDecomposition eig = eigen_sym(detail::weighted_matrix(a, w, [&] {
    std::vector<int> all(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }()));
  if (n < d) {
    const double gap = eig.values[static_cast<std::size_t>(n - 1)] - eig.values[static_cast<std::size_t>(n)];
    if (gap <= gap_tol)
      throw GapError("objective_gradient: spectral gap " + std::to_string(gap) +
                     " at cut " + std::to_string(n) + " below tolerance");
  }
  std::vector<double> g(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += eig.values[static_cast<std::size_t>(k)] * eig.vector(i, k) * eig.vector(i, k);
    g[static_cast<std::size_t>(i)] = acc / w[static_cast<std::size_t>(i)];
  }
  return g;
}

inline Signature signature(const SignMatrix& a) { return signature(a.to_sym()); }

}  // namespace projconst
