#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "projconst/errors.hpp"

namespace projconst {

// Dense real symmetric matrix. Symmetry is structural: set() writes both
// triangles, from_rows() rejects asymmetric input.
class SymMatrix {
 public:
  explicit SymMatrix(int order) : d_(order), a_(static_cast<std::size_t>(order) * order, 0.0) {
    if (order < 1) throw std::invalid_argument("SymMatrix: order must be >= 1");
  }

  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const int d = static_cast<int>(rows.size());
    SymMatrix m(d);
    for (int i = 0; i < d; ++i) {
      if (static_cast<int>(rows[i].size()) != d)
        throw std::invalid_argument("SymMatrix: ragged rows");
      for (int j = 0; j < d; ++j) m.a_[m.idx(i, j)] = rows[i][j];
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (m(i, j) != m(j, i)) throw std::invalid_argument("SymMatrix: input not symmetric");
    return m;
  }

  int order() const { return d_; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, double v) {
    a_[idx(i, j)] = v;
    a_[idx(j, i)] = v;
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < d_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

 private:
  std::size_t idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= d_ || j >= d_) throw std::out_of_range("SymMatrix index");
    return static_cast<std::size_t>(i) * d_ + j;
  }
  int d_;
  std::vector<double> a_;
};

// Eigenvalues sorted nonincreasing, multiplicities kept.
struct Spectrum {
  std::vector<double> values;

  Spectrum() = default;
  explicit Spectrum(std::vector<double> sorted_desc) : values(std::move(sorted_desc)) {
    for (std::size_t k = 1; k < values.size(); ++k)
      if (values[k - 1] < values[k]) throw std::invalid_argument("Spectrum: not nonincreasing");
  }

  int size() const { return static_cast<int>(values.size()); }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
};

// Point of the weight simplex: nonnegative entries, total mass one.
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit WeightVector(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw std::invalid_argument("WeightVector: empty");
    double sum = 0.0;
    for (double wi : w_) {
      if (wi < 0.0) throw std::invalid_argument("WeightVector: negative weight");
      sum += wi;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
      throw std::invalid_argument("WeightVector: weights must sum to 1, got " + std::to_string(sum));
  }

  static WeightVector uniform(int d) {
    return WeightVector(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
  }

  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return w_; }

 private:
  std::vector<double> w_;
};

// Full eigendecomposition; vector(i, k) is coordinate i of the k-th eigenvector,
// paired with values[k].
struct EigenDecomposition {
  std::vector<double> values;  // nonincreasing
  std::vector<double> vectors;  // row-major d x d, column k = eigenvector k
  int order = 0;

  double vector(int i, int k) const { return vectors[static_cast<std::size_t>(i) * order + k]; }
  Spectrum spectrum() const { return Spectrum(values); }
};

struct JacobiOptions {
  double off_tol_factor = 1e-14;  // stop when off-diagonal norm <= factor * ||M||_F
  int max_sweeps = 100;
};

// Cyclic Jacobi diagonalization. Unconditionally convergent on symmetric input
// at these orders (d <= ~24); eigenvectors are accumulated rotations.
inline EigenDecomposition eigen_sym(const SymMatrix& m, const JacobiOptions& opt = {}) {
  const int d = m.order();
  std::vector<double> a(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(i) * d + j] = m(i, j);
  std::vector<double> v(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i) * d + i] = 1.0;

  auto at = [&](std::vector<double>& x, int i, int j) -> double& {
    return x[static_cast<std::size_t>(i) * d + j];
  };
  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) s += 2.0 * at(a, i, j) * at(a, i, j);
    return std::sqrt(s);
  };

  const double target = opt.off_tol_factor * m.frobenius_norm();
  bool converged = off_norm() <= target;
  for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const double vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= target;
  }
  if (!converged)
    throw ConvergenceError("eigen_sym: off-diagonal tolerance not reached within sweep cap");

  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int x, int y) { return at(a, x, x) > at(a, y, y); });

  EigenDecomposition out;
  out.order = d;
  out.values.resize(static_cast<std::size_t>(d));
  out.vectors.resize(static_cast<std::size_t>(d) * d);
  for (int k = 0; k < d; ++k) {
    out.values[static_cast<std::size_t>(k)] = at(a, perm[static_cast<std::size_t>(k)],
                                                 perm[static_cast<std::size_t>(k)]);
    for (int i = 0; i < d; ++i)
      out.vectors[static_cast<std::size_t>(i) * d + k] = at(v, i, perm[static_cast<std::size_t>(k)]);
  }
  return out;
}

inline Spectrum eigenvalues(const SymMatrix& m, const JacobiOptions& opt = {}) {
  return eigen_sym(m, opt).spectrum();
}

// Sum of the n largest eigenvalues.
inline double partial_sum(const Spectrum& spec, int n) {
  if (n < 1 || n > spec.size())
    throw std::invalid_argument("partial_sum: n out of range [1, " +
                                std::to_string(spec.size()) + "]");
  return std::accumulate(spec.values.begin(), spec.values.begin() + n, 0.0);
}

// Counts of eigenvalues above / within / below the zero tolerance 1e-9 * d.
struct Signature {
  int positive = 0;
  int zero = 0;
  int negative = 0;
};

inline Signature signature_of(const Spectrum& spec, double tol) {
  Signature s;
  for (double v : spec.values) {
    if (v > tol)
      ++s.positive;
    else if (v < -tol)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

inline Signature signature(const SymMatrix& m) {
  return signature_of(eigenvalues(m), 1e-9 * m.order());
}

}  // namespace projconst
