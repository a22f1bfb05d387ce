#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "projconst/errors.hpp"
#include "projconst/parallel.hpp"
#include "projconst/twograph.hpp"

namespace projconst {

// Sign matrix of the odd-polygon two-graph: vertex blocks {0}, {1..n},
// {n+1..2n}, with the strict lower triangle of the (1..n) x (n+1..2n) block
// negative. At n = 1 this is R_3 = [[1,1,-1],[1,1,1],[-1,1,1]]; the coherent
// triples are exactly the vertex triples of a regular (2n+1)-gon whose closed
// convex hull contains the center.
inline SignMatrix polygon_matrix(int n) {
  if (n < 1) throw std::invalid_argument("polygon_matrix: n must be >= 1");
  const int d = 2 * n + 1;
  SignMatrix m(d);
  for (int c = 0; c < n; ++c) m.set_sign(0, n + 1 + c, -1);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r > c) m.set_sign(1 + r, n + 1 + c, -1);
  return m;
}

inline SignMatrix a6() {
  return SignMatrix::from_rows({{1, 1, 1, 1, 1, 1},
                                {1, 1, 1, 1, -1, -1},
                                {1, 1, 1, -1, 1, -1},
                                {1, 1, -1, 1, -1, 1},
                                {1, -1, 1, -1, 1, 1},
                                {1, -1, -1, 1, 1, 1}});
}

// Flips every off-diagonal sign: complement(A) = 2*Id - A.
inline SignMatrix complement(const SignMatrix& a) {
  const int d = a.order();
  SignMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) out.set_sign(i, j, -a.sign(i, j));
  return out;
}

// A (x) J_2: every entry becomes a constant 2x2 block. Doubling preserves the
// normalized objective, pi_n(A)/d = pi_n(A (x) J_2)/(2d).
inline SignMatrix kronecker_double(const SignMatrix& a) {
  const int d = a.order();
  SignMatrix out(2 * d);
  for (int i = 0; i < 2 * d; ++i)
    for (int j = i + 1; j < 2 * d; ++j)
      if (i / 2 != j / 2) out.set_sign(i, j, a.sign(i / 2, j / 2));
  return out;
}

constexpr int kCanonicalOrderBudget = 9;

namespace detail {

// Per-labeling switching normal form: re-switch so that row 0 is all +1; the
// class entries a'_{ij} = a_{ij} a_{0i} a_{0j} for 1 <= i < j are a complete
// switching invariant of the labeling. One char per pair, '1' = negative.
inline void normal_form_bits(const SignMatrix& a, const std::vector<int>& tau, std::string& out) {
  const int d = a.order();
  int pos = 0;
  for (int i = 1; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const int s = a.sign(tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)]) *
                    a.sign(tau[0], tau[static_cast<std::size_t>(i)]) *
                    a.sign(tau[0], tau[static_cast<std::size_t>(j)]);
      out[static_cast<std::size_t>(pos++)] = s < 0 ? '1' : '0';
    }
}

inline SignMatrix decode_normal_form(int d, const std::string& bits) {
  SignMatrix m(d);
  int pos = 0;
  for (int i = 1; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      if (bits[static_cast<std::size_t>(pos++)] == '1') m.set_sign(i, j, -1);
    }
  return m;
}

}  // namespace detail

// Canonical switching-isomorphism key: the lexicographically minimal
// normal-form encoding over all vertex relabelings. Equal strings iff the
// matrices are switching-isomorphic (same two-graph up to relabeling).
inline std::string canonical_form(const SignMatrix& a) {
  const int d = a.order();
  if (d > kCanonicalOrderBudget)
    throw BudgetError("canonical_form: order " + std::to_string(d) + " exceeds budget " +
                      std::to_string(kCanonicalOrderBudget));
  const int nbits = (d - 1) * (d - 2) / 2;
  std::vector<int> tau(static_cast<std::size_t>(d));
  std::iota(tau.begin(), tau.end(), 0);
  std::string best;
  std::string cur(static_cast<std::size_t>(nbits), '0');
  do {
    if (best.empty()) {
      detail::normal_form_bits(a, tau, cur);
      best = cur;
      continue;
    }
    // early-exit scan against the current best
    int pos = 0;
    int cmp = 0;  // 0 equal so far, -1 smaller, +1 larger
    for (int i = 1; i < d && cmp <= 0; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const int s = a.sign(tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)]) *
                      a.sign(tau[0], tau[static_cast<std::size_t>(i)]) *
                      a.sign(tau[0], tau[static_cast<std::size_t>(j)]);
        const char bit = s < 0 ? '1' : '0';
        cur[static_cast<std::size_t>(pos)] = bit;
        if (cmp == 0) {
          if (bit < best[static_cast<std::size_t>(pos)])
            cmp = -1;
          else if (bit > best[static_cast<std::size_t>(pos)]) {
            cmp = 1;
            break;
          }
        }
        ++pos;
      }
    }
    if (cmp < 0) best = cur;
  } while (std::next_permutation(tau.begin(), tau.end()));
  return best;
}

inline SignMatrix canonical_representative(int d, const std::string& canonical_bits) {
  return detail::decode_normal_form(d, canonical_bits);
}

constexpr int kCensusOrderBudgetLow = 3;
constexpr int kCensusOrderBudgetHigh = 7;

// Census of switching classes up to isomorphism. Every class has a
// representative with row 0 all +1, so the 2^C(d-1,2) normal-form seeds cover
// everything; a seed is kept iff no relabeling produces a strictly smaller
// encoding, which makes the kept seed the canonical form of its class.
// Output is sorted by canonical encoding. d = 6 yields 16 classes.
inline std::vector<SignMatrix> enumerate_two_graphs(int d, int jobs = 0) {
  if (d < kCensusOrderBudgetLow || d > kCensusOrderBudgetHigh)
    throw BudgetError("enumerate_two_graphs: order " + std::to_string(d) +
                      " outside budget [3, 7]");
  const int nbits = (d - 1) * (d - 2) / 2;
  const std::uint32_t seeds = 1u << nbits;

  std::vector<std::uint8_t> keep(seeds, 0);
  parallel_for(static_cast<int>(seeds), jobs, [&](int seed_index) {
    const auto mask = static_cast<std::uint32_t>(seed_index);
    // bit pos encodes pair (i,j), 1 <= i < j, in the canonical scan order;
    // '1' (negative) sorts above '0', so bit set means sign -1.
    SignMatrix m(d);
    {
      int pos = 0;
      for (int i = 1; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          if (mask & (1u << pos)) m.set_sign(i, j, -1);
          ++pos;
        }
    }
    std::vector<int> tau(static_cast<std::size_t>(d));
    std::iota(tau.begin(), tau.end(), 0);
    bool minimal = true;
    do {
      int pos = 0;
      int cmp = 0;
      for (int i = 1; i < d && cmp == 0; ++i) {
        for (int j = i + 1; j < d; ++j) {
          const int s = m.sign(tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)]) *
                        m.sign(tau[0], tau[static_cast<std::size_t>(i)]) *
                        m.sign(tau[0], tau[static_cast<std::size_t>(j)]);
          const int bit = s < 0 ? 1 : 0;
          const int ref = (mask >> pos) & 1u;
          if (bit != ref) {
            cmp = bit < ref ? -1 : 1;
            break;
          }
          ++pos;
        }
      }
      if (cmp < 0) {
        minimal = false;
        break;
      }
    } while (std::next_permutation(tau.begin(), tau.end()));
    keep[mask] = minimal ? 1 : 0;
  });

  std::vector<SignMatrix> out;
  for (std::uint32_t mask = 0; mask < seeds; ++mask) {
    if (!keep[mask]) continue;
    std::string bits(static_cast<std::size_t>(nbits), '0');
    for (int pos = 0; pos < nbits; ++pos)
      if (mask & (1u << pos)) bits[static_cast<std::size_t>(pos)] = '1';
    out.push_back(detail::decode_normal_form(d, bits));
  }
  return out;
}

// The classification seed set for K_4-free two-graphs: all principal
// submatrices of a6() (deduplicated up to switching isomorphism) together with
// the polygon family up to the requested order.
inline std::vector<SignMatrix> omega_members(int max_order) {
  if (max_order < 3) throw std::invalid_argument("omega_members: max_order must be >= 3");
  std::vector<SignMatrix> out;
  std::map<std::pair<int, std::string>, bool> seen;
  auto add = [&](const SignMatrix& m) {
    const auto key = std::make_pair(m.order(), canonical_form(m));
    if (seen.emplace(key, true).second) out.push_back(m);
  };

  const SignMatrix base = a6();
  for (int subset = 1; subset < (1 << 6); ++subset) {
    std::vector<int> idx;
    for (int v = 0; v < 6; ++v)
      if (subset & (1 << v)) idx.push_back(v);
    add(base.principal_submatrix(idx));
  }
  for (int n = 1; 2 * n + 1 <= max_order; ++n) add(polygon_matrix(n));
  return out;
}

}  // namespace projconst
