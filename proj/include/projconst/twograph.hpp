#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "projconst/core_spectra.hpp"
#include "projconst/errors.hpp"
#include "projconst/parallel.hpp"

namespace projconst {

// Simple graph on vertices {0..d-1}: no loops, no multi-edges.
class Graph {
 public:
  explicit Graph(int order) : d_(order) {
    if (order < 1) throw std::invalid_argument("Graph: order must be >= 1");
  }

  static Graph from_edges(int order, const std::vector<std::pair<int, int>>& edges) {
    Graph g(order);
    for (const auto& [i, j] : edges) g.add_edge(i, j);
    return g;
  }

  void add_edge(int i, int j) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw std::invalid_argument("Graph: loops not allowed");
    edges_.insert(std::minmax(i, j));
  }

  bool has_edge(int i, int j) const { return edges_.count(std::minmax(i, j)) > 0; }
  int order() const { return d_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= d_) throw std::invalid_argument("Graph: vertex out of range");
  }
  int d_;
  std::set<std::pair<int, int>> edges_;
};

// Symmetric {+1,-1} matrix with unit diagonal: identity plus a Seidel
// adjacency matrix. The off-diagonal sign pattern is the search variable.
class SignMatrix {
 public:
  explicit SignMatrix(int order) : d_(order), a_(static_cast<std::size_t>(order) * order, +1) {
    if (order < 1) throw std::invalid_argument("SignMatrix: order must be >= 1");
  }

  static SignMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    const int d = static_cast<int>(rows.size());
    SignMatrix m(d);
    for (int i = 0; i < d; ++i) {
      if (static_cast<int>(rows[i].size()) != d)
        throw std::invalid_argument("SignMatrix: ragged rows");
      for (int j = 0; j < d; ++j) {
        const int v = rows[i][j];
        if (i == j) {
          if (v != 1) throw std::invalid_argument("SignMatrix: diagonal must be +1");
        } else if (v != 1 && v != -1) {
          throw std::invalid_argument("SignMatrix: entries must be +1 or -1");
        }
        m.a_[m.idx(i, j)] = static_cast<std::int8_t>(v);
      }
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (m.sign(i, j) != m.sign(j, i))
          throw std::invalid_argument("SignMatrix: input not symmetric");
    return m;
  }

  int order() const { return d_; }
  int sign(int i, int j) const { return a_[idx(i, j)]; }

  void set_sign(int i, int j, int s) {
    if (i == j) throw std::invalid_argument("SignMatrix: diagonal is fixed at +1");
    if (s != 1 && s != -1) throw std::invalid_argument("SignMatrix: sign must be +1 or -1");
    a_[idx(i, j)] = static_cast<std::int8_t>(s);
    a_[idx(j, i)] = static_cast<std::int8_t>(s);
  }

  void flip(int i, int j) { set_sign(i, j, -sign(i, j)); }

  SymMatrix to_sym() const {
    SymMatrix m(d_);
    for (int i = 0; i < d_; ++i)
      for (int j = i; j < d_; ++j) m.set(i, j, static_cast<double>(sign(i, j)));
    return m;
  }

  SignMatrix principal_submatrix(const std::vector<int>& indices) const {
    if (indices.empty()) throw std::invalid_argument("principal_submatrix: empty index set");
    const int s = static_cast<int>(indices.size());
    SignMatrix m(s);
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) m.set_sign(i, j, sign(indices[i], indices[j]));
    return m;
  }

  friend bool operator==(const SignMatrix& x, const SignMatrix& y) {
    return x.d_ == y.d_ && x.a_ == y.a_;
  }

 private:
  std::size_t idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= d_ || j >= d_) throw std::out_of_range("SignMatrix index");
    return static_cast<std::size_t>(i) * d_ + j;
  }
  int d_;
  std::vector<std::int8_t> a_;
};

// a_ij = -1 exactly on edges.
inline SignMatrix sign_matrix_of_graph(const Graph& g) {
  SignMatrix m(g.order());
  for (const auto& [i, j] : g.edges()) m.set_sign(i, j, -1);
  return m;
}

inline Graph graph_of_sign_matrix(const SignMatrix& a) {
  Graph g(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = i + 1; j < a.order(); ++j)
      if (a.sign(i, j) == -1) g.add_edge(i, j);
  return g;
}

// Seidel switching: negate signs on pairs crossing the subset boundary.
inline SignMatrix switch_subset(const SignMatrix& a, const std::vector<int>& subset) {
  const int d = a.order();
  std::vector<bool> in(static_cast<std::size_t>(d), false);
  for (int v : subset) {
    if (v < 0 || v >= d) throw std::invalid_argument("switch_subset: vertex out of range");
    in[static_cast<std::size_t>(v)] = true;
  }
  SignMatrix out = a;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (in[static_cast<std::size_t>(i)] != in[static_cast<std::size_t>(j)])
        out.set_sign(i, j, -a.sign(i, j));
  return out;
}

// Switching-class invariant of a sign matrix: the set of coherent triples.
// The cocycle condition (every 4-subset carries an even number of coherent
// triples) is validated at construction.
class TwoGraph {
 public:
  TwoGraph(int order, std::vector<std::array<int, 3>> triples) : d_(order) {
    if (order < 1) throw std::invalid_argument("TwoGraph: order must be >= 1");
    lut_.assign(static_cast<std::size_t>(d_) * d_ * d_, false);
    for (auto t : triples) {
      std::sort(t.begin(), t.end());
      if (t[0] < 0 || t[2] >= d_ || t[0] == t[1] || t[1] == t[2])
        throw std::invalid_argument("TwoGraph: invalid triple");
      if (!lut_[rank(t[0], t[1], t[2])]) {
        lut_[rank(t[0], t[1], t[2])] = true;
        triples_.push_back(t);
      }
    }
    std::sort(triples_.begin(), triples_.end());
    validate_cocycle();
  }

  int order() const { return d_; }
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }

  bool coherent(int i, int j, int k) const {
    int a = i, b = j, c = k;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return lut_[rank(a, b, c)];
  }

  friend bool operator==(const TwoGraph& x, const TwoGraph& y) {
    return x.d_ == y.d_ && x.triples_ == y.triples_;
  }

 private:
  std::size_t rank(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * d_ + j) * d_ + k;
  }

  void validate_cocycle() const {
    for (int p = 0; p < d_; ++p)
      for (int q = p + 1; q < d_; ++q)
        for (int r = q + 1; r < d_; ++r)
          for (int s = r + 1; s < d_; ++s) {
            const int count = coherent(p, q, r) + coherent(p, q, s) + coherent(p, r, s) +
                              coherent(q, r, s);
            if (count % 2 != 0)
              throw std::invalid_argument("TwoGraph: cocycle condition violated");
          }
  }

  int d_;
  std::vector<std::array<int, 3>> triples_;
  std::vector<bool> lut_;
};

// A triple is coherent when its off-diagonal signs multiply to -1, i.e. the
// underlying graph has an odd number of edges on it.
inline TwoGraph two_graph_of(const SignMatrix& a) {
  const int d = a.order();
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        if (a.sign(i, j) * a.sign(j, k) * a.sign(i, k) == -1) triples.push_back({i, j, k});
  return TwoGraph(d, std::move(triples));
}

inline bool switching_equivalent(const SignMatrix& a, const SignMatrix& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("switching_equivalent: order mismatch");
  return two_graph_of(a) == two_graph_of(b);
}

// True when no m-subset of vertices has all of its triples coherent.
// Depth-first extension with incremental triple checks.
inline bool is_clique_free(const TwoGraph& t, int m) {
  if (m < 3) throw std::invalid_argument("is_clique_free: m must be >= 3");
  const int d = t.order();
  if (m > d) return true;
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(m));
  std::function<bool(int)> extend = [&](int start) -> bool {  // true = clique found
    if (static_cast<int>(picked.size()) == m) return true;
    const int needed = m - static_cast<int>(picked.size());
    for (int v = start; v + needed <= d; ++v) {
      bool ok = true;
      for (std::size_t x = 0; x < picked.size() && ok; ++x)
        for (std::size_t y = x + 1; y < picked.size() && ok; ++y)
          ok = t.coherent(picked[x], picked[y], v);
      if (!ok) continue;
      picked.push_back(v);
      if (extend(v + 1)) return true;
      picked.pop_back();
    }
    return false;
  };
  return !extend(0);
}

// Appends a duplicate of row/column i; the twin pair is coupled by +1, so the
// new vertex forms no coherent triple with its twin.
inline SignMatrix blow_up(const SignMatrix& a, int i) {
  const int d = a.order();
  if (i < 0 || i >= d) throw std::invalid_argument("blow_up: index out of range");
  SignMatrix out(d + 1);
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) out.set_sign(p, q, a.sign(p, q));
  for (int p = 0; p < d; ++p)
    if (p != i) out.set_sign(d, p, a.sign(i, p));
  // out(d, i) stays +1 = a(i, i)
  return out;
}

// Vertex j becomes a class of multiplicities[j] mutually +1 duplicates.
inline SignMatrix blow_up_profile(const SignMatrix& a, const std::vector<int>& multiplicities) {
  const int d = a.order();
  if (static_cast<int>(multiplicities.size()) != d)
    throw std::invalid_argument("blow_up_profile: multiplicity vector length mismatch");
  for (int m : multiplicities)
    if (m < 1) throw std::invalid_argument("blow_up_profile: multiplicities must be >= 1");
  SignMatrix out = a;
  for (int j = 0; j < d; ++j)
    for (int rep = 1; rep < multiplicities[j]; ++rep) out = blow_up(out, j);
  return out;
}

// Signed permutation Q = P * Diag(signs) with P_{ij} = [j == perm[i]].
// Conjugation acts entrywise as (Q A Q^t)_{ij} = s_{perm[i]} s_{perm[j]} A_{perm[i], perm[j]}.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<std::int8_t> signs;

  static SignedPermutation identity(int d) {
    SignedPermutation q;
    q.perm.resize(static_cast<std::size_t>(d));
    std::iota(q.perm.begin(), q.perm.end(), 0);
    q.signs.assign(static_cast<std::size_t>(d), +1);
    return q;
  }

  int order() const { return static_cast<int>(perm.size()); }

  SignedPermutation negated() const {
    SignedPermutation q = *this;
    for (auto& s : q.signs) s = static_cast<std::int8_t>(-s);
    return q;
  }

  friend bool operator==(const SignedPermutation& x, const SignedPermutation& y) {
    return x.perm == y.perm && x.signs == y.signs;
  }
  friend bool operator<(const SignedPermutation& x, const SignedPermutation& y) {
    if (x.perm != y.perm) return x.perm < y.perm;
    return x.signs < y.signs;
  }
};

inline SignMatrix conjugate(const SignedPermutation& q, const SignMatrix& a) {
  const int d = a.order();
  if (q.order() != d) throw std::invalid_argument("conjugate: order mismatch");
  SignMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const int s = q.signs[static_cast<std::size_t>(q.perm[static_cast<std::size_t>(i)])] *
                    q.signs[static_cast<std::size_t>(q.perm[static_cast<std::size_t>(j)])];
      out.set_sign(i, j, s * a.sign(q.perm[static_cast<std::size_t>(i)],
                                    q.perm[static_cast<std::size_t>(j)]));
    }
  return out;
}

inline SignedPermutation compose(const SignedPermutation& q1, const SignedPermutation& q2) {
  const int d = q1.order();
  if (q2.order() != d) throw std::invalid_argument("compose: order mismatch");
  SignedPermutation out;
  out.perm.resize(static_cast<std::size_t>(d));
  out.signs.resize(static_cast<std::size_t>(d));
  std::vector<int> inv2(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) inv2[static_cast<std::size_t>(q2.perm[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < d; ++i)
    out.perm[static_cast<std::size_t>(i)] =
        q2.perm[static_cast<std::size_t>(q1.perm[static_cast<std::size_t>(i)])];
  for (int k = 0; k < d; ++k)
    out.signs[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(
        q2.signs[static_cast<std::size_t>(k)] *
        q1.signs[static_cast<std::size_t>(inv2[static_cast<std::size_t>(k)])]);
  return out;
}

inline SignedPermutation inverse(const SignedPermutation& q) {
  const int d = q.order();
  SignedPermutation out;
  out.perm.resize(static_cast<std::size_t>(d));
  out.signs.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out.perm[static_cast<std::size_t>(q.perm[static_cast<std::size_t>(i)])] = i;
  for (int k = 0; k < d; ++k)
    out.signs[static_cast<std::size_t>(k)] = q.signs[static_cast<std::size_t>(q.perm[static_cast<std::size_t>(k)])];
  return out;
}

constexpr int kStabilizerOrderBudget = 10;

// All signed permutations Q with Q A Q^t = A. For each permutation the sign
// vector is forced by one free sign: with h_i := signs[perm[i]],
//   a_{0j} = h_0 h_j a_{perm(0),perm(j)}  propagates h from h_0 = +1,
// and the candidate is verified on all pairs, so the cost is O(d! d^2).
// Valid sign vectors come in +/- pairs, hence the group always contains
// +Identity and -Identity and has even size. Output is sorted by
// (permutation, signs) and is independent of the worker count.
inline std::vector<SignedPermutation> stabilizer(const SignMatrix& a, int jobs = 0) {
  const int d = a.order();
  if (d > kStabilizerOrderBudget)
    throw BudgetError("stabilizer: order " + std::to_string(d) + " exceeds brute-force budget " +
                      std::to_string(kStabilizerOrderBudget));

  // Fan out over the first image value; each chunk scans its own permutations.
  std::vector<std::vector<SignedPermutation>> found(static_cast<std::size_t>(d));
  parallel_for(d, jobs, [&](int first) {
    std::vector<int> rest;
    for (int v = 0; v < d; ++v)
      if (v != first) rest.push_back(v);
    std::vector<int> tau(static_cast<std::size_t>(d));
    tau[0] = first;
    std::vector<int> h(static_cast<std::size_t>(d));
    do {
      for (int i = 1; i < d; ++i) tau[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(i - 1)];
      h[0] = +1;
      for (int j = 1; j < d; ++j)
        h[static_cast<std::size_t>(j)] = a.sign(tau[0], tau[static_cast<std::size_t>(j)]) * a.sign(0, j);
      bool ok = true;
      for (int i = 1; i < d && ok; ++i)
        for (int j = i + 1; j < d && ok; ++j)
          ok = a.sign(i, j) == h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(j)] *
                                   a.sign(tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)]);
      if (ok) {
        SignedPermutation q;
        q.perm = tau;
        q.signs.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
          q.signs[static_cast<std::size_t>(tau[static_cast<std::size_t>(i)])] =
              static_cast<std::int8_t>(h[static_cast<std::size_t>(i)]);
        found[static_cast<std::size_t>(first)].push_back(q);
        found[static_cast<std::size_t>(first)].push_back(q.negated());
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  std::vector<SignedPermutation> group;
  for (const auto& chunk : found) group.insert(group.end(), chunk.begin(), chunk.end());
  std::sort(group.begin(), group.end());
  return group;
}

// Disjoint index blocks covering {0..d-1}, sorted by least element.
struct OrbitPartition {
  std::vector<std::vector<int>> blocks;

  int block_of(int v) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int x : blocks[b])
        if (x == v) return static_cast<int>(b);
    throw std::invalid_argument("OrbitPartition: vertex not covered");
  }
};

inline OrbitPartition orbit_decomposition_of_group(int d, const std::vector<SignedPermutation>& group) {
  std::vector<int> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& q : group)
    for (int k = 0; k < d; ++k) {
      const int rx = find(k), ry = find(q.perm[static_cast<std::size_t>(k)]);
      if (rx != ry) parent[static_cast<std::size_t>(std::max(rx, ry))] = std::min(rx, ry);
    }
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) blocks[static_cast<std::size_t>(find(k))].push_back(k);
  OrbitPartition out;
  for (auto& b : blocks)
    if (!b.empty()) out.blocks.push_back(std::move(b));
  return out;
}

// Orbits of the index action (Q, k) -> perm(k) of Stab(A).
inline OrbitPartition orbit_decomposition(const SignMatrix& a, int jobs = 0) {
  return orbit_decomposition_of_group(a.order(), stabilizer(a, jobs));
}

}  // namespace projconst
