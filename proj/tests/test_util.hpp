#pragma once

// Shared helpers for the test suites: deterministic random generators and
// small brute-force oracles kept independent of the library's own
// enumeration and determinant paths.

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "arbordet/arbordet.hpp"

namespace testutil {

using namespace arbordet;

inline Polynomial v(int i, int j) {
  return Polynomial::symbol(weight_symbol(i, j).name);
}

inline SymbolicMatrix random_int_matrix(std::mt19937_64& rng, int n, int lo = -5,
                                        int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi);
  SymbolicMatrix a = SymbolicMatrix::zero(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) a.at(i, j) = Polynomial(d(rng));
  return a;
}

/// Random digraph with symbolic per-arc weights w_<k>; every arc slot
/// (i, j), i != j, j != 0 is kept with the given probability.
inline MatrixDigraph random_symbolic_digraph(std::mt19937_64& rng, int n,
                                             double density = 0.6) {
  std::bernoulli_distribution keep(density);
  std::vector<ArcInit> arcs;
  int k = 0;
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      if (i == j) continue;
      if (keep(rng))
        arcs.push_back({i, j, Polynomial::symbol("w_" + std::to_string(++k))});
    }
  return MatrixDigraph(n, std::move(arcs));
}

inline Polynomial random_polynomial(std::mt19937_64& rng, int max_terms = 4,
                                    int n_symbols = 4, int max_deg = 3) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> sym(0, n_symbols - 1);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  Polynomial p;
  int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    Polynomial term = Polynomial(Rational(num(rng), den(rng)));
    int d = deg(rng);
    for (int e = 0; e < d; ++e)
      term *= Polynomial::symbol(std::string(1, char('a' + sym(rng))));
    p += term;
  }
  return p;
}

/// Floyd-Warshall reachability closure over vertices 0..n.
inline std::vector<std::vector<char>> reach_closure(const MatrixDigraph& g) {
  int n = g.n();
  std::vector<std::vector<char>> r(n + 1, std::vector<char>(n + 1, 0));
  for (int v = 0; v <= n; ++v) r[v][v] = 1;
  for (const Arc& a : g.arcs()) r[a.source][a.target] = 1;
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = 1;
  return r;
}

/// Brute-force arborescence oracle: filter all n-element arc subsets by
/// direct checks (distinct targets, reachability of every vertex from the
/// root inside the subset). Exponential; for small digraphs only.
inline std::vector<std::vector<int>> brute_force_arborescences(
    const MatrixDigraph& g) {
  int n = g.n(), m = g.m();
  std::vector<std::vector<int>> found;
  if (m < n) return found;
  std::vector<int> ids(n);
  for (int k = 0; k < n; ++k) ids[k] = k + 1;
  for (;;) {
    std::vector<int> in_source(n + 1, -1);
    bool distinct = true;
    for (int id : ids) {
      const Arc& a = g.arc(id);
      if (in_source[a.target] != -1) {
        distinct = false;
        break;
      }
      in_source[a.target] = a.source;
    }
    if (distinct) {
      bool ok = true;
      for (int vtx = 1; vtx <= n && ok; ++vtx) {
        int cur = vtx, steps = 0;
        while (cur != 0) {
          cur = in_source[cur];
          if (cur == -1 || ++steps > n) {
            ok = false;
            break;
          }
        }
      }
      if (ok) found.push_back(ids);
    }
    int k = n - 1;
    while (k >= 0 && ids[k] == m - (n - 1 - k)) --k;
    if (k < 0) break;
    ++ids[k];
    for (int t = k + 1; t < n; ++t) ids[t] = ids[t - 1] + 1;
  }
  return found;
}

/// Count weak orderings (ordered set partitions) of n labeled elements by
/// direct enumeration of first blocks.
inline long long count_weak_orderings(int n) {
  if (n == 0) return 1;
  // iterate non-empty subsets of an n-element set as the first block
  long long total = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    total += count_weak_orderings(n - k);
  }
  return total;
}

/// Minimal number of pairwise exchanges turning q into an arrangement where
/// every element shared with p sits at its p-position; exhaustive iterative
/// deepening over swap sequences, independent of the library's search.
inline int brute_force_exchange_count(const std::vector<int>& p,
                                      const std::vector<int>& q, int depth_cap = 6) {
  int m = static_cast<int>(q.size());
  std::map<int, int> pos;
  for (int k = 0; k < m; ++k) pos[p[k]] = k;
  auto is_goal = [&](const std::vector<int>& state) {
    for (int k = 0; k < m; ++k) {
      auto it = pos.find(state[k]);
      if (it != pos.end() && it->second != k) return false;
    }
    return true;
  };
  std::function<bool(std::vector<int>&, int)> dfs = [&](std::vector<int>& s,
                                                        int left) {
    if (is_goal(s)) return true;
    if (left == 0) return false;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        std::swap(s[i], s[j]);
        if (dfs(s, left - 1)) {
          std::swap(s[i], s[j]);
          return true;
        }
        std::swap(s[i], s[j]);
      }
    return false;
  };
  for (int d = 0; d <= depth_cap; ++d) {
    std::vector<int> s = q;
    if (dfs(s, d)) return d;
  }
  return -1;
}

inline std::map<std::string, Rational> all_ones_assignment(int n) {
  std::map<std::string, Rational> a;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) a[weight_symbol(i, j).name] = 1;
  return a;
}

}  // namespace testutil
