#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arbordet/digraph.hpp"
#include "arbordet/error.hpp"
#include "arbordet/matrix.hpp"
#include "arbordet/polynomial.hpp"

namespace arbordet {

// ---------------------------------------------------------------------------
// Incidence and arc-weight matrices. Rows/columns follow the canonical arc
// order of the digraph, so both matrices are block-structured by target
// vertex.
// ---------------------------------------------------------------------------

/// (n+1) x m matrix with one -1 (source row) and one +1 (target row) per
/// column. Row index 0..n, column index 0..m-1 for arc ids 1..m.
struct IncidenceMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int8_t> e;  // row-major
  int at(int i, int k) const { return e[static_cast<std::size_t>(i) * cols + k]; }
};

/// m x (n+1) matrix whose row k has the weight of arc k+1 in the target
/// column; column 0 is all zeros.
struct ArcWeightMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Polynomial> e;  // row-major
  const Polynomial& at(int k, int j) const {
    return e[static_cast<std::size_t>(k) * cols + j];
  }
};

inline IncidenceMatrix build_incidence(const MatrixDigraph& g) {
  IncidenceMatrix m;
  m.rows = g.n() + 1;
  m.cols = g.m();
  m.e.assign(static_cast<std::size_t>(m.rows) * m.cols, 0);
  for (const Arc& a : g.arcs()) {
    int k = a.id - 1;
    m.e[static_cast<std::size_t>(a.target) * m.cols + k] = 1;
    m.e[static_cast<std::size_t>(a.source) * m.cols + k] = -1;
  }
  return m;
}

inline ArcWeightMatrix build_arc_weights(const MatrixDigraph& g) {
  ArcWeightMatrix w;
  w.rows = g.m();
  w.cols = g.n() + 1;
  w.e.assign(static_cast<std::size_t>(w.rows) * w.cols, Polynomial{});
  for (const Arc& a : g.arcs())
    w.e[static_cast<std::size_t>(a.id - 1) * w.cols + a.target] = a.weight;
  return w;
}

/// Check the factorization of the extended matrix into incidence times
/// arc-weight matrix, entry by entry and fully symbolically.
inline bool verify_factorization(const MatrixDigraph& g) {
  IncidenceMatrix m = build_incidence(g);
  ArcWeightMatrix w = build_arc_weights(g);
  SymbolicMatrix expected = matrix_from_digraph(g, /*extended=*/true);
  for (int i = 0; i <= g.n(); ++i)
    for (int j = 0; j <= g.n(); ++j) {
      Polynomial sum;
      for (int k = 0; k < g.m(); ++k) {
        int c = m.at(i, k);
        if (c == 1)
          sum += w.at(k, j);
        else if (c == -1)
          sum -= w.at(k, j);
      }
      if (sum != expected.at(i, j)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Exact determinants. Two independent routes are kept so the oracle can be
// cross-checked against itself: cofactor expansion and fraction-free
// (Bareiss) elimination over the polynomial ring.
// ---------------------------------------------------------------------------

namespace detail {

using Grid = std::vector<std::vector<Polynomial>>;

inline Grid to_grid(const SymbolicMatrix& a) {
  int lo = a.index_begin();
  int side = a.dim() - lo + 1;
  Grid g(side, std::vector<Polynomial>(side));
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) g[i][j] = a.at(i + lo, j + lo);
  return g;
}

inline Polynomial det_grid_cofactor(const Grid& g) {
  std::size_t n = g.size();
  if (n == 0) return Polynomial::one();
  if (n == 1) return g[0][0];
  Polynomial det;
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i][0].is_zero()) continue;
    Grid minor;
    minor.reserve(n - 1);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      minor.emplace_back(g[r].begin() + 1, g[r].end());
    }
    Polynomial term = g[i][0] * det_grid_cofactor(minor);
    if (i % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

inline Polynomial det_grid_fraction_free(Grid m) {
  std::size_t n = m.size();
  if (n == 0) return Polynomial::one();
  int sign = 1;
  Polynomial prev = Polynomial::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial{};
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = exact_div(num, prev);
        if (!q) throw Error("fraction-free elimination: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Polynomial{};
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace detail

/// Determinant by cofactor expansion along the first column.
inline Polynomial det_cofactor(const SymbolicMatrix& a) {
  return detail::det_grid_cofactor(detail::to_grid(a));
}

/// Determinant by fraction-free elimination; every intermediate division is
/// exact in the polynomial ring.
inline Polynomial det_fraction_free(const SymbolicMatrix& a) {
  return detail::det_grid_fraction_free(detail::to_grid(a));
}

/// The elimination oracle: exact determinant of a polynomial matrix.
inline Polynomial det_exact(const SymbolicMatrix& a) {
  int side = a.dim() - a.index_begin() + 1;
  return side <= 4 ? det_cofactor(a) : det_fraction_free(a);
}

// ---------------------------------------------------------------------------
// The combinatorial determinant path: n-arc submatrices with row 0 of the
// incidence part and column 0 of the weight part struck.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<const Arc*> subset_arcs(const MatrixDigraph& g,
                                           const std::vector<int>& ids) {
  if (static_cast<int>(ids.size()) != g.n())
    throw DomainError("arc subset must have exactly n = " +
                      std::to_string(g.n()) + " elements");
  std::vector<const Arc*> arcs;
  arcs.reserve(ids.size());
  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  for (int id : sorted) arcs.push_back(&g.arc(id));
  return arcs;
}

}  // namespace detail

/// Determinant of the weight submatrix W_S with column 0 struck: zero when
/// some vertex is entered twice within S, the product of the arc weights
/// otherwise.
inline Polynomial det_ws(const MatrixDigraph& g, const std::vector<int>& ids) {
  auto arcs = detail::subset_arcs(g, ids);
  int n = g.n();
  detail::Grid grid(n, std::vector<Polynomial>(n));
  for (int k = 0; k < n; ++k) grid[k][arcs[k]->target - 1] = arcs[k]->weight;
  return detail::det_grid_cofactor(grid);
}

/// Determinant of the incidence submatrix M_S with row 0 struck. Under the
/// one-arc-per-vertex condition this is 1 for acyclic subsets and 0 when the
/// subset contains a cycle.
inline int det_ms(const MatrixDigraph& g, const std::vector<int>& ids) {
  auto arcs = detail::subset_arcs(g, ids);
  int n = g.n();
  // integer fraction-free elimination; entries stay small at these sizes
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int k = 0; k < n; ++k) {
    const Arc* a = arcs[k];
    m[a->target - 1][k] += 1;
    if (a->source >= 1) m[a->source - 1][k] -= 1;
  }
  long long sign = 1, prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      int r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return static_cast<int>(sign * m[n - 1][n - 1]);
}

/// Determinant as the Cauchy-Binet sum over all C(m, n) arc subsets. A
/// verification path, not a production path: it enumerates every subset and
/// refuses to run past max_arcs arcs.
inline Polynomial cauchy_binet_det(const MatrixDigraph& g, int max_arcs = 20) {
  int n = g.n(), m = g.m();
  if (m > max_arcs)
    throw LimitError("cauchy_binet_det over " + std::to_string(m) +
                     " arcs exceeds the cap of " + std::to_string(max_arcs));
  if (m < n) return Polynomial{};
  std::vector<int> ids(n);
  for (int k = 0; k < n; ++k) ids[k] = k + 1;
  Polynomial total;
  for (;;) {
    Polynomial ws = det_ws(g, ids);
    if (!ws.is_zero()) {
      int ms = det_ms(g, ids);
      if (ms == 1)
        total += ws;
      else if (ms == -1)
        total -= ws;
      else if (ms != 0)
        total += Polynomial(ms) * ws;
    }
    // next combination in lexicographic order
    int k = n - 1;
    while (k >= 0 && ids[k] == m - (n - 1 - k)) --k;
    if (k < 0) break;
    ++ids[k];
    for (int t = k + 1; t < n; ++t) ids[t] = ids[t - 1] + 1;
  }
  return total;
}

}  // namespace arbordet
