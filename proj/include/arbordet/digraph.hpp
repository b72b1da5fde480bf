#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arbordet/error.hpp"
#include "arbordet/matrix.hpp"
#include "arbordet/polynomial.hpp"

namespace arbordet {

/// One arc of a matrix digraph. Vertex 0 is the root: it never appears as a
/// target, and loops do not exist.
struct Arc {
  int id = 0;  // 1..m, assigned in canonical order
  int source = 0;
  int target = 0;
  Polynomial weight;
};

/// Arc data before ids are assigned.
struct ArcInit {
  int source = 0;
  int target = 0;
  Polynomial weight;
};

// ---------------------------------------------------------------------------
// MatrixDigraph: a rooted weighted multidigraph on vertices {0, 1, ..., n}.
// Arcs are stored sorted by (target, source, insertion order) -- the invertex
// sort -- and ids are 1..m in that order. Identically-zero weights never
// produce an arc. Immutable after construction.
// ---------------------------------------------------------------------------

class MatrixDigraph {
 public:
  MatrixDigraph(int n, std::vector<ArcInit> arcs) : n_(n) {
    if (n < 1) throw DomainError("digraph needs at least one non-root vertex");
    std::vector<ArcInit> kept;
    kept.reserve(arcs.size());
    for (auto& a : arcs) {
      if (a.target < 1 || a.target > n)
        throw DomainError("arc target " + std::to_string(a.target) +
                          " out of range (root has no in arcs)");
      if (a.source < 0 || a.source > n)
        throw DomainError("arc source " + std::to_string(a.source) +
                          " out of range");
      if (a.source == a.target)
        throw DomainError("loop arc at vertex " + std::to_string(a.source));
      if (a.weight.is_zero()) continue;
      kept.push_back(std::move(a));
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const ArcInit& a, const ArcInit& b) {
                       if (a.target != b.target) return a.target < b.target;
                       return a.source < b.source;
                     });
    arcs_.reserve(kept.size());
    in_.assign(n + 1, {});
    out_.assign(n + 1, {});
    int id = 1;
    for (auto& a : kept) {
      arcs_.push_back(Arc{id, a.source, a.target, std::move(a.weight)});
      in_[a.target].push_back(id);
      out_[a.source].push_back(id);
      ++id;
    }
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(arcs_.size()); }

  const std::vector<Arc>& arcs() const { return arcs_; }

  const Arc& arc(int id) const {
    if (id < 1 || id > m())
      throw DomainError("unknown arc id " + std::to_string(id));
    return arcs_[id - 1];
  }

  const std::vector<int>& in_ids(int v) const {
    check_vertex(v);
    return in_[v];
  }

  const std::vector<int>& out_ids(int v) const {
    check_vertex(v);
    return out_[v];
  }

  void check_vertex(int v) const {
    if (v < 0 || v > n_)
      throw DomainError("unknown vertex " + std::to_string(v));
  }

  bool operator==(const MatrixDigraph& o) const {
    if (n_ != o.n_ || arcs_.size() != o.arcs_.size()) return false;
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      if (arcs_[k].source != o.arcs_[k].source ||
          arcs_[k].target != o.arcs_[k].target ||
          arcs_[k].weight != o.arcs_[k].weight)
        return false;
    }
    return true;
  }
  bool operator!=(const MatrixDigraph& o) const { return !(*this == o); }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> in_, out_;
};

/// Optional per-entry term lists: parts[(i, j)] decomposes the derived
/// weight v_ij into u-terms, one arc each. The diagonal key (j, j)
/// decomposes the column sum. Missing keys default to a single term.
struct TermDecomposition {
  std::map<std::pair<int, int>, std::vector<Polynomial>> parts;
};

/// The derived weights of a plain matrix: v_ij = -a_ij off the diagonal and
/// v_jj = column sum of column j.
inline Polynomial matrix_weight(const SymbolicMatrix& a, int i, int j) {
  if (i != j) return -a.at(i, j);
  Polynomial col;
  for (int k = 1; k <= a.dim(); ++k) col += a.at(k, j);
  return col;
}

/// Build the matrix digraph of a plain square matrix: an arc (i, j) with
/// weight u for every off-diagonal term and a root arc (0, j) for every
/// diagonal term. Zero weights yield no arc.
inline MatrixDigraph digraph_from_matrix(const SymbolicMatrix& a,
                                         const TermDecomposition* terms = nullptr) {
  if (a.extended())
    throw DomainError("digraph_from_matrix expects a plain (non-extended) matrix");
  int n = a.dim();
  if (terms) {
    for (const auto& [key, parts] : terms->parts) {
      auto [i, j] = key;
      if (i < 1 || i > n || j < 1 || j > n)
        throw DomainError("term decomposition key (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") out of range");
      Polynomial sum;
      for (const auto& p : parts) sum += p;
      if (sum != matrix_weight(a, i, j))
        throw DomainError("term decomposition for (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") does not sum to the entry weight");
    }
  }
  std::vector<ArcInit> arcs;
  for (int j = 1; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      if (i == j) continue;
      int wi = (i == 0) ? j : i;  // diagonal terms come from the root
      Polynomial w = matrix_weight(a, wi, j);
      const std::vector<Polynomial>* parts = nullptr;
      if (terms) {
        auto it = terms->parts.find({wi, j});
        if (it != terms->parts.end()) parts = &it->second;
      }
      if (parts) {
        for (const auto& p : *parts) arcs.push_back({i, j, p});
      } else {
        arcs.push_back({i, j, std::move(w)});
      }
    }
  }
  return MatrixDigraph(n, std::move(arcs));
}

/// Recover the matrix of a digraph: a_ii sums all in-arc weights of i and
/// a_ij (i != j) is minus the sum of (i, j) arc weights. The extended form
/// includes row and column 0, where a_0i = -v_ii and a_i0 = 0.
inline SymbolicMatrix matrix_from_digraph(const MatrixDigraph& g,
                                          bool extended = false) {
  int n = g.n();
  SymbolicMatrix a = extended ? SymbolicMatrix::extended_zero(n)
                              : SymbolicMatrix::zero(n);
  int lo = a.index_begin();
  for (const Arc& e : g.arcs()) {
    a.at(e.target, e.target) += e.weight;
    if (e.source >= lo) a.at(e.source, e.target) -= e.weight;
  }
  return a;
}

/// True iff paths a -> b and b -> a both exist (a == b counts as true).
inline bool strongly_connected(const MatrixDigraph& g, int a, int b) {
  g.check_vertex(a);
  g.check_vertex(b);
  if (a == b) return true;
  auto reaches = [&](int from, int to) {
    std::vector<char> seen(g.n() + 1, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (int id : g.out_ids(v)) {
        int t = g.arc(id).target;
        if (!seen[t]) {
          seen[t] = 1;
          stack.push_back(t);
        }
      }
    }
    return false;
  };
  return reaches(a, b) && reaches(b, a);
}

/// Collapse parallel arcs into one arc per (source, target) pair carrying
/// the summed weight. Branching weight sums are unchanged.
inline MatrixDigraph merge_parallel_arcs(const MatrixDigraph& g) {
  std::map<std::pair<int, int>, Polynomial> merged;
  for (const Arc& e : g.arcs()) merged[{e.source, e.target}] += e.weight;
  std::vector<ArcInit> arcs;
  arcs.reserve(merged.size());
  for (auto& [key, w] : merged)
    arcs.push_back({key.first, key.second, std::move(w)});
  return MatrixDigraph(g.n(), std::move(arcs));
}

}  // namespace arbordet
