#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "arbordet/digraph.hpp"
#include "arbordet/error.hpp"
#include "arbordet/polynomial.hpp"

namespace arbordet {

/// A branching: arcs with per-vertex indegree at most one and no cycles.
/// The spanning case (one in arc for every vertex 1..n) is an arborescence.
/// roots lists the vertices entered directly from the root vertex 0.
struct Branching {
  std::vector<int> arc_ids;  // ascending
  std::vector<int> roots;    // ascending
};

struct EnumerationLimits {
  long long max_combinations = 10'000'000;
};

namespace detail {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace detail

/// Visit every spanning arborescence rooted at vertex 0, in lexicographic
/// order of the arc-id sets. Enumeration walks the cartesian product of
/// per-vertex in-arc choices and prunes cycles incrementally, so combinations
/// sharing a cyclic prefix are discarded together.
template <class Fn>
void for_each_arborescence(const MatrixDigraph& g, Fn&& fn,
                           EnumerationLimits limits = {}) {
  int n = g.n();
  long long combos = 1;
  for (int v = 1; v <= n; ++v) {
    std::size_t d = g.in_ids(v).size();
    if (d == 0) return;  // some vertex can never be entered
    if (combos > limits.max_combinations / static_cast<long long>(d))
      throw LimitError("arborescence enumeration over " + std::to_string(n) +
                       " vertices exceeds the combination cap of " +
                       std::to_string(limits.max_combinations));
    combos *= static_cast<long long>(d);
  }

  std::vector<int> chosen(n + 1, 0);
  detail::Dsu dsu(n + 1);
  std::function<void(int, detail::Dsu&)> walk = [&](int v, detail::Dsu& state) {
    if (v > n) {
      Branching b;
      b.arc_ids.reserve(n);
      for (int u = 1; u <= n; ++u) {
        b.arc_ids.push_back(chosen[u]);
        if (g.arc(chosen[u]).source == 0) b.roots.push_back(u);
      }
      std::sort(b.arc_ids.begin(), b.arc_ids.end());
      fn(b);
      return;
    }
    for (int id : g.in_ids(v)) {
      const Arc& e = g.arc(id);
      detail::Dsu next = state;
      if (!next.join(e.source, e.target)) continue;  // would close a cycle
      chosen[v] = id;
      walk(v + 1, next);
    }
  };
  walk(1, dsu);
}

/// Materialized enumeration; empty when no arborescence exists.
inline std::vector<Branching> enumerate_arborescences(const MatrixDigraph& g,
                                                      EnumerationLimits limits = {}) {
  std::vector<Branching> out;
  for_each_arborescence(g, [&](const Branching& b) { out.push_back(b); }, limits);
  return out;
}

/// Product of the arc weights of a branching; the empty branching yields 1.
inline Polynomial branching_weight(const MatrixDigraph& g, const Branching& b) {
  Polynomial w = Polynomial::one();
  for (int id : b.arc_ids) w *= g.arc(id).weight;
  return w;
}

/// Determinant as the sum of arborescence weights. Streams over the
/// enumeration; the full list is never materialized.
inline Polynomial det_tree_sum(const MatrixDigraph& g,
                               EnumerationLimits limits = {}) {
  Polynomial sum;
  for_each_arborescence(
      g, [&](const Branching& b) { sum += branching_weight(g, b); }, limits);
  return sum;
}

/// Independent validity check: ids exist, indegree at most one, acyclic.
inline bool is_valid_branching(const MatrixDigraph& g, const Branching& b) {
  std::vector<char> entered(g.n() + 1, 0);
  detail::Dsu dsu(g.n() + 1);
  for (int id : b.arc_ids) {
    if (id < 1 || id > g.m()) return false;
    const Arc& e = g.arc(id);
    if (entered[e.target]) return false;
    entered[e.target] = 1;
    if (!dsu.join(e.source, e.target)) return false;
  }
  return true;
}

/// Spanning check on top of validity: n arcs, every vertex entered, and
/// every vertex reachable from the root by walking in-arcs backwards.
inline bool is_spanning_arborescence(const MatrixDigraph& g, const Branching& b) {
  if (static_cast<int>(b.arc_ids.size()) != g.n()) return false;
  if (!is_valid_branching(g, b)) return false;
  std::vector<int> parent(g.n() + 1, -1);
  for (int id : b.arc_ids) parent[g.arc(id).target] = g.arc(id).source;
  for (int v = 1; v <= g.n(); ++v) {
    int u = v, steps = 0;
    while (u != 0) {
      if (u < 0 || steps++ > g.n()) return false;
      u = parent[u];
    }
  }
  return true;
}

}  // namespace arbordet
