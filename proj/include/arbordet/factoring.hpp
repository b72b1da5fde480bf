#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "arbordet/digraph.hpp"
#include "arbordet/error.hpp"
#include "arbordet/polynomial.hpp"
#include "arbordet/transform.hpp"

namespace arbordet {

// ---------------------------------------------------------------------------
// FactorExpr: a sum/product tree over polynomial leaves representing a
// factored determinant. Nodes may carry a provenance tag naming the digraph
// they came from; the leaf written when a digraph becomes fully isolated is
// additionally marked, so leaf counts of a factoring can be audited.
// ---------------------------------------------------------------------------

struct FactorExpr {
  enum class Kind { Leaf, Sum, Product };

  Kind kind = Kind::Leaf;
  Polynomial value;                  // Leaf only
  std::vector<FactorExpr> children;  // Sum / Product only
  std::string tag;                   // provenance, may be empty
  bool isolated_mark = false;        // closes one fully isolated digraph

  static FactorExpr leaf(Polynomial p, std::string tag = "") {
    FactorExpr e;
    e.kind = Kind::Leaf;
    e.value = std::move(p);
    e.tag = std::move(tag);
    return e;
  }

  static FactorExpr sum(std::vector<FactorExpr> terms, std::string tag = "") {
    if (terms.size() == 1 && tag.empty()) return std::move(terms.front());
    FactorExpr e;
    e.kind = Kind::Sum;
    e.children = std::move(terms);
    e.tag = std::move(tag);
    return e;
  }

  static FactorExpr product(std::vector<FactorExpr> factors,
                            std::string tag = "") {
    if (factors.size() == 1 && tag.empty()) return std::move(factors.front());
    FactorExpr e;
    e.kind = Kind::Product;
    e.tag = std::move(tag);
    // flatten untagged nested products
    for (auto& f : factors) {
      if (f.kind == Kind::Product && f.tag.empty()) {
        for (auto& c : f.children) e.children.push_back(std::move(c));
      } else {
        e.children.push_back(std::move(f));
      }
    }
    return e;
  }

  /// Full distribution and normalization.
  Polynomial expand() const {
    switch (kind) {
      case Kind::Leaf:
        return value;
      case Kind::Sum: {
        Polynomial s;
        for (const auto& c : children) s += c.expand();
        return s;
      }
      case Kind::Product: {
        Polynomial p = Polynomial::one();
        for (const auto& c : children) p *= c.expand();
        return p;
      }
    }
    return Polynomial{};
  }

  /// Number of fully isolated digraphs recorded in this expression.
  long long isolated_leaf_count() const {
    long long n = isolated_mark ? 1 : 0;
    for (const auto& c : children) n += c.isolated_leaf_count();
    return n;
  }

  std::string str() const { return str_impl(false); }

  /// Depth-first search for a child carrying the given tag.
  const FactorExpr* find_tag(const std::string& t) const {
    if (tag == t) return this;
    for (const auto& c : children)
      if (const FactorExpr* hit = c.find_tag(t)) return hit;
    return nullptr;
  }

 private:
  std::string str_impl(bool in_product) const {
    switch (kind) {
      case Kind::Leaf: {
        std::string s = value.str();
        if (in_product && (value.term_count() > 1 || s[0] == '-'))
          return "(" + s + ")";
        return s;
      }
      case Kind::Sum: {
        std::string s;
        for (std::size_t i = 0; i < children.size(); ++i) {
          if (i) s += " + ";
          s += children[i].str_impl(false);
        }
        if (in_product) return "(" + s + ")";
        return s;
      }
      case Kind::Product: {
        std::string s;
        for (std::size_t i = 0; i < children.size(); ++i) {
          if (i) s += "*";
          s += children[i].str_impl(true);
        }
        return s;
      }
    }
    return "";
  }
};

inline Polynomial factor_expand(const FactorExpr& f) { return f.expand(); }

// ---------------------------------------------------------------------------
// Rooting splits.
// ---------------------------------------------------------------------------

/// Split a digraph at vertex j into the half explicitly rooted at j (the
/// root arc is the only in arc to j) and the half explicitly not rooted at j
/// (the root arc removed, all other in arcs kept). The two halves' tree sums
/// add up to the tree sum of the input.
inline std::pair<MatrixDigraph, MatrixDigraph> split_rooting(
    const MatrixDigraph& g, int j) {
  if (j < 1 || j > g.n())
    throw DomainError("cannot split the rooting at vertex " + std::to_string(j));
  std::vector<ArcInit> rooted, unrooted;
  for (const Arc& e : g.arcs()) {
    if (e.target == j) {
      if (e.source == 0)
        rooted.push_back({e.source, e.target, e.weight});
      else
        unrooted.push_back({e.source, e.target, e.weight});
    } else {
      rooted.push_back({e.source, e.target, e.weight});
      unrooted.push_back({e.source, e.target, e.weight});
    }
  }
  return {MatrixDigraph(g.n(), std::move(rooted)),
          MatrixDigraph(g.n(), std::move(unrooted))};
}

/// A non-empty set of vertices to root explicitly; the complement is
/// explicitly not rooted.
struct RootingPattern {
  std::vector<int> rooted;  // ascending, non-empty
};

namespace detail {

inline Polynomial root_arc_weight(const MatrixDigraph& g, int j) {
  Polynomial w;
  for (int id : g.in_ids(j)) {
    const Arc& e = g.arc(id);
    if (e.source == 0) w += e.weight;
  }
  return w;
}

inline MatrixDigraph drop_root_arc(const MatrixDigraph& g, int j) {
  std::vector<ArcInit> arcs;
  for (const Arc& e : g.arcs())
    if (!(e.target == j && e.source == 0))
      arcs.push_back({e.source, e.target, e.weight});
  return MatrixDigraph(g.n(), std::move(arcs));
}

inline std::string join_labels(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace detail

struct FactoringLimits {
  int max_vertices = 8;
};

// ---------------------------------------------------------------------------
// Sequential factoring: split at the first queued vertex, isolate the rooted
// half, recurse on the remaining vertices in cyclic order, and continue the
// unrooted half down the rest of the queue. A complete digraph yields n!
// fully isolated digraphs; the group rooted at j keeps the root weight of j
// as a common factor and never sees the root weights of vertices already
// processed.
// ---------------------------------------------------------------------------

namespace detail {

inline FactorExpr sequential_node(const MatrixDigraph& g,
                                  const std::vector<int>& queue,
                                  const std::vector<int>& chain) {
  std::vector<FactorExpr> terms;
  MatrixDigraph rest = g;
  for (std::size_t idx = 0; idx < queue.size(); ++idx) {
    int v = queue[idx];
    auto [rooted, unrooted] = split_rooting(rest, v);
    std::vector<int> next_chain = chain;
    next_chain.push_back(v);
    std::string tag = "Gamma[" + join_labels(next_chain) + "]";
    if (rooted.in_ids(v).empty()) {
      terms.push_back(
          FactorExpr::leaf(Polynomial{}, tag + " pruned: no root arc"));
    } else {
      MatrixDigraph iso = isolate_vertex(rooted, v);
      Polynomial w = root_arc_weight(iso, v);
      std::vector<int> child_queue(queue.begin() + idx + 1, queue.end());
      child_queue.insert(child_queue.end(), queue.begin(), queue.begin() + idx);
      if (child_queue.empty()) {
        FactorExpr lf = FactorExpr::leaf(std::move(w), tag);
        lf.isolated_mark = true;
        terms.push_back(std::move(lf));
      } else {
        FactorExpr tail = sequential_node(iso, child_queue, next_chain);
        std::vector<FactorExpr> factors;
        factors.push_back(FactorExpr::leaf(std::move(w)));
        factors.push_back(std::move(tail));
        terms.push_back(FactorExpr::product(std::move(factors), tag));
      }
    }
    rest = std::move(unrooted);
  }
  return FactorExpr::sum(std::move(terms));
}

}  // namespace detail

/// Factor the tree-sum determinant by sequential rooting and isolation.
/// order, when given, permutes the top-level vertex processing; it must be a
/// permutation of 1..n. Every order yields a valid factoring.
inline FactorExpr sequential_factor(const MatrixDigraph& g,
                                    std::vector<int> order = {},
                                    FactoringLimits limits = {}) {
  if (g.n() > limits.max_vertices)
    throw LimitError("sequential factoring over " + std::to_string(g.n()) +
                     " vertices exceeds the cap of " +
                     std::to_string(limits.max_vertices));
  if (order.empty()) {
    order.resize(g.n());
    std::iota(order.begin(), order.end(), 1);
  } else {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(g.n());
    std::iota(expect.begin(), expect.end(), 1);
    if (sorted != expect)
      throw DomainError("factoring order must be a permutation of 1.." +
                        std::to_string(g.n()));
  }
  return detail::sequential_node(g, order, {});
}

// ---------------------------------------------------------------------------
// Explicit-rooting factoring: one term per non-empty subset of the active
// vertices (2^n - 1 patterns at the top), each isolated and recursed. The
// fully isolated digraphs are exactly the weak orderings of the vertices, so
// their count is the Fubini number F(n).
// ---------------------------------------------------------------------------

enum class Apportion { none, symmetric };

namespace detail {

inline std::vector<std::vector<int>> rooting_patterns(
    const std::vector<int>& active) {
  std::vector<std::vector<int>> out;
  int k = static_cast<int>(active.size());
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> t;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) t.push_back(active[i]);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.front() != b.front()) return a.front() < b.front();
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

struct PatternTerm {
  std::vector<int> pattern;       // rooted vertices, ascending
  std::vector<Polynomial> w;      // root weights, aligned with pattern
  FactorExpr child;               // recursion over the remaining vertices
  bool has_child = false;
  bool pruned = false;
  std::string tag;
};

inline PatternTerm build_pattern_term(const MatrixDigraph& g,
                                      const std::vector<int>& active,
                                      const std::vector<int>& pattern,
                                      const std::string& prefix);

inline FactorExpr explicit_node(const MatrixDigraph& g,
                                const std::vector<int>& active,
                                const std::string& prefix) {
  std::vector<FactorExpr> terms;
  for (const auto& pattern : rooting_patterns(active)) {
    PatternTerm t = build_pattern_term(g, active, pattern, prefix);
    if (t.pruned) {
      terms.push_back(
          FactorExpr::leaf(Polynomial{}, t.tag + " pruned: no root arc"));
      continue;
    }
    std::vector<FactorExpr> factors;
    for (std::size_t i = 0; i < t.w.size(); ++i)
      factors.push_back(FactorExpr::leaf(t.w[i]));
    if (t.has_child) {
      factors.push_back(std::move(t.child));
    } else {
      factors.back().isolated_mark = true;
    }
    terms.push_back(FactorExpr::product(std::move(factors), t.tag));
  }
  return FactorExpr::sum(std::move(terms));
}

inline PatternTerm build_pattern_term(const MatrixDigraph& g,
                                      const std::vector<int>& active,
                                      const std::vector<int>& pattern,
                                      const std::string& prefix) {
  PatternTerm t;
  t.pattern = pattern;
  t.tag = "root{" + join_labels(pattern) + "}";
  if (!prefix.empty()) t.tag = prefix + " " + t.tag;

  MatrixDigraph cur = g;
  for (int u : active) {
    if (std::find(pattern.begin(), pattern.end(), u) == pattern.end()) {
      cur = drop_root_arc(cur, u);
    } else {
      cur = split_rooting(cur, u).first;
      if (cur.in_ids(u).empty()) {
        t.pruned = true;
        return t;
      }
    }
  }
  for (int j : pattern) cur = isolate_vertex(cur, j);
  for (int j : pattern) t.w.push_back(root_arc_weight(cur, j));

  std::vector<int> rest;
  for (int u : active)
    if (std::find(pattern.begin(), pattern.end(), u) == pattern.end())
      rest.push_back(u);
  if (!rest.empty()) {
    t.child = explicit_node(cur, rest, t.tag);
    t.has_child = true;
  }
  return t;
}

}  // namespace detail

/// Factor by explicit rootings. With Apportion::none the result is the sum
/// of one term per top-level rooting pattern. With Apportion::symmetric each
/// top-level term is divided equally among its rooted vertices, producing one
/// group per vertex with rational coefficients 1/2, 1/3, ...
inline FactorExpr explicit_rooting_factor(const MatrixDigraph& g,
                                          Apportion mode = Apportion::none,
                                          FactoringLimits limits = {}) {
  if (g.n() > limits.max_vertices)
    throw LimitError("explicit-rooting factoring over " + std::to_string(g.n()) +
                     " vertices exceeds the cap of " +
                     std::to_string(limits.max_vertices));
  std::vector<int> active(g.n());
  std::iota(active.begin(), active.end(), 1);
  if (mode == Apportion::none) return detail::explicit_node(g, active, "");

  // Build the top level once, then split every pattern's term equally among
  // its rooted vertices and regroup by vertex.
  std::vector<detail::PatternTerm> tops;
  for (const auto& pattern : detail::rooting_patterns(active))
    tops.push_back(detail::build_pattern_term(g, active, pattern, ""));

  std::vector<FactorExpr> groups;
  for (int j = 1; j <= g.n(); ++j) {
    std::vector<FactorExpr> shares;
    Polynomial wj;
    for (const auto& t : tops) {
      if (t.pruned) continue;
      auto pos = std::find(t.pattern.begin(), t.pattern.end(), j);
      if (pos == t.pattern.end()) continue;
      std::size_t jidx = pos - t.pattern.begin();
      wj = t.w[jidx];
      std::vector<FactorExpr> parts;
      int r = static_cast<int>(t.pattern.size());
      if (r > 1)
        parts.push_back(FactorExpr::leaf(Polynomial(Rational(1, r))));
      for (std::size_t i = 0; i < t.w.size(); ++i)
        if (i != jidx) parts.push_back(FactorExpr::leaf(t.w[i]));
      if (t.has_child) parts.push_back(t.child);
      if (parts.empty()) parts.push_back(FactorExpr::leaf(Polynomial::one()));
      shares.push_back(
          FactorExpr::product(std::move(parts), t.tag + " share"));
    }
    if (shares.empty()) continue;
    std::vector<FactorExpr> factors;
    factors.push_back(FactorExpr::leaf(wj));
    factors.push_back(FactorExpr::sum(std::move(shares)));
    groups.push_back(FactorExpr::product(std::move(factors),
                                         "group[" + std::to_string(j) + "]"));
  }
  return FactorExpr::sum(std::move(groups));
}

}  // namespace arbordet
