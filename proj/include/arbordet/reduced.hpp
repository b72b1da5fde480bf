#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arbordet/arborescence.hpp"
#include "arbordet/digraph.hpp"
#include "arbordet/error.hpp"
#include "arbordet/linalg.hpp"
#include "arbordet/matrix.hpp"

namespace arbordet {

/// A reduction: column cols[k] of the matrix is replaced by a unit column
/// with its 1 in row rows[k]. Both lists are duplicate-free and equally long.
struct ReductionSpec {
  std::vector<int> rows;  // P
  std::vector<int> cols;  // Q
};

inline void validate_reduction_spec(const ReductionSpec& spec, int n) {
  if (spec.rows.empty() || spec.rows.size() != spec.cols.size())
    throw DomainError("reduction needs non-empty row and column lists of equal length");
  if (static_cast<int>(spec.rows.size()) > n)
    throw DomainError("reduction lists longer than the matrix dimension");
  auto check = [&](const std::vector<int>& v, const char* what) {
    std::set<int> seen;
    for (int x : v) {
      if (x < 1 || x > n)
        throw DomainError(std::string(what) + " index " + std::to_string(x) +
                          " out of range 1.." + std::to_string(n));
      if (!seen.insert(x).second)
        throw DomainError(std::string("duplicate ") + what + " index " +
                          std::to_string(x));
    }
  };
  check(spec.rows, "row");
  check(spec.cols, "column");
}

/// Replace each column cols[k] by zeros with a 1 at row rows[k]; all other
/// columns are copied. Idempotent for a fixed spec.
inline SymbolicMatrix reduce_matrix(const SymbolicMatrix& a,
                                    const ReductionSpec& spec) {
  if (a.extended()) throw DomainError("reduce_matrix expects a plain matrix");
  validate_reduction_spec(spec, a.dim());
  SymbolicMatrix r = a;
  for (std::size_t k = 0; k < spec.cols.size(); ++k) {
    int q = spec.cols[k], p = spec.rows[k];
    for (int i = 1; i <= a.dim(); ++i)
      r.at(i, q) = (i == p) ? Polynomial::one() : Polynomial{};
  }
  return r;
}

/// The column list rearranged so that every column index that also appears
/// among the rows sits at that row's position, together with the minimal
/// exchange count that achieves it.
struct NormalizedReduction {
  std::vector<int> rows;        // P, unchanged
  std::vector<int> cols_tilde;  // rearranged columns, paired with rows
  int exchange_count = 0;       // minimal number of pairwise exchanges
  std::vector<int> aligned;     // 0-based positions k with cols_tilde[k] == rows[k]
  std::vector<int> mismatched;  // the remaining positions
};

/// Find a minimal pairwise-exchange sequence by breadth-first search over
/// transpositions. Only the parity of the count affects determinants; the
/// first minimal arrangement in search order is returned deterministically.
inline NormalizedReduction normalize_targets(const ReductionSpec& spec,
                                             int max_m = 8) {
  if (spec.rows.empty() || spec.rows.size() != spec.cols.size())
    throw DomainError("reduction needs non-empty row and column lists of equal length");
  int m = static_cast<int>(spec.cols.size());
  if (m > max_m)
    throw LimitError("normalize_targets over " + std::to_string(m) +
                     " columns exceeds the search cap of " + std::to_string(max_m) +
                     "; raise max_m to override");
  std::map<int, int> row_pos;
  for (int k = 0; k < m; ++k) row_pos[spec.rows[k]] = k;
  auto is_goal = [&](const std::vector<int>& state) {
    for (int k = 0; k < m; ++k) {
      auto it = row_pos.find(state[k]);
      if (it != row_pos.end() && it->second != k) return false;
    }
    return true;
  };

  std::map<std::vector<int>, int> depth;
  std::deque<std::vector<int>> queue;
  depth[spec.cols] = 0;
  queue.push_back(spec.cols);
  std::vector<int> goal;
  while (!queue.empty()) {
    std::vector<int> cur = queue.front();
    queue.pop_front();
    int d = depth[cur];
    if (is_goal(cur)) {
      goal = cur;
      break;
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        std::vector<int> next = cur;
        std::swap(next[i], next[j]);
        if (depth.emplace(next, d + 1).second) queue.push_back(next);
      }
  }
  if (goal.empty())
    throw Error("normalize_targets: exchange search exhausted");  // unreachable

  NormalizedReduction norm;
  norm.rows = spec.rows;
  norm.cols_tilde = goal;
  norm.exchange_count = depth[goal];
  for (int k = 0; k < m; ++k) {
    if (goal[k] == spec.rows[k])
      norm.aligned.push_back(k);
    else
      norm.mismatched.push_back(k);
  }
  return norm;
}

/// Digraph used to enumerate the qualifying branchings of a reduced matrix:
/// the matrix digraph of A with every in arc of a replaced column's vertex
/// swapped for a single weight-1 root arc.
inline MatrixDigraph reduced_digraph(const SymbolicMatrix& a,
                                     const NormalizedReduction& norm) {
  MatrixDigraph base = digraph_from_matrix(a);
  std::set<int> forced(norm.cols_tilde.begin(), norm.cols_tilde.end());
  std::vector<ArcInit> arcs;
  for (const Arc& e : base.arcs())
    if (!forced.count(e.target)) arcs.push_back({e.source, e.target, e.weight});
  for (int q : forced) arcs.push_back({0, q, Polynomial::one()});
  return MatrixDigraph(a.dim(), std::move(arcs));
}

namespace detail {

/// Cycle sign of a qualifying branching, or nullopt when the branching does
/// not qualify. Position k maps to the position j whose row vertex lies in
/// the subtree hanging off cols_tilde[k]; the sign multiplies (-1)^(len-1)
/// over the cycles of that map. Qualification demands exactly one row vertex
/// per subtree.
inline std::optional<int> epsilon_if_qualifying(const Branching& b,
                                                const NormalizedReduction& norm,
                                                const MatrixDigraph& g) {
  int n = g.n();
  int m = static_cast<int>(norm.cols_tilde.size());
  std::vector<std::vector<int>> children(n + 1);
  std::vector<char> rooted(n + 1, 0);
  for (int id : b.arc_ids) {
    const Arc& e = g.arc(id);
    children[e.source].push_back(e.target);
    if (e.source == 0) rooted[e.target] = 1;
  }
  for (int q : norm.cols_tilde)
    if (!rooted[q]) return std::nullopt;  // not rooted at every forced vertex

  std::map<int, int> row_pos;
  for (int k = 0; k < m; ++k) row_pos[norm.rows[k]] = k;

  std::vector<int> image(m, -1);
  for (int k = 0; k < m; ++k) {
    // collect the subtree below cols_tilde[k] and look for row vertices
    std::vector<int> stack{norm.cols_tilde[k]};
    std::vector<char> visited(n + 1, 0);
    int hits = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (visited[v]) continue;
      visited[v] = 1;
      auto it = row_pos.find(v);
      if (it != row_pos.end()) {
        ++hits;
        image[k] = it->second;
      }
      for (int c : children[v]) stack.push_back(c);
    }
    if (hits != 1) return std::nullopt;
  }

  int eps = 1;
  std::vector<char> seen(m, 0);
  for (int k = 0; k < m; ++k) {
    if (seen[k]) continue;
    int len = 0, cur = k;
    while (!seen[cur]) {
      seen[cur] = 1;
      cur = image[cur];
      ++len;
    }
    if (len % 2 == 0) eps = -eps;  // (-1)^(len-1)
  }
  return eps;
}

}  // namespace detail

/// Cycle sign of a qualifying branching. Positions whose column already sits
/// on its own row are fixed points and contribute +1.
inline int epsilon_of(const Branching& b, const NormalizedReduction& norm,
                      const MatrixDigraph& g) {
  auto eps = detail::epsilon_if_qualifying(b, norm, g);
  if (!eps)
    throw DomainError(
        "branching does not qualify: it must be rooted at every replaced "
        "column's vertex and reach exactly one row vertex from each");
  return *eps;
}

struct ReducedDetStats {
  int exchange_count = 0;
  long long branchings = 0;
  long long qualifying = 0;
  long long negative_sign = 0;
};

/// Determinant of a reduced matrix as a signed branching sum: (-1)^exchanges
/// times the sum of eps(B) * W(B) over qualifying branchings, where the
/// weight-1 root arcs of replaced columns are excluded from W(B).
inline Polynomial det_reduced_graphical(const SymbolicMatrix& a,
                                        const ReductionSpec& spec,
                                        ReducedDetStats* stats = nullptr,
                                        EnumerationLimits limits = {}) {
  if (a.extended())
    throw DomainError("det_reduced_graphical expects a plain matrix");
  validate_reduction_spec(spec, a.dim());
  NormalizedReduction norm = normalize_targets(spec);
  MatrixDigraph g = reduced_digraph(a, norm);
  std::set<int> forced(norm.cols_tilde.begin(), norm.cols_tilde.end());
  Polynomial sum;
  for_each_arborescence(
      g,
      [&](const Branching& b) {
        if (stats) ++stats->branchings;
        auto eps = detail::epsilon_if_qualifying(b, norm, g);
        if (!eps) return;
        if (stats) {
          ++stats->qualifying;
          if (*eps < 0) ++stats->negative_sign;
        }
        Polynomial w = Polynomial::one();
        for (int id : b.arc_ids) {
          const Arc& e = g.arc(id);
          if (!forced.count(e.target)) w *= e.weight;
        }
        if (*eps > 0)
          sum += w;
        else
          sum -= w;
      },
      limits);
  if (stats) stats->exchange_count = norm.exchange_count;
  if (norm.exchange_count % 2 != 0) sum = -sum;
  return sum;
}

/// Expand a matrix that carries 0/1 columns with several 1s into the
/// reductions whose determinants sum to its determinant: one spec per choice
/// of a single 1 per such column, choices colliding on a row dropped as
/// structurally zero. When special_cols is null the 0/1 columns are detected.
inline std::vector<std::pair<ReductionSpec, int>> split_modified_reduced(
    const SymbolicMatrix& a, const std::vector<int>* special_cols = nullptr) {
  if (a.extended())
    throw DomainError("split_modified_reduced expects a plain matrix");
  int n = a.dim();
  auto ones_of = [&](int j, bool strict) {
    std::vector<int> ones;
    for (int i = 1; i <= n; ++i) {
      const Polynomial& p = a.at(i, j);
      if (p.is_one()) {
        ones.push_back(i);
      } else if (!p.is_zero()) {
        if (strict)
          throw DomainError("special column " + std::to_string(j) +
                            " contains an entry other than 0 or 1 at row " +
                            std::to_string(i));
        return std::vector<int>{};
      }
    }
    if (strict && ones.empty())
      throw DomainError("special column " + std::to_string(j) + " has no 1 entry");
    return ones;
  };

  std::vector<int> cols;
  std::vector<std::vector<int>> choices;
  if (special_cols) {
    if (special_cols->empty())
      throw DomainError("special column list must not be empty");
    cols = *special_cols;
    std::sort(cols.begin(), cols.end());
    for (int j : cols) {
      if (j < 1 || j > n)
        throw DomainError("special column " + std::to_string(j) + " out of range");
      choices.push_back(ones_of(j, /*strict=*/true));
    }
  } else {
    for (int j = 1; j <= n; ++j) {
      auto ones = ones_of(j, /*strict=*/false);
      if (!ones.empty()) {
        cols.push_back(j);
        choices.push_back(std::move(ones));
      }
    }
    if (cols.empty())
      throw DomainError("no 0/1 column with at least one 1 found");
  }

  std::vector<std::pair<ReductionSpec, int>> out;
  std::vector<int> pick(cols.size(), 0);
  for (;;) {
    std::vector<int> rows;
    bool distinct = true;
    std::set<int> seen;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      int r = choices[k][pick[k]];
      if (!seen.insert(r).second) {
        distinct = false;
        break;
      }
      rows.push_back(r);
    }
    if (distinct) out.push_back({ReductionSpec{rows, cols}, +1});
    // advance the mixed-radix counter, last column fastest
    std::size_t k = pick.size();
    while (k > 0) {
      --k;
      if (++pick[k] < static_cast<int>(choices[k].size())) break;
      pick[k] = 0;
      if (k == 0) return out;
    }
  }
  return out;
}

}  // namespace arbordet
