#pragma once

#include <string>
#include <vector>

#include "arbordet/digraph.hpp"
#include "arbordet/error.hpp"

namespace arbordet {

struct MoveResult {
  MatrixDigraph digraph;
  int moved_arc_id = 0;  // id of the moved arc in the returned digraph
};

/// Move the source of an arc (a, b) to new_source, keeping target and weight.
/// The arborescence weight sum is preserved exactly when a and b are not
/// strongly connected before the move and new_source and b are not strongly
/// connected after it. Both hypotheses are checked here and violations are
/// refused; they are never assumed.
inline MoveResult move_arc(const MatrixDigraph& g, int arc_id, int new_source) {
  const Arc e = g.arc(arc_id);
  g.check_vertex(new_source);
  if (new_source == e.target)
    throw DomainError("moving arc " + std::to_string(arc_id) + " to source " +
                      std::to_string(new_source) + " would create a loop");
  if (strongly_connected(g, e.source, e.target))
    throw DomainError("arc " + std::to_string(arc_id) + ": source " +
                      std::to_string(e.source) + " and target " +
                      std::to_string(e.target) +
                      " are strongly connected in the input digraph");
  std::vector<ArcInit> arcs;
  arcs.reserve(g.m());
  for (const Arc& a : g.arcs()) {
    int src = (a.id == arc_id) ? new_source : a.source;
    arcs.push_back({src, a.target, a.weight});
  }
  MatrixDigraph moved(g.n(), std::move(arcs));
  if (strongly_connected(moved, new_source, e.target))
    throw DomainError("arc " + std::to_string(arc_id) + ": new source " +
                      std::to_string(new_source) + " and target " +
                      std::to_string(e.target) +
                      " are strongly connected after the move");
  int moved_id = 0;
  for (const Arc& a : moved.arcs())
    if (a.source == new_source && a.target == e.target && a.weight == e.weight) {
      moved_id = a.id;
      break;
    }
  return MoveResult{std::move(moved), moved_id};
}

/// True iff every in arc of j comes from the root and at least one exists.
inline bool is_explicitly_rooted(const MatrixDigraph& g, int j) {
  const auto& in = g.in_ids(j);
  if (in.empty()) return false;
  for (int id : in)
    if (g.arc(id).source != 0) return false;
  return true;
}

/// Isolate an explicitly rooted vertex: every out arc (j, k) is moved to
/// (0, k) one at a time, then parallel arcs are merged. Afterwards j has no
/// out arcs and a single in arc (0, j); the arborescence weight sum is
/// unchanged.
inline MatrixDigraph isolate_vertex(const MatrixDigraph& g, int j) {
  if (j < 1 || j > g.n())
    throw DomainError("cannot isolate vertex " + std::to_string(j));
  if (!is_explicitly_rooted(g, j))
    throw DomainError("vertex " + std::to_string(j) +
                      " is not explicitly rooted (its only in arc must come "
                      "from the root)");
  MatrixDigraph cur = g;
  while (!cur.out_ids(j).empty()) {
    int id = cur.out_ids(j).front();
    cur = move_arc(cur, id, 0).digraph;
  }
  return merge_parallel_arcs(cur);
}

}  // namespace arbordet
