#pragma once

#include <vector>

#include "cla/core.hpp"

namespace cla {

// Directed graph over the universe encoding "must be strictly preferred to".
// The strict-dominance rows of the feasibility system are satisfiable for a
// given attention assignment exactly when this graph is acyclic, so the
// solver carries no utility variables or big-M constants: it inserts edges
// and rejects any insertion that would close a cycle.
//
// The transitive closure is maintained incrementally; all queries are O(1)
// bitset operations. States are small (two bitset rows per node) and cheap
// to copy, which is how the search backtracks.
class PreferenceDigraph {
 public:
  PreferenceDigraph() = default;
  explicit PreferenceDigraph(int n) : n_(n), succ_(n, 0), desc_(n, 0) {}

  int size() const { return n_; }

  bool has_edge(AltId a, AltId b) const { return set_contains(succ_[a], b); }
  // True when a already reaches b through inserted edges.
  bool implies(AltId a, AltId b) const { return set_contains(desc_[a], b); }
  // Inserting a -> b would close a cycle (b already reaches a, or a == b).
  bool would_close_cycle(AltId a, AltId b) const {
    return a == b || set_contains(desc_[b], a);
  }

  // Insert a -> b, updating the closure. Returns false (and leaves the
  // graph unchanged) if the edge would close a cycle.
  bool add_edge(AltId a, AltId b);

  // Strict descendants (everything a must beat), not including a.
  AltSet descendants(AltId a) const { return desc_[a]; }
  AltSet direct_successors(AltId a) const { return succ_[a]; }

  // Total order extending the graph: repeatedly emits the lowest-id node
  // with no remaining predecessor. Deterministic.
  std::vector<AltId> topological_order() const;

  // Shortest directed path from -> to over inserted edges (BFS, lowest-id
  // first), empty if none. Used for cycle diagnostics.
  std::vector<AltId> find_path(AltId from, AltId to) const;

 private:
  int n_ = 0;
  std::vector<AltSet> succ_;
  std::vector<AltSet> desc_;
};

}  // namespace cla
