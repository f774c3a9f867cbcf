#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cla/core.hpp"
#include "cla/digraph.hpp"

namespace cla {

// One attention variable, identified by (observation, alternative in that
// observation's budget). The chosen alternative's variable is fixed to 1.
struct DeltaRef {
  int obs = 0;
  AltId alt = 0;
  friend bool operator==(const DeltaRef&, const DeltaRef&) = default;
};

// Disjunctive revealed-attention constraint for a choice reversal between
// observations i and j: at least one literal must be attended.
struct OrClause {
  int obs_i = 0;
  int obs_j = 0;
  std::vector<DeltaRef> literals;
};

// Per-observation floor on the number of attended alternatives.
struct CardinalityRow {
  int obs = 0;
  int min_required = 1;
};

struct ForcedEdge {
  AltId from = 0;
  AltId to = 0;
  int obs = 0;  // observation whose fixed attention implies the edge
};

// The feasibility system with the big-M utility rows replaced by the edge
// rule "attend x != c(B_i)  =>  c(B_i) must beat x"; satisfiability of the
// utility rows is equivalent to acyclicity of those edges.
struct ConstraintProgram {
  int n_alternatives = 0;
  std::vector<AltSet> budgets;
  std::vector<AltId> choices;
  // Attention fixed upfront: the chosen alternative everywhere, the whole
  // budget wherever the clamped threshold equals the budget size.
  std::vector<AltSet> fixed_attention;
  std::vector<ForcedEdge> forced_edges;  // implied by fixed_attention
  std::vector<OrClause> or_clauses;
  std::vector<CardinalityRow> cardinality_rows;
};

ConstraintProgram compile(const ChoiceDataset& data,
                          const ThresholdProfile& profile);

struct SolveResult {
  bool feasible = false;
  std::optional<Witness> witness;          // present iff feasible
  std::vector<int> conflict_observations;  // best-effort, iff infeasible
};

// Exact decision: feasible iff the data is rationalizable at the profile.
// Deterministic: identical inputs yield identical witnesses.
SolveResult solve_rationalizability(const ChoiceDataset& data,
                                    const ThresholdProfile& profile);

enum class BatchVerdict { Feasible, Infeasible, Error };

// One verdict per (subject, profile); per-subject errors (e.g. a profile
// that does not cover a subject) are recorded without aborting the batch.
// Deterministic regardless of execution order.
std::vector<std::vector<BatchVerdict>> solve_batch(
    const std::vector<ChoiceDataset>& subjects,
    const std::vector<ThresholdProfile>& profiles, int jobs = 1);

namespace detail {

// Shared search core: enumerates attention assignments satisfying the
// program. The visitor runs on every complete assignment found (attended
// sets plus final digraph) and returns false to keep searching or true to
// stop. `prune` may cut subtrees (used by the welfare minimizer); it sees
// the partial digraph after each committed decision.
struct SearchHooks {
  // Return true to accept and stop the whole search.
  virtual bool on_solution(const std::vector<AltSet>& attended,
                           const PreferenceDigraph& graph) = 0;
  // Return true to prune the current subtree.
  virtual bool prune(const std::vector<AltSet>& attended,
                     const PreferenceDigraph& graph) {
    (void)attended;
    (void)graph;
    return false;
  }
  virtual ~SearchHooks() = default;
};

// Runs the branch-and-backtrack search; returns true if some solution was
// accepted by the hooks. Fills `conflict` (best effort) when the search
// exhausts without any solution.
bool search_program(const ConstraintProgram& program, SearchHooks& hooks,
                    std::vector<int>* conflict);

Witness make_witness(const std::vector<AltSet>& attended,
                     const PreferenceDigraph& graph);

}  // namespace detail

}  // namespace cla
