#pragma once

#include <optional>
#include <vector>

#include "cla/core.hpp"

namespace cla {

enum class Axiom {
  SarpK,
  WarpLaK,
  Nbc,
  KContraction,
  SarpHet,
  WarpLaHet,
};

const char* to_string(Axiom axiom);

// Diagnostic record: the observations cited reproduce the violation when
// replayed against the axiom's definition.
struct AxiomViolation {
  Axiom axiom{};
  std::vector<int> witness_observations;
  std::vector<AltId> cycle_or_tuple;
};

// Revealed edges are built from observed budgets of size <= k; a violation
// is a directed cycle in that relation. Returns one shortest offending
// chain, canonically rotated. All checkers skip premises the data cannot
// instantiate (missing budgets are never guessed).
std::optional<AxiomViolation> check_sarp_k(const ChoiceDataset& data, int k);

// A choice reversal against a fully-attentive (size <= k) budget must
// survive removal of the reversed alternative: for observed S, T with
// x, y in both, |T| <= k, x = c(S), y = c(T), it must hold that
// c(S \ {y}) = x whenever S \ {y} is observed.
std::optional<AxiomViolation> check_warp_la_k(const ChoiceDataset& data, int k);

// No binary cycles: the relation from observed doubletons is acyclic.
std::optional<AxiomViolation> check_nbc(const ChoiceDataset& data);

// Each chosen alternative must win at least min(|B|, k) - 1 observed
// pairwise contests against its budget-mates. Pairs never observed count
// as undecided, so only certain violations are reported.
std::optional<AxiomViolation> check_k_contraction(const ChoiceDataset& data,
                                                  int k);

// Heterogeneous analogues: an observation is fully attentive when its
// budget size is at most its own threshold; the revealed relation and the
// removal check mirror the uniform checkers with per-budget thresholds.
std::vector<AxiomViolation> check_heterogeneous(const ChoiceDataset& data,
                                                const ThresholdProfile& profile);

}  // namespace cla
