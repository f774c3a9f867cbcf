#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cla {

// Alternatives are interned to dense ids 0..|X|-1; a budget is a bitmask
// over them. Universes wider than the word width are rejected on ingest.
using AltId = int;
using AltSet = std::uint64_t;

inline constexpr int max_universe_size = 64;

constexpr AltSet alt_bit(AltId a) { return AltSet{1} << a; }
constexpr bool set_contains(AltSet s, AltId a) { return (s >> a) & AltSet{1}; }
constexpr int set_size(AltSet s) { return std::popcount(s); }
constexpr AltSet full_set(int n) {
  return n >= 64 ? ~AltSet{0} : (AltSet{1} << n) - 1;
}

template <typename Fn>
void for_each_member(AltSet s, Fn&& fn) {
  while (s) {
    fn(static_cast<AltId>(std::countr_zero(s)));
    s &= s - 1;
  }
}

std::vector<AltId> set_members(AltSet s);
AltSet set_from_members(const std::vector<AltId>& members);

struct Alternative {
  AltId id = 0;
  std::string label;
};

struct Observation {
  AltSet budget = 0;
  AltId choice = -1;

  int budget_size() const { return set_size(budget); }
  friend bool operator==(const Observation&, const Observation&) = default;
};

enum class ValidationCode {
  ChoiceNotInBudget,
  ConflictingDuplicateBudget,
  EmptyBudget,
  UnknownAlternative,
  UniverseTooLarge,
};

const char* to_string(ValidationCode code);

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationCode code, std::ptrdiff_t observation,
                  const std::string& what);

  ValidationCode code() const { return code_; }
  // Index of the offending raw observation, -1 when not tied to one.
  std::ptrdiff_t observation() const { return observation_; }

 private:
  ValidationCode code_;
  std::ptrdiff_t observation_;
};

// A subject's observed choices over a fixed universe. Immutable once built;
// the budget -> choice map is a function (identical duplicates are dropped,
// keeping the first occurrence; conflicting duplicates fail validation).
class ChoiceDataset {
 public:
  ChoiceDataset() = default;

  // Validates and deduplicates. Throws ValidationError.
  static ChoiceDataset validate(int universe_size,
                                const std::vector<Observation>& raw,
                                std::vector<std::string> labels = {});

  int universe_size() const { return universe_size_; }
  AltSet universe_set() const { return full_set(universe_size_); }
  const std::vector<Observation>& observations() const { return observations_; }
  std::size_t size() const { return observations_.size(); }
  int max_budget_size() const;

  const std::string& label(AltId a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // All nonempty subsets of the universe observed (classical complete domain).
  bool is_complete_domain() const;

 private:
  int universe_size_ = 0;
  std::vector<Observation> observations_;
  std::vector<std::string> labels_;
};

// Minimum-consideration requirement: a uniform threshold k, or one
// threshold per observation. Effective threshold for observation i is
// always clamped to min(k_i, |B_i|).
class ThresholdProfile {
 public:
  static ThresholdProfile uniform(int k);
  static ThresholdProfile per_budget(std::vector<int> thresholds);

  bool is_uniform() const { return uniform_; }
  int uniform_k() const;

  // Raw threshold for observation i (unclamped).
  int at(std::size_t obs_index) const;
  // min(k_i, budget_size): the binding cardinality requirement.
  int effective(std::size_t obs_index, int budget_size) const;

  // The per-budget list must cover every observation of `data`.
  void check_compatible(const ChoiceDataset& data) const;

 private:
  bool uniform_ = true;
  int k_ = 1;
  std::vector<int> thresholds_;
};

// Strict total order over the universe; position 0 is the best alternative.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;
  explicit PreferenceOrder(std::vector<AltId> ranking);

  bool valid_for(int universe_size) const;
  const std::vector<AltId>& ranking() const { return ranking_; }
  int rank_of(AltId a) const { return ranks_[a]; }
  bool prefers(AltId a, AltId b) const { return ranks_[a] < ranks_[b]; }
  AltId best_of(AltSet s) const;

 private:
  std::vector<AltId> ranking_;
  std::vector<int> ranks_;
};

// A certificate of rationalizability: a strict order plus one consideration
// set per observation.
struct Witness {
  PreferenceOrder preference;
  std::vector<AltSet> attention;  // parallel to observations
};

// Pure check of all Witness invariants against data and profile: attention
// sets are in-budget, contain the choice, meet the cardinality floor, the
// choice is preference-maximal, and every cross-budget choice reversal is
// covered by attention to a removed alternative on at least one side.
// Malformed witnesses return false; nothing throws.
bool verify_witness(const ChoiceDataset& data, const ThresholdProfile& profile,
                    const Witness& witness);

}  // namespace cla
