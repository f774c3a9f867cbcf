#include "cla/core.hpp"

#include <algorithm>
#include <unordered_map>

namespace cla {

std::vector<AltId> set_members(AltSet s) {
  std::vector<AltId> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  for_each_member(s, [&](AltId a) { out.push_back(a); });
  return out;
}

AltSet set_from_members(const std::vector<AltId>& members) {
  AltSet s = 0;
  for (AltId a : members) s |= alt_bit(a);
  return s;
}

const char* to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::ChoiceNotInBudget: return "ChoiceNotInBudget";
    case ValidationCode::ConflictingDuplicateBudget:
      return "ConflictingDuplicateBudget";
    case ValidationCode::EmptyBudget: return "EmptyBudget";
    case ValidationCode::UnknownAlternative: return "UnknownAlternative";
    case ValidationCode::UniverseTooLarge: return "UniverseTooLarge";
  }
  return "?";
}

ValidationError::ValidationError(ValidationCode code,
                                 std::ptrdiff_t observation,
                                 const std::string& what)
    : std::runtime_error(what), code_(code), observation_(observation) {}

ChoiceDataset ChoiceDataset::validate(int universe_size,
                                      const std::vector<Observation>& raw,
                                      std::vector<std::string> labels) {
  if (universe_size < 0 || universe_size > max_universe_size) {
    throw ValidationError(
        ValidationCode::UniverseTooLarge, -1,
        "universe size " + std::to_string(universe_size) + " exceeds the " +
            std::to_string(max_universe_size) + "-alternative limit");
  }
  const AltSet universe = full_set(universe_size);

  ChoiceDataset data;
  data.universe_size_ = universe_size;
  std::unordered_map<AltSet, AltId> seen;  // budget -> choice of first copy
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Observation& obs = raw[i];
    if (obs.budget == 0) {
      throw ValidationError(ValidationCode::EmptyBudget,
                            static_cast<std::ptrdiff_t>(i),
                            "observation " + std::to_string(i) +
                                ": budget is empty");
    }
    if ((obs.budget & ~universe) != 0 || obs.choice < 0 ||
        obs.choice >= universe_size) {
      throw ValidationError(ValidationCode::UnknownAlternative,
                            static_cast<std::ptrdiff_t>(i),
                            "observation " + std::to_string(i) +
                                ": alternative outside the universe");
    }
    if (!set_contains(obs.budget, obs.choice)) {
      throw ValidationError(ValidationCode::ChoiceNotInBudget,
                            static_cast<std::ptrdiff_t>(i),
                            "observation " + std::to_string(i) +
                                ": choice not in budget");
    }
    auto [it, inserted] = seen.emplace(obs.budget, obs.choice);
    if (!inserted) {
      if (it->second != obs.choice) {
        throw ValidationError(ValidationCode::ConflictingDuplicateBudget,
                              static_cast<std::ptrdiff_t>(i),
                              "observation " + std::to_string(i) +
                                  ": same budget observed with a different "
                                  "choice");
      }
      continue;  // identical duplicate, keep first
    }
    data.observations_.push_back(obs);
  }

  if (labels.empty()) {
    labels.reserve(static_cast<std::size_t>(universe_size));
    for (int a = 0; a < universe_size; ++a) {
      labels.push_back("x" + std::to_string(a + 1));
    }
  } else if (static_cast<int>(labels.size()) != universe_size) {
    throw ValidationError(ValidationCode::UnknownAlternative, -1,
                          "label list does not match the universe size");
  }
  data.labels_ = std::move(labels);
  return data;
}

int ChoiceDataset::max_budget_size() const {
  int m = 0;
  for (const Observation& obs : observations_) {
    m = std::max(m, obs.budget_size());
  }
  return m;
}

bool ChoiceDataset::is_complete_domain() const {
  if (universe_size_ > 24) return false;  // a complete domain this wide cannot occur
  const auto want = (AltSet{1} << universe_size_) - 1;  // 2^n - 1 subsets
  // Observations are distinct sets by construction, so counting suffices.
  return observations_.size() == static_cast<std::size_t>(want);
}

ThresholdProfile ThresholdProfile::uniform(int k) {
  if (k < 1) throw std::invalid_argument("threshold must be >= 1");
  ThresholdProfile p;
  p.uniform_ = true;
  p.k_ = k;
  return p;
}

ThresholdProfile ThresholdProfile::per_budget(std::vector<int> thresholds) {
  for (int k : thresholds) {
    if (k < 1) throw std::invalid_argument("thresholds must be >= 1");
  }
  ThresholdProfile p;
  p.uniform_ = false;
  p.thresholds_ = std::move(thresholds);
  return p;
}

int ThresholdProfile::uniform_k() const {
  if (!uniform_) throw std::logic_error("profile is per-budget");
  return k_;
}

int ThresholdProfile::at(std::size_t obs_index) const {
  if (uniform_) return k_;
  if (obs_index >= thresholds_.size()) {
    throw std::invalid_argument("profile does not cover observation " +
                                std::to_string(obs_index));
  }
  return thresholds_[obs_index];
}

int ThresholdProfile::effective(std::size_t obs_index, int budget_size) const {
  return std::min(at(obs_index), budget_size);
}

void ThresholdProfile::check_compatible(const ChoiceDataset& data) const {
  if (!uniform_ && thresholds_.size() != data.size()) {
    throw std::invalid_argument(
        "per-budget profile has " + std::to_string(thresholds_.size()) +
        " thresholds for " + std::to_string(data.size()) + " observations");
  }
}

PreferenceOrder::PreferenceOrder(std::vector<AltId> ranking)
    : ranking_(std::move(ranking)) {
  ranks_.assign(ranking_.size(), -1);
  for (std::size_t pos = 0; pos < ranking_.size(); ++pos) {
    AltId a = ranking_[pos];
    if (a < 0 || a >= static_cast<AltId>(ranking_.size()) || ranks_[a] != -1) {
      ranks_.clear();  // not a permutation; valid_for() reports it
      return;
    }
    ranks_[a] = static_cast<int>(pos);
  }
}

bool PreferenceOrder::valid_for(int universe_size) const {
  return static_cast<int>(ranking_.size()) == universe_size &&
         static_cast<int>(ranks_.size()) == universe_size;
}

AltId PreferenceOrder::best_of(AltSet s) const {
  AltId best = -1;
  for_each_member(s, [&](AltId a) {
    if (best == -1 || ranks_[a] < ranks_[best]) best = a;
  });
  return best;
}

bool verify_witness(const ChoiceDataset& data, const ThresholdProfile& profile,
                    const Witness& witness) {
  const auto& obs = data.observations();
  if (!witness.preference.valid_for(data.universe_size())) return false;
  if (witness.attention.size() != obs.size()) return false;
  try {
    profile.check_compatible(data);
  } catch (const std::exception&) {
    return false;
  }

  for (std::size_t i = 0; i < obs.size(); ++i) {
    const AltSet attended = witness.attention[i];
    if ((attended & ~obs[i].budget) != 0) return false;
    if (!set_contains(attended, obs[i].choice)) return false;
    if (set_size(attended) < profile.effective(i, obs[i].budget_size())) {
      return false;
    }
    if (witness.preference.best_of(attended) != obs[i].choice) return false;
  }

  // Choice reversals must be explained by attention to a removed
  // alternative on at least one side.
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      if (obs[i].choice == obs[j].choice) continue;
      if (!set_contains(obs[j].budget, obs[i].choice)) continue;
      if (!set_contains(obs[i].budget, obs[j].choice)) continue;
      const AltSet removed_i = witness.attention[i] & (obs[i].budget & ~obs[j].budget);
      const AltSet removed_j = witness.attention[j] & (obs[j].budget & ~obs[i].budget);
      if (removed_i == 0 && removed_j == 0) return false;
    }
  }
  return true;
}

}  // namespace cla
