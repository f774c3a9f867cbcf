#include "cla/axioms.hpp"

#include <algorithm>
#include <unordered_map>

namespace cla {

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::SarpK: return "SARP^k";
    case Axiom::WarpLaK: return "WARP(LA^k)";
    case Axiom::Nbc: return "NBC";
    case Axiom::KContraction: return "k-Contraction";
    case Axiom::SarpHet: return "SARP^het";
    case Axiom::WarpLaHet: return "WARP(LA^het)";
  }
  return "?";
}

namespace {

struct Relation {
  int n = 0;
  std::vector<AltSet> edges;          // direct: chosen -> budget-mate
  std::vector<std::vector<int>> src;  // first observation yielding the edge

  explicit Relation(int n_alts)
      : n(n_alts), edges(n_alts, 0),
        src(n_alts, std::vector<int>(n_alts, -1)) {}

  void add(AltId u, AltId v, int obs) {
    if (!set_contains(edges[u], v)) {
      edges[u] |= alt_bit(v);
      src[u][v] = obs;
    }
  }

  std::vector<AltSet> closure() const {
    std::vector<AltSet> reach = edges;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int u = 0; u < n; ++u) {
        AltSet acc = reach[u];
        for_each_member(reach[u], [&](AltId v) { acc |= reach[v]; });
        if (acc != reach[u]) {
          reach[u] = acc;
          changed = true;
        }
      }
    }
    return reach;
  }

  // Shortest path u -> ... -> v over direct edges (BFS, lowest id first).
  std::vector<AltId> path(AltId from, AltId to) const {
    std::vector<AltId> parent(static_cast<std::size_t>(n), -1);
    std::vector<AltId> queue{from};
    parent[from] = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for_each_member(edges[queue[head]], [&](AltId v) {
        if (parent[v] == -1) {
          parent[v] = queue[head];
          queue.push_back(v);
        }
      });
    }
    if (parent[to] == -1) return {};
    std::vector<AltId> out;
    for (AltId v = to; v != from; v = parent[v]) out.push_back(v);
    out.push_back(from);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

std::vector<AltId> rotate_min_first(std::vector<AltId> cycle) {
  const auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  return cycle;
}

// A violation is a direct edge v -> u together with a chain u ~> v; i.e. a
// directed cycle. Reports one shortest cycle (ties: lexicographically
// smallest after rotating the minimum id to the front).
std::optional<AxiomViolation> find_cycle(const Relation& rel, Axiom axiom) {
  const auto reach = rel.closure();
  std::vector<AltId> best;
  for (AltId u = 0; u < rel.n; ++u) {
    if (!set_contains(reach[u], u)) continue;  // u lies on no cycle
    for_each_member(rel.edges[u], [&](AltId v) {
      if (!set_contains(reach[v], u)) return;
      // cycle: u -> v -> ... -> u
      auto chain = rel.path(v, u);  // v ... u
      std::vector<AltId> cycle{u};
      cycle.insert(cycle.end(), chain.begin(), chain.end() - 1);
      cycle = rotate_min_first(std::move(cycle));
      if (best.empty() || cycle.size() < best.size() ||
          (cycle.size() == best.size() && cycle < best)) {
        best = std::move(cycle);
      }
    });
  }
  if (best.empty()) return std::nullopt;
  AxiomViolation violation;
  violation.axiom = axiom;
  violation.cycle_or_tuple = best;
  for (std::size_t t = 0; t < best.size(); ++t) {
    const AltId u = best[t];
    const AltId v = best[(t + 1) % best.size()];
    const int obs = rel.src[u][v];
    if (obs >= 0) violation.witness_observations.push_back(obs);
  }
  return violation;
}

std::unordered_map<AltSet, int> budget_index(const ChoiceDataset& data) {
  std::unordered_map<AltSet, int> index;
  const auto& obs = data.observations();
  for (int i = 0; i < static_cast<int>(obs.size()); ++i) {
    index.emplace(obs[i].budget, i);
  }
  return index;
}

// Shared body of the uniform and heterogeneous SARP variants;
// `fully_attentive(i)` decides which observations generate revealed edges.
template <typename Pred>
std::optional<AxiomViolation> sarp_violation(const ChoiceDataset& data,
                                             Pred fully_attentive,
                                             Axiom axiom) {
  Relation rel(data.universe_size());
  const auto& obs = data.observations();
  for (int i = 0; i < static_cast<int>(obs.size()); ++i) {
    if (!fully_attentive(i)) continue;
    for_each_member(obs[i].budget & ~alt_bit(obs[i].choice),
                    [&](AltId y) { rel.add(obs[i].choice, y, i); });
  }
  return find_cycle(rel, axiom);
}

template <typename Pred>
std::optional<AxiomViolation> warp_violation(const ChoiceDataset& data,
                                             Pred fully_attentive,
                                             Axiom axiom) {
  const auto& obs = data.observations();
  const auto index = budget_index(data);
  const int n = static_cast<int>(obs.size());
  for (int s = 0; s < n; ++s) {
    const AltId x = obs[s].choice;
    for (int t = 0; t < n; ++t) {
      if (t == s || !fully_attentive(t)) continue;
      const AltId y = obs[t].choice;
      if (y == x) continue;
      if (!set_contains(obs[s].budget & obs[t].budget, x)) continue;
      if (!set_contains(obs[s].budget & obs[t].budget, y)) continue;
      const AltSet removed = obs[s].budget & ~alt_bit(y);
      const auto it = index.find(removed);
      if (it == index.end()) continue;  // premise not instantiable
      if (obs[it->second].choice != x) {
        AxiomViolation violation;
        violation.axiom = axiom;
        violation.witness_observations = {s, t, it->second};
        violation.cycle_or_tuple = {x, y, obs[it->second].choice};
        return violation;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<AxiomViolation> check_sarp_k(const ChoiceDataset& data, int k) {
  const auto& obs = data.observations();
  return sarp_violation(
      data, [&](int i) { return obs[i].budget_size() <= k; }, Axiom::SarpK);
}

std::optional<AxiomViolation> check_warp_la_k(const ChoiceDataset& data,
                                              int k) {
  const auto& obs = data.observations();
  return warp_violation(
      data, [&](int i) { return obs[i].budget_size() <= k; }, Axiom::WarpLaK);
}

std::optional<AxiomViolation> check_nbc(const ChoiceDataset& data) {
  const auto& obs = data.observations();
  return sarp_violation(
      data, [&](int i) { return obs[i].budget_size() == 2; }, Axiom::Nbc);
}

std::optional<AxiomViolation> check_k_contraction(const ChoiceDataset& data,
                                                  int k) {
  const auto& obs = data.observations();
  const auto index = budget_index(data);
  for (int i = 0; i < static_cast<int>(obs.size()); ++i) {
    const AltId x = obs[i].choice;
    int wins = 0;
    int undecided = 0;
    std::vector<AltId> losses;
    for_each_member(obs[i].budget & ~alt_bit(x), [&](AltId y) {
      const auto it = index.find(alt_bit(x) | alt_bit(y));
      if (it == index.end()) {
        ++undecided;
      } else if (obs[it->second].choice == x) {
        ++wins;
      } else {
        losses.push_back(y);
      }
    });
    const int needed = std::min(obs[i].budget_size(), k) - 1;
    if (wins + undecided < needed) {
      AxiomViolation violation;
      violation.axiom = Axiom::KContraction;
      violation.witness_observations = {i};
      for (AltId y : losses) {
        violation.witness_observations.push_back(
            index.at(alt_bit(x) | alt_bit(y)));
      }
      violation.cycle_or_tuple = {x};
      violation.cycle_or_tuple.insert(violation.cycle_or_tuple.end(),
                                      losses.begin(), losses.end());
      return violation;
    }
  }
  return std::nullopt;
}

std::vector<AxiomViolation> check_heterogeneous(
    const ChoiceDataset& data, const ThresholdProfile& profile) {
  profile.check_compatible(data);
  const auto& obs = data.observations();
  auto fully_attentive = [&](int i) {
    return obs[i].budget_size() <=
           profile.at(static_cast<std::size_t>(i));
  };
  std::vector<AxiomViolation> violations;
  if (auto v = sarp_violation(data, fully_attentive, Axiom::SarpHet)) {
    violations.push_back(std::move(*v));
  }
  // Collect every removal failure, not just the first.
  const auto index = budget_index(data);
  const int n = static_cast<int>(obs.size());
  for (int s = 0; s < n; ++s) {
    const AltId x = obs[s].choice;
    for (int t = 0; t < n; ++t) {
      if (t == s || !fully_attentive(t)) continue;
      const AltId y = obs[t].choice;
      if (y == x) continue;
      if (!set_contains(obs[s].budget & obs[t].budget, x)) continue;
      if (!set_contains(obs[s].budget & obs[t].budget, y)) continue;
      const auto it = index.find(obs[s].budget & ~alt_bit(y));
      if (it == index.end()) continue;
      if (obs[it->second].choice != x) {
        AxiomViolation violation;
        violation.axiom = Axiom::WarpLaHet;
        violation.witness_observations = {s, t, it->second};
        violation.cycle_or_tuple = {x, y, obs[it->second].choice};
        violations.push_back(std::move(violation));
      }
    }
  }
  return violations;
}

}  // namespace cla
