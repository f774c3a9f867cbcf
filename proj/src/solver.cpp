#include "cla/solver.hpp"

#include <algorithm>
#include <cstddef>

#include "cla/parallel.hpp"

namespace cla {

ConstraintProgram compile(const ChoiceDataset& data,
                          const ThresholdProfile& profile) {
  profile.check_compatible(data);
  const auto& obs = data.observations();
  const int n_obs = static_cast<int>(obs.size());

  ConstraintProgram prog;
  prog.n_alternatives = data.universe_size();
  prog.budgets.reserve(obs.size());
  prog.choices.reserve(obs.size());
  prog.fixed_attention.reserve(obs.size());
  for (int i = 0; i < n_obs; ++i) {
    prog.budgets.push_back(obs[i].budget);
    prog.choices.push_back(obs[i].choice);
    const int b = obs[i].budget_size();
    const int need = profile.effective(static_cast<std::size_t>(i), b);
    prog.cardinality_rows.push_back({i, need});
    AltSet fixed = alt_bit(obs[i].choice);
    if (need == b) {
      fixed = obs[i].budget;  // whole budget attended when the floor binds
      for_each_member(obs[i].budget & ~alt_bit(obs[i].choice), [&](AltId y) {
        prog.forced_edges.push_back({obs[i].choice, y, i});
      });
    }
    prog.fixed_attention.push_back(fixed);
  }

  // A choice reversal with both choices available on both sides means at
  // least one removed alternative was attended.
  for (int i = 0; i < n_obs; ++i) {
    for (int j = i + 1; j < n_obs; ++j) {
      if (obs[i].choice == obs[j].choice) continue;
      if (!set_contains(obs[j].budget, obs[i].choice)) continue;
      if (!set_contains(obs[i].budget, obs[j].choice)) continue;
      OrClause clause;
      clause.obs_i = i;
      clause.obs_j = j;
      for_each_member(obs[i].budget & ~obs[j].budget,
                      [&](AltId x) { clause.literals.push_back({i, x}); });
      for_each_member(obs[j].budget & ~obs[i].budget,
                      [&](AltId x) { clause.literals.push_back({j, x}); });
      prog.or_clauses.push_back(std::move(clause));
    }
  }
  return prog;
}

namespace detail {

namespace {

struct State {
  std::vector<AltSet> attended;
  PreferenceDigraph graph;
};

class Searcher {
 public:
  Searcher(const ConstraintProgram& prog, SearchHooks& hooks)
      : prog_(prog), hooks_(hooks), n_obs_(static_cast<int>(prog.budgets.size())) {}

  bool run(std::vector<int>* conflict) {
    State root{prog_.fixed_attention, PreferenceDigraph(prog_.n_alternatives)};
    bool ok = true;
    for (const ForcedEdge& e : prog_.forced_edges) {
      if (!root.graph.add_edge(e.from, e.to)) {
        record_cycle_conflict(root, e.from, e.to, {e.obs});
        ok = false;
        break;
      }
    }
    if (ok) search(std::move(root));
    if (!any_solution_ && conflict != nullptr) *conflict = conflict_;
    return any_solution_;
  }

 private:
  bool clause_satisfied(const State& s, const OrClause& c) const {
    for (const DeltaRef& l : c.literals) {
      if (set_contains(s.attended[l.obs], l.alt)) return true;
    }
    return false;
  }

  bool literal_viable(const State& s, const DeltaRef& l) const {
    return !s.graph.would_close_cycle(prog_.choices[l.obs], l.alt);
  }

  // Attending an alternative forces the edge "choice beats it".
  bool attend(State& s, int obs, AltId alt) {
    if (set_contains(s.attended[obs], alt)) return true;
    if (alt != prog_.choices[obs] &&
        !s.graph.add_edge(prog_.choices[obs], alt)) {
      return false;
    }
    s.attended[obs] |= alt_bit(alt);
    return true;
  }

  void record_cycle_conflict(const State& s, AltId from, AltId to,
                             std::initializer_list<int> context) {
    std::vector<int> out(context);
    const auto path = s.graph.find_path(to, from);
    auto edge_source = [&](AltId u, AltId v) {
      for (int o = 0; o < n_obs_; ++o) {
        if (prog_.choices[o] == u && set_contains(s.attended[o], v)) {
          out.push_back(o);
          return;
        }
      }
    };
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      edge_source(path[t], path[t + 1]);
    }
    edge_source(from, to);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    conflict_ = std::move(out);
  }

  void record_conflict(std::initializer_list<int> observations) {
    conflict_.assign(observations);
    std::sort(conflict_.begin(), conflict_.end());
  }

  // Fixpoint over unsatisfied clauses: literals whose edge would close a
  // cycle are dead for the whole subtree, so a clause with one live literal
  // is a unit. Returns false on a clause with no live literals.
  bool propagate(State& s) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const OrClause& c : prog_.or_clauses) {
        if (clause_satisfied(s, c)) continue;
        const DeltaRef* unit = nullptr;
        int live = 0;
        for (const DeltaRef& l : c.literals) {
          if (literal_viable(s, l)) {
            ++live;
            unit = &l;
            if (live > 1) break;
          }
        }
        if (live == 0) {
          record_conflict({c.obs_i, c.obs_j});
          return false;
        }
        if (live == 1) {
          attend(s, unit->obs, unit->alt);  // viable, cannot fail
          changed = true;
        }
      }
    }
    return true;
  }

  void search(State s) {
    if (stop_) return;
    if (!propagate(s)) return;
    if (hooks_.prune(s.attended, s.graph)) return;

    // Branch on the unresolved clause with the fewest live literals.
    const OrClause* target = nullptr;
    int best_live = 0;
    for (const OrClause& c : prog_.or_clauses) {
      if (clause_satisfied(s, c)) continue;
      int live = 0;
      for (const DeltaRef& l : c.literals) {
        if (literal_viable(s, l)) ++live;
      }
      if (target == nullptr || live < best_live) {
        target = &c;
        best_live = live;
      }
    }
    if (target != nullptr) {
      // Zero-cost literals (edge already implied) first.
      std::vector<const DeltaRef*> order;
      order.reserve(target->literals.size());
      for (const DeltaRef& l : target->literals) {
        if (literal_viable(s, l) &&
            s.graph.implies(prog_.choices[l.obs], l.alt)) {
          order.push_back(&l);
        }
      }
      for (const DeltaRef& l : target->literals) {
        if (literal_viable(s, l) &&
            !s.graph.implies(prog_.choices[l.obs], l.alt)) {
          order.push_back(&l);
        }
      }
      for (const DeltaRef* l : order) {
        if (stop_) return;
        State child = s;
        attend(child, l->obs, l->alt);
        search(std::move(child));
      }
      return;
    }
    fill(std::move(s), 0);
  }

  // All clauses resolved: meet the cardinality floors observation by
  // observation. Alternatives already below the choice are attended first
  // (their edges are implied, so nothing else is constrained); only the
  // remainder branches.
  void fill(State s, int idx) {
    if (stop_) return;
    while (idx < n_obs_) {
      if (hooks_.prune(s.attended, s.graph)) return;
      const AltId choice = prog_.choices[idx];
      int need = prog_.cardinality_rows[idx].min_required -
                 set_size(s.attended[idx]);
      if (need <= 0) {
        ++idx;
        continue;
      }
      const AltSet candidates = prog_.budgets[idx] & ~s.attended[idx];
      AltSet free = candidates & s.graph.descendants(choice);
      while (need > 0 && free != 0) {
        const AltId x = std::countr_zero(free);
        free &= free - 1;
        s.attended[idx] |= alt_bit(x);
        --need;
      }
      if (need == 0) {
        ++idx;
        continue;
      }
      std::vector<AltId> fresh;
      for_each_member(candidates & ~s.graph.descendants(choice), [&](AltId x) {
        if (!s.graph.would_close_cycle(choice, x)) fresh.push_back(x);
      });
      if (static_cast<int>(fresh.size()) < need) {
        record_conflict({idx});
        return;
      }
      choose(s, idx, fresh, need, 0);
      return;
    }
    any_solution_ = true;
    if (hooks_.on_solution(s.attended, s.graph)) stop_ = true;
  }

  void choose(const State& s, int idx, const std::vector<AltId>& fresh,
              int need, std::size_t from) {
    if (stop_) return;
    if (need == 0) {
      fill(s, idx + 1);
      return;
    }
    for (std::size_t t = from;
         t + static_cast<std::size_t>(need) <= fresh.size(); ++t) {
      if (stop_) return;
      const AltId x = fresh[t];
      if (s.graph.would_close_cycle(prog_.choices[idx], x)) continue;
      State child = s;
      attend(child, idx, x);
      choose(child, idx, fresh, need - 1, t + 1);
    }
  }

  const ConstraintProgram& prog_;
  SearchHooks& hooks_;
  const int n_obs_;
  bool stop_ = false;
  bool any_solution_ = false;
  std::vector<int> conflict_;
};

}  // namespace

bool search_program(const ConstraintProgram& program, SearchHooks& hooks,
                    std::vector<int>* conflict) {
  Searcher searcher(program, hooks);
  return searcher.run(conflict);
}

Witness make_witness(const std::vector<AltSet>& attended,
                     const PreferenceDigraph& graph) {
  Witness w;
  w.preference = PreferenceOrder(graph.topological_order());
  w.attention = attended;
  return w;
}

}  // namespace detail

namespace {

struct FirstSolutionHooks final : detail::SearchHooks {
  Witness witness;
  bool on_solution(const std::vector<AltSet>& attended,
                   const PreferenceDigraph& graph) override {
    witness = detail::make_witness(attended, graph);
    return true;
  }
};

}  // namespace

SolveResult solve_rationalizability(const ChoiceDataset& data,
                                    const ThresholdProfile& profile) {
  const ConstraintProgram prog = compile(data, profile);
  FirstSolutionHooks hooks;
  SolveResult result;
  result.feasible =
      detail::search_program(prog, hooks, &result.conflict_observations);
  if (result.feasible) {
    result.witness = std::move(hooks.witness);
    result.conflict_observations.clear();
  }
  return result;
}

std::vector<std::vector<BatchVerdict>> solve_batch(
    const std::vector<ChoiceDataset>& subjects,
    const std::vector<ThresholdProfile>& profiles, int jobs) {
  std::vector<std::vector<BatchVerdict>> verdicts(
      subjects.size(),
      std::vector<BatchVerdict>(profiles.size(), BatchVerdict::Error));
  parallel_for(subjects.size(), jobs, [&](std::size_t s) {
    for (std::size_t p = 0; p < profiles.size(); ++p) {
      try {
        verdicts[s][p] = solve_rationalizability(subjects[s], profiles[p]).feasible
                             ? BatchVerdict::Feasible
                             : BatchVerdict::Infeasible;
      } catch (const std::exception&) {
        verdicts[s][p] = BatchVerdict::Error;
      }
    }
  });
  return verdicts;
}

}  // namespace cla
