#include "cla/digraph.hpp"

#include <algorithm>

namespace cla {

bool PreferenceDigraph::add_edge(AltId a, AltId b) {
  if (would_close_cycle(a, b)) return false;
  succ_[a] |= alt_bit(b);
  if (implies(a, b)) return true;  // closure unchanged
  const AltSet gain = desc_[b] | alt_bit(b);
  for (AltId u = 0; u < n_; ++u) {
    if (u == a || set_contains(desc_[u], a)) desc_[u] |= gain;
  }
  return true;
}

std::vector<AltId> PreferenceDigraph::topological_order() const {
  // anc[u] = nodes that must come before u.
  std::vector<AltSet> anc(n_, 0);
  for (AltId v = 0; v < n_; ++v) {
    for_each_member(desc_[v], [&](AltId u) { anc[u] |= alt_bit(v); });
  }
  std::vector<AltId> order;
  order.reserve(static_cast<std::size_t>(n_));
  AltSet remaining = full_set(n_);
  while (remaining) {
    AltId pick = -1;
    for_each_member(remaining, [&](AltId u) {
      if (pick == -1 && (anc[u] & remaining) == 0) pick = u;
    });
    order.push_back(pick);
    remaining &= ~alt_bit(pick);
  }
  return order;
}

std::vector<AltId> PreferenceDigraph::find_path(AltId from, AltId to) const {
  std::vector<AltId> parent(static_cast<std::size_t>(n_), -1);
  std::vector<AltId> queue{from};
  parent[from] = from;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    AltId u = queue[head];
    if (u == to) break;
    for_each_member(succ_[u], [&](AltId v) {
      if (parent[v] == -1) {
        parent[v] = u;
        queue.push_back(v);
      }
    });
  }
  if (parent[to] == -1) return {};
  std::vector<AltId> path;
  for (AltId v = to; v != from; v = parent[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace cla
