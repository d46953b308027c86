#include "endkit/path_graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "endkit/error.hpp"

namespace endkit {

Count count_add(Count a, Count b) {
  if (!a || !b) return std::nullopt;
  if (*a > std::numeric_limits<std::uint64_t>::max() - *b) {
    throw Error("ends", "Overflow", "unfolding count exceeds 64 bits");
  }
  return *a + *b;
}

Count count_mul(Count a, Count b) {
  if (a && *a == 0) return 0;
  if (b && *b == 0) return 0;
  if (!a || !b) return std::nullopt;
  if (*a > std::numeric_limits<std::uint64_t>::max() / *b) {
    throw Error("ends", "Overflow", "unfolding count exceeds 64 bits");
  }
  return *a * *b;
}

std::string count_to_string(Count c) { return c ? std::to_string(*c) : "inf"; }

SccDecomposition strongly_connected(const PathGraph& g) {
  const int n = g.size();
  SccDecomposition out;
  out.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0;

  // Iterative Tarjan: frames hold (state, next successor position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int start = 0; start < n; ++start) {
    if (index[start] >= 0) continue;
    frames.emplace_back(start, 0);
    index[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < g.succ[v].size()) {
        const int w = g.succ[v][pos++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      }
      if (low[done] == index[done]) {
        const int id = out.count();
        out.members.emplace_back();
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = id;
          out.members.back().push_back(w);
        } while (w != done);
        std::sort(out.members.back().begin(), out.members.back().end());
      }
    }
  }

  out.cyclic.assign(out.count(), false);
  out.perfect.assign(out.count(), false);
  for (int v = 0; v < n; ++v) {
    int inside = 0;
    for (int w : g.succ[v]) {
      if (out.component[w] == out.component[v]) ++inside;
    }
    if (inside >= 1) out.cyclic[out.component[v]] = true;
    if (inside >= 2) out.perfect[out.component[v]] = true;
  }
  return out;
}

std::vector<bool> reachable(const PathGraph& g, int source) {
  std::vector<bool> seen(g.size(), false);
  if (source < 0) return seen;
  std::vector<int> todo{source};
  seen[source] = true;
  while (!todo.empty()) {
    const int v = todo.back();
    todo.pop_back();
    for (int w : g.succ[v]) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<Count> path_counts(const PathGraph& g, int source, const SccDecomposition& scc) {
  std::vector<Count> counts(g.size(), Count{0});
  if (source < 0) return counts;
  const auto reach = reachable(g, source);

  // Infinite exactly on states reachable from a reachable cycle.
  std::vector<bool> infinite(g.size(), false);
  std::vector<int> todo;
  for (int v = 0; v < g.size(); ++v) {
    if (reach[v] && scc.cyclic[scc.component[v]]) {
      infinite[v] = true;
      todo.push_back(v);
    }
  }
  while (!todo.empty()) {
    const int v = todo.back();
    todo.pop_back();
    for (int w : g.succ[v]) {
      if (!infinite[w]) {
        infinite[w] = true;
        todo.push_back(w);
      }
    }
  }

  counts[source] = 1;
  // Sources have the largest component ids.
  for (int c = scc.count() - 1; c >= 0; --c) {
    for (int v : scc.members[c]) {
      if (!reach[v] || infinite[v]) continue;
      for (int w : g.succ[v]) {
        if (!infinite[w]) counts[w] = count_add(counts[w], counts[v]);
      }
    }
  }
  for (int v = 0; v < g.size(); ++v) {
    if (infinite[v]) counts[v] = std::nullopt;
  }
  return counts;
}

PathGraph restrict_to(const PathGraph& g, const std::vector<bool>& keep) {
  PathGraph out;
  out.succ.resize(g.succ.size());
  for (int v = 0; v < g.size(); ++v) {
    if (!keep[v]) continue;
    for (int w : g.succ[v]) {
      if (keep[w]) out.succ[v].push_back(w);
    }
  }
  out.root = (g.root >= 0 && keep[g.root]) ? g.root : -1;
  return out;
}

std::vector<bool> can_reach(const PathGraph& g, const std::vector<bool>& marked) {
  std::vector<std::vector<int>> pred(g.size());
  for (int v = 0; v < g.size(); ++v) {
    for (int w : g.succ[v]) pred[w].push_back(v);
  }
  std::vector<bool> out(marked);
  std::vector<int> todo;
  for (int v = 0; v < g.size(); ++v) {
    if (out[v]) todo.push_back(v);
  }
  while (!todo.empty()) {
    const int v = todo.back();
    todo.pop_back();
    for (int u : pred[v]) {
      if (!out[u]) {
        out[u] = true;
        todo.push_back(u);
      }
    }
  }
  return out;
}

std::string Cardinality::to_string() const {
  switch (cls) {
    case Class::Finite:
      return "finite(" + std::to_string(count) + ")";
    case Class::CountablyInfinite:
      return "countably-infinite";
    case Class::Uncountable:
      return "uncountable";
  }
  return {};
}

std::string CBReport::rank_to_string() const {
  return (rank_exceeds_cutoff ? ">=" : "") + std::to_string(rank);
}

bool same_invariants(const CBReport& a, const CBReport& b) {
  if (!(a.cardinality == b.cardinality) || a.perfect_kernel != b.perfect_kernel) return false;
  if (a.rank_exceeds_cutoff && b.rank_exceeds_cutoff) return true;
  return a.rank_exceeds_cutoff == b.rank_exceeds_cutoff && a.rank == b.rank &&
         a.degree == b.degree;
}

Count entries(const PathGraph& g, const SccDecomposition& scc, const std::vector<Count>& counts,
              int c) {
  Count total = 0;
  if (g.root >= 0 && scc.component[g.root] == c) total = 1;
  for (int u = 0; u < g.size(); ++u) {
    if (scc.component[u] == c) continue;
    for (int w : g.succ[u]) {
      if (scc.component[w] == c) total = count_add(total, counts[u]);
    }
  }
  return total;
}

Cardinality cardinality(const PathGraph& g) {
  if (g.empty()) return Cardinality::finite(0);
  const auto scc = strongly_connected(g);
  const auto reach = reachable(g, g.root);
  const auto counts = path_counts(g, g.root, scc);

  bool infinite_branching = false;
  for (int v = 0; v < g.size(); ++v) {
    if (!reach[v]) continue;
    if (scc.perfect[scc.component[v]]) return {Cardinality::Class::Uncountable, 0};
    if (g.succ[v].size() >= 2 && !counts[v]) infinite_branching = true;
  }
  if (infinite_branching) return {Cardinality::Class::CountablyInfinite, 0};

  // No branching past a cycle: every cycle is a sink and each entry is one end.
  Count total = 0;
  for (int c = 0; c < scc.count(); ++c) {
    if (!scc.cyclic[c] || !reach[scc.members[c].front()]) continue;
    total = count_add(total, entries(g, scc, counts, c));
  }
  if (!total) return {Cardinality::Class::CountablyInfinite, 0};
  return Cardinality::finite(*total);
}

CBReport cb_report(const PathGraph& g, std::uint64_t rank_cutoff) {
  CBReport report;
  report.cardinality = cardinality(g);
  if (g.empty()) return report;

  const auto scc = strongly_connected(g);
  const auto reach = reachable(g, g.root);
  const auto counts = path_counts(g, g.root, scc);
  const int k = scc.count();

  std::vector<bool> kernel(k, false);
  std::vector<std::uint64_t> rank(k, 0), below(k, 0);
  for (int c = 0; c < k; ++c) {
    kernel[c] = scc.perfect[c];
    for (int v : scc.members[c]) {
      for (int w : g.succ[v]) {
        const int d = scc.component[w];
        if (d == c) continue;
        kernel[c] = kernel[c] || kernel[d];
        below[c] = std::max({below[c], rank[d], below[d]});
      }
    }
    // An eventually periodic path in a scattered cycle sits one level above
    // everything reachable from its exits.
    if (scc.cyclic[c] && !kernel[c]) rank[c] = 1 + below[c];
  }

  for (int c = 0; c < k; ++c) {
    if (!reach[scc.members[c].front()]) continue;
    report.perfect_kernel = report.perfect_kernel || scc.perfect[c];
    report.rank = std::max(report.rank, rank[c]);
  }
  Count degree = 0;
  if (report.rank > 0) {
    for (int c = 0; c < k; ++c) {
      if (reach[scc.members[c].front()] && rank[c] == report.rank) {
        degree = count_add(degree, entries(g, scc, counts, c));
      }
    }
  }
  report.degree = degree;
  if (report.rank > rank_cutoff) {
    report.rank = rank_cutoff;
    report.rank_exceeds_cutoff = true;
    report.degree = 0;
  }
  return report;
}

}  // namespace endkit
