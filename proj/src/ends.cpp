#include "endkit/ends.hpp"

#include <deque>
#include <functional>

#include "endkit/error.hpp"

namespace endkit {

PathGraph EndsAutomaton::marked_part() const {
  const auto scc = strongly_connected(graph);
  const auto reaches_mark = can_reach(graph, marked);
  std::vector<bool> good_cycle(graph.size(), false);
  for (int v = 0; v < graph.size(); ++v) {
    good_cycle[v] = scc.cyclic[scc.component[v]] && reaches_mark[v];
  }
  return restrict_to(graph, can_reach(graph, good_cycle));
}

EndsAutomaton ends_automaton(const SurfacePresentation& p) {
  const auto& reg = p.regular();
  EndsAutomaton e;
  e.graph.root = reg.root();
  for (const auto& r : reg.rules()) {
    e.states.push_back(r.name);
    e.kinds.push_back(r.kind);
    e.graph.succ.push_back(r.children);
    e.marked.push_back(r.kind == BlockKind::Handle);
  }
  return e;
}

Cardinality ends_count(const SurfacePresentation& p) {
  if (!p.is_regular()) return Cardinality::finite(p.finite_type().b + p.finite_type().p);
  return cardinality(ends_automaton(p).graph);
}

CBReport cb_report(const EndsAutomaton& e, Marked which, std::uint64_t rank_cutoff) {
  return which == Marked::All ? cb_report(e.graph, rank_cutoff)
                              : cb_report(e.marked_part(), rank_cutoff);
}

EndExpr to_end_expr(const EndsAutomaton& e) {
  const auto& g = e.graph;
  const auto scc = strongly_connected(g);
  const auto reaches_mark = can_reach(g, e.marked);
  std::vector<std::optional<EndExpr>> memo(g.size());

  std::function<EndExpr(int)> expr = [&](int s) -> EndExpr {
    if (memo[s]) return *memo[s];
    const int c = scc.component[s];
    EndExpr out;
    if (!scc.cyclic[c]) {
      std::vector<EndExpr> parts;
      for (int w : g.succ[s]) parts.push_back(expr(w));
      out = parts.size() == 1 ? parts.front() : EndExpr::union_of(std::move(parts));
    } else if (scc.perfect[c]) {
      const bool mark = reaches_mark[s];
      const auto want = to_string(EndExpr::cantor(mark));
      for (int v : scc.members[c]) {
        for (int w : g.succ[v]) {
          if (scc.component[w] == c) continue;
          const auto exit = normalize(expr(w));
          if (to_string(exit) != want) {
            throw Error("ends", "NotConvertible",
                        "branching cycle at '" + e.states[s] + "' has exit " + to_string(exit));
          }
        }
      }
      out = EndExpr::cantor(mark);
    } else {
      std::vector<EndExpr> exits;
      int v = s;
      do {
        int next = -1;
        for (int w : g.succ[v]) {
          if (scc.component[w] == c) {
            next = w;
          } else {
            exits.push_back(expr(w));
          }
        }
        v = next;
      } while (v != s);
      const bool mark = reaches_mark[s];
      if (exits.empty()) {
        out = EndExpr::point(mark);
      } else {
        EndExpr body = exits.size() == 1 ? exits.front() : EndExpr::union_of(std::move(exits));
        out = EndExpr::seq(std::move(body), mark);
      }
    }
    memo[s] = out;
    return out;
  };
  return normalize(expr(g.root));
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::Yes:
      return "Yes";
    case Tristate::No:
      return "No";
    case Tristate::Unknown:
      return "Unknown";
  }
  return {};
}

PairVerdict pair_homeomorphic(const EndsAutomaton& a, const EndsAutomaton& b,
                              std::uint64_t rank_cutoff) {
  const auto ea = cb_report(a, Marked::All, rank_cutoff);
  const auto eb = cb_report(b, Marked::All, rank_cutoff);
  if (!(ea.cardinality == eb.cardinality)) return {Tristate::No, "ends.cardinality"};
  if (!same_invariants(ea, eb)) return {Tristate::No, "ends.cantor-bendixson"};
  const auto na = cb_report(a, Marked::NonplanarOnly, rank_cutoff);
  const auto nb = cb_report(b, Marked::NonplanarOnly, rank_cutoff);
  if (!(na.cardinality == nb.cardinality)) return {Tristate::No, "ends-nonplanar.cardinality"};
  if (!same_invariants(na, nb)) return {Tristate::No, "ends-nonplanar.cantor-bendixson"};

  // Finite discrete pairs are determined by the two counts just compared.
  if (ea.cardinality.is_finite()) return {Tristate::Yes, "finite"};

  std::optional<EndExpr> xa, xb;
  try {
    xa = to_end_expr(a);
    xb = to_end_expr(b);
  } catch (const Error& err) {
    if (err.code() != "NotConvertible") throw;
    return {Tristate::Unknown, "not-convertible"};
  }
  if (to_string(*xa) == to_string(*xb)) return {Tristate::Yes, "normal-form"};
  return {Tristate::Unknown, "normal-forms-differ"};
}

std::optional<int> find_isolated_planar_end(const SurfacePresentation& p) {
  const auto& reg = p.regular();
  PathGraph g;
  g.root = reg.root();
  for (const auto& r : reg.rules()) g.succ.push_back(r.children);
  std::vector<bool> non_annulus(reg.size(), false);
  for (int i = 0; i < reg.size(); ++i) non_annulus[i] = reg.rule(i).kind != BlockKind::Annulus;
  const auto impure = can_reach(g, non_annulus);

  std::vector<bool> seen(reg.size(), false);
  std::deque<int> todo{reg.root()};
  seen[reg.root()] = true;
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop_front();
    if (!impure[v]) return v;
    for (int w : g.succ[v]) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return std::nullopt;
}

}  // namespace endkit
