#include "endkit/decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "endkit/error.hpp"

namespace endkit {

namespace {

PathGraph rule_graph(const SurfacePresentation& reg) {
  PathGraph g;
  g.root = reg.root();
  for (const auto& r : reg.rules()) g.succ.push_back(r.children);
  return g;
}

std::vector<bool> non_annulus(const SurfacePresentation& reg) {
  std::vector<bool> out(reg.size());
  for (int i = 0; i < reg.size(); ++i) out[i] = reg.rule(i).kind != BlockKind::Annulus;
  return out;
}

// 2*handles + pants in the unfolding below each state.
std::vector<Count> subtree_weights(const SurfacePresentation& reg) {
  const auto g = rule_graph(reg);
  const auto scc = strongly_connected(g);
  const auto heavy = can_reach(g, non_annulus(reg));
  std::vector<Count> w(reg.size(), Count{0});
  // Component ids are sinks first, so successors are done before we get here.
  for (int c = 0; c < scc.count(); ++c) {
    for (int v : scc.members[c]) {
      if (scc.cyclic[c] && heavy[v]) {
        w[v] = std::nullopt;
        continue;
      }
      const auto kind = reg.rule(v).kind;
      Count total = kind == BlockKind::Handle ? 2 : kind == BlockKind::Pants ? 1 : 0;
      for (int child : g.succ[v]) total = count_add(total, w[child]);
      w[v] = total;
    }
  }
  return w;
}

}  // namespace

std::string to_string(Piece::Kind k) {
  switch (k) {
    case Piece::Kind::Pants:
      return "Pants";
    case Piece::Kind::PuncturedDisk:
      return "PuncturedDisk";
    case Piece::Kind::OneHoledTorus:
      return "OneHoledTorus";
  }
  return {};
}

int euler_characteristic(Piece::Kind k) { return k == Piece::Kind::PuncturedDisk ? 0 : -1; }

std::size_t DecompositionWindow::count(Piece::Kind k) const {
  return static_cast<std::size_t>(
      std::count_if(pieces.begin(), pieces.end(), [k](const Piece& p) { return p.kind == k; }));
}

Decomposer::Decomposer(const SurfacePresentation& p, Mode mode) : reg_(p.regular()) {
  const auto g = rule_graph(reg_);
  impure_ = can_reach(g, non_annulus(reg_));
  weight_ = subtree_weights(reg_);

  const int first = walk(reg_.root());
  if (!impure_[first]) throw Error("decompose", "PlaneExcluded", "the surface is the plane");
  const auto& r1 = reg_.rule(first);
  if (r1.kind == BlockKind::Pants) {
    // Disk plus pants is an annulus: a single circle between the two subtrees.
    const int c = circle();
    tasks_.push_back({r1.children[0], c});
    tasks_.push_back({r1.children[1], c});
    return;
  }
  const int second = walk(r1.children[0]);
  if (!impure_[second]) {
    if (mode == Mode::Strict) {
      throw Error("decompose", "PuncturedTorusExcludedInStrict",
                  "the once-punctured torus has no decomposition into pants and punctured disks");
    }
    const int c = circle();
    emit(Piece::Kind::OneHoledTorus, {c});
    emit(Piece::Kind::PuncturedDisk, {c});
    return;
  }
  // Disk plus the first handle is a one-holed torus; cut it together with
  // the next block so that no pants is glued to itself.
  const auto& r2 = reg_.rule(second);
  const int x = circle(), y = circle(), z = circle(), w = circle();
  emit(Piece::Kind::Pants, {x, y, z});
  emit(Piece::Kind::Pants, {x, y, w});
  if (r2.kind == BlockKind::Pants) {
    tasks_.push_back({r2.children[0], z});
    tasks_.push_back({r2.children[1], w});
  } else {
    const int out = circle();
    emit(Piece::Kind::Pants, {z, w, out});
    tasks_.push_back({r2.children[0], out});
  }
}

int Decomposer::walk(int state) const {
  while (reg_.rule(state).kind == BlockKind::Annulus && impure_[state]) {
    state = reg_.rule(state).children[0];
  }
  return state;
}

void Decomposer::emit(Piece::Kind kind, std::vector<int> circles) {
  ready_.push_back({pieces_++, kind, std::move(circles)});
}

void Decomposer::expand(Task t) {
  const int s = walk(t.state);
  if (!impure_[s]) {
    emit(Piece::Kind::PuncturedDisk, {t.circle});
    return;
  }
  const auto& r = reg_.rule(s);
  if (r.kind == BlockKind::Pants) {
    const int a = circle(), b = circle();
    emit(Piece::Kind::Pants, {t.circle, a, b});
    tasks_.push_back({r.children[0], a});
    tasks_.push_back({r.children[1], b});
  } else {
    const int alpha = circle(), beta = circle(), out = circle();
    emit(Piece::Kind::Pants, {t.circle, alpha, beta});
    emit(Piece::Kind::Pants, {alpha, beta, out});
    tasks_.push_back({r.children[0], out});
  }
}

std::optional<Piece> Decomposer::next() {
  while (ready_.empty() && !tasks_.empty()) {
    const auto t = tasks_.front();
    tasks_.pop_front();
    expand(t);
  }
  if (ready_.empty()) return std::nullopt;
  auto p = std::move(ready_.front());
  ready_.pop_front();
  return p;
}

DecompositionWindow decompose(const SurfacePresentation& p, Mode mode, std::size_t depth) {
  Decomposer d(p, mode);
  DecompositionWindow w;
  w.mode = mode;
  while (w.pieces.size() < depth) {
    auto piece = d.next();
    if (!piece) break;
    w.pieces.push_back(std::move(*piece));
  }
  w.complete = d.buffered().empty() && d.pending().empty();
  int top = -1;
  for (const auto& piece : w.pieces) {
    for (int c : piece.circles) top = std::max(top, c);
  }
  w.sides.assign(static_cast<std::size_t>(top + 1), {-1, -1});
  for (const auto& piece : w.pieces) {
    for (int c : piece.circles) {
      auto& s = w.sides[c];
      (s.first < 0 ? s.first : s.second) = piece.id;
    }
  }
  return w;
}

std::string to_dot(const DecompositionWindow& w) {
  std::ostringstream out;
  out << "graph decomposition {\n";
  for (const auto& p : w.pieces) {
    out << "  p" << p.id << " [label=\"" << to_string(p.kind) << " " << p.id << "\"];\n";
  }
  bool beyond = false;
  for (std::size_t c = 0; c < w.sides.size(); ++c) {
    const auto [a, b] = w.sides[c];
    if (a < 0) continue;
    if (b < 0) {
      beyond = true;
      out << "  p" << a << " -- beyond [label=\"c" << c << "\", style=dashed];\n";
    } else {
      out << "  p" << a << " -- p" << b << " [label=\"c" << c << "\"];\n";
    }
  }
  if (beyond) out << "  beyond [shape=point];\n";
  out << "}\n";
  return out.str();
}

namespace {

std::vector<int> parse_occurrence(const std::string& text) {
  std::vector<int> path;
  if (text.empty() || text[0] != 'r') {
    throw Error("decompose", "InvalidOccurrence", "occurrence must start at 'r': '" + text + "'");
  }
  std::size_t pos = 1;
  while (pos < text.size()) {
    if (text[pos] != '.' || pos + 1 >= text.size()) {
      throw Error("decompose", "InvalidOccurrence", "malformed occurrence '" + text + "'");
    }
    ++pos;
    const auto start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw Error("decompose", "InvalidOccurrence", "malformed occurrence '" + text + "'");
    path.push_back(std::stoi(text.substr(start, pos - start)));
  }
  return path;
}

std::string occurrence_text(const std::vector<int>& path) {
  std::string out = "r";
  for (int k : path) out += "." + std::to_string(k);
  return out;
}

}  // namespace

SurfacePresentation interchange_normalize(const SurfacePresentation& p,
                                          const std::vector<std::string>& front) {
  if (front.empty()) return p;
  const auto& reg = p.regular();
  const auto occurrences = occurrence_counts(reg);

  std::vector<std::vector<int>> listed;
  std::set<std::vector<int>> prefix;
  for (const auto& text : front) {
    auto path = parse_occurrence(text);
    int s = reg.root();
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto& r = reg.rule(s);
      if (path[i] < 0 || path[i] >= arity(r.kind)) {
        throw Error("decompose", "InvalidOccurrence", "no child " + std::to_string(path[i]) + " in '" + text + "'");
      }
      s = r.children[path[i]];
    }
    if (!occurrences[s]) {
      throw Error("decompose", "OccurrenceInsideCycle",
                  "'" + text + "' is an instance of the repeating rule '" + reg.rule(s).name + "'");
    }
    if (std::find(listed.begin(), listed.end(), path) != listed.end()) {
      throw Error("decompose", "InvalidOccurrence", "'" + text + "' listed twice");
    }
    for (std::size_t k = 0; k <= path.size(); ++k) prefix.insert({path.begin(), path.begin() + k});
    listed.push_back(std::move(path));
  }

  // Preorder over the prefix tree: unlisted blocks in order, and the
  // subtrees hanging off it.
  struct Node {
    std::vector<int> path;
    int state;
  };
  std::vector<Node> others;
  std::vector<int> frontier;
  std::vector<std::pair<std::vector<int>, int>> stack{{{}, reg.root()}};
  while (!stack.empty()) {
    auto [path, s] = stack.back();
    stack.pop_back();
    if (!prefix.count(path)) {
      frontier.push_back(s);
      continue;
    }
    others.push_back({path, s});
    const auto& kids = reg.rule(s).children;
    for (int k = static_cast<int>(kids.size()) - 1; k >= 0; --k) {
      auto child = path;
      child.push_back(k);
      stack.push_back({std::move(child), kids[k]});
    }
  }

  std::vector<BlockKind> blocks;
  for (const auto& path : listed) {
    const auto it = std::find_if(others.begin(), others.end(), [&](const Node& n) { return n.path == path; });
    blocks.push_back(reg.rule(it->state).kind);
  }
  for (const auto& n : others) {
    const bool is_listed = std::find(listed.begin(), listed.end(), n.path) != listed.end();
    const auto kind = reg.rule(n.state).kind;
    if (!is_listed && kind != BlockKind::Annulus) blocks.push_back(kind);
  }

  std::set<std::string> taken;
  for (const auto& r : reg.rules()) taken.insert(r.name);
  std::vector<RuleSpec> specs;
  int counter = 0;
  for (auto kind : blocks) {
    std::string name;
    do {
      name = "front" + std::to_string(counter++);
    } while (taken.count(name));
    specs.push_back({name, kind, std::vector<std::string>(arity(kind))});
  }
  // Each block goes on the oldest open boundary.
  std::deque<std::pair<int, int>> open;
  for (std::size_t b = 0; b < specs.size(); ++b) {
    if (b > 0) {
      const auto [owner, slot] = open.front();
      open.pop_front();
      specs[owner].children[slot] = specs[b].name;
    }
    for (int k = 0; k < arity(specs[b].kind); ++k) open.push_back({static_cast<int>(b), k});
  }
  for (int state : frontier) {
    const auto [owner, slot] = open.front();
    open.pop_front();
    specs[owner].children[slot] = reg.rule(state).name;
  }
  const auto root = specs.front().name;
  auto original = reg.specs();
  specs.insert(specs.end(), original.begin(), original.end());
  return SurfacePresentation::from_specs(reg.name(), prune_specs(specs, root), root);
}

SurfacePresentation pull_to_front(const SurfacePresentation& p, const std::vector<BlockKind>& kinds) {
  const auto& reg = p.regular();
  if (kinds.empty()) return reg;
  const auto occurrences = occurrence_counts(reg);
  std::map<BlockKind, std::size_t> want;
  for (auto k : kinds) ++want[k];
  for (const auto& [kind, n] : want) {
    Count have = 0;
    for (int i = 0; i < reg.size(); ++i) {
      if (reg.rule(i).kind == kind) have = count_add(have, occurrences[i]);
    }
    if (have && *have < n) {
      throw Error("decompose", "NotEnoughBlocks",
                  "asked for " + std::to_string(n) + " " + std::string(1, block_letter(kind)) +
                      " blocks, the surface has " + std::to_string(*have));
    }
  }

  std::map<BlockKind, std::vector<std::vector<int>>> found;
  std::deque<std::pair<std::vector<int>, int>> todo{{{}, reg.root()}};
  std::size_t missing = kinds.size();
  std::size_t longest = 0;
  while (missing > 0) {
    auto [path, s] = todo.front();
    todo.pop_front();
    const auto kind = reg.rule(s).kind;
    auto& bucket = found[kind];
    if (bucket.size() < want[kind]) {
      bucket.push_back(path);
      longest = std::max(longest, path.size());
      --missing;
    }
    const auto& kids = reg.rule(s).children;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      auto child = path;
      child.push_back(static_cast<int>(k));
      todo.push_back({std::move(child), kids[k]});
    }
  }

  std::vector<std::string> front;
  std::map<BlockKind, std::size_t> used;
  for (auto k : kinds) front.push_back(occurrence_text(found[k][used[k]++]));
  return interchange_normalize(unroll(reg, static_cast<int>(longest) + 1), front);
}

SpineGraph spine(const SurfacePresentation& p) {
  const auto& reg = p.regular();
  SpineGraph g;
  g.automaton = ends_automaton(reg);
  g.automaton.marked = non_annulus(reg);
  g.rank = subtree_weights(reg)[reg.root()];
  g.core = can_reach(g.automaton.graph, g.automaton.marked);
  return g;
}

Tristate graph_phe_equal(const SpineGraph& a, const SpineGraph& b, std::uint64_t rank_cutoff) {
  if (a.rank != b.rank) return Tristate::No;
  return pair_homeomorphic(a.automaton, b.automaton, rank_cutoff).verdict;
}

std::string to_dot(const SpineGraph& g) {
  const auto& e = g.automaton;
  std::ostringstream out;
  out << "digraph spine {\n";
  for (int i = 0; i < e.graph.size(); ++i) {
    out << "  \"" << e.states[i] << "\" [label=\"" << e.states[i] << " " << block_letter(e.kinds[i])
        << "\"" << (g.core[i] ? ", style=bold" : "") << (i == e.root() ? ", shape=doublecircle" : "")
        << "];\n";
  }
  for (int i = 0; i < e.graph.size(); ++i) {
    for (int w : e.graph.succ[i]) out << "  \"" << e.states[i] << "\" -> \"" << e.states[w] << "\";\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<ComplementComponent> complement_census(const std::vector<Piece>& emitted,
                                                   const Decomposer& d, int removed) {
  struct Item {
    int piece;  // -1 for frontier
    Count weight;
    std::vector<int> circles;
  };
  std::vector<Item> items;
  for (const auto& p : emitted) {
    if (p.id != removed) items.push_back({p.id, Count(-euler_characteristic(p.kind)), p.circles});
  }
  for (const auto& p : d.buffered()) items.push_back({-1, Count(-euler_characteristic(p.kind)), p.circles});
  for (const auto& t : d.pending()) items.push_back({-1, d.weight(t.state), {t.circle}});

  std::vector<int> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<int, int> first_on_circle;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (int c : items[i].circles) {
      auto [it, fresh] = first_on_circle.emplace(c, static_cast<int>(i));
      if (!fresh) parent[find(static_cast<int>(i))] = find(it->second);
    }
  }
  std::map<int, ComplementComponent> by_root;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& comp = by_root[find(static_cast<int>(i))];
    if (items[i].piece >= 0) {
      comp.pieces.push_back(items[i].piece);
    } else {
      ++comp.frontier;
    }
  }
  // rank = 1 - chi, and -chi adds up over the items of a component.
  for (auto& [root, comp] : by_root) comp.rank = 1;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& comp = by_root[find(static_cast<int>(i))];
    comp.rank = count_add(comp.rank, items[i].weight);
  }
  std::vector<ComplementComponent> out;
  for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
  return out;
}

EssentialPants find_essential_pants(const SurfacePresentation& p) {
  const auto g = genus(p);
  std::optional<FiniteType> ft;
  if (is_finite_type(p)) {
    ft = canonical_finite_type(p);
    if (ft->g + ft->p < 4 && ft->p < 6) {
      throw Error("decompose", "ComplexityTooLow",
                  "g+p=" + std::to_string(ft->g + ft->p) + "<4 and p=" + std::to_string(ft->p) + "<6");
    }
  }
  std::vector<BlockKind> kinds;
  if (g >= Genus(2)) {
    kinds = {BlockKind::Handle, BlockKind::Handle};
  } else if (!ft || ft->p >= 6) {
    kinds.assign(5, BlockKind::Pants);
  } else if (g == Genus(1)) {
    kinds = {BlockKind::Pants, BlockKind::Pants, BlockKind::Handle};
  } else {
    // Planar with four or five punctures: chi leaves too little for two
    // non-abelian complementary pieces.
    throw Error("decompose", "NoEssentialPants",
                "S(0,0," + std::to_string(ft->p) + ") has no essential pair of pants");
  }

  EssentialPants result{pull_to_front(p, kinds), {}, -1, {}};
  constexpr std::size_t window = 32;
  Decomposer d(result.normalized, Mode::Strict);
  std::vector<Piece> emitted;
  while (emitted.size() < window) {
    auto piece = d.next();
    if (!piece) break;
    emitted.push_back(std::move(*piece));
  }
  for (const auto& piece : emitted) {
    if (piece.kind != Piece::Kind::Pants) continue;
    auto comps = complement_census(emitted, d, piece.id);
    const bool ok = comps.size() >= 2 && std::all_of(comps.begin(), comps.end(), [](const auto& c) {
                      return !c.rank || *c.rank >= 2;
                    });
    if (ok) {
      result.piece = piece.id;
      result.components = std::move(comps);
      break;
    }
  }
  if (result.piece < 0) {
    throw Error("decompose", "NoEssentialPants", "no pants in the window passes the census");
  }
  result.window = decompose(result.normalized, Mode::Strict, window);
  return result;
}

}  // namespace endkit
