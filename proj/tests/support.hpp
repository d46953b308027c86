#pragma once

// Random generators and brute-force oracles shared by the test binaries.
// The oracles only walk the unfolding level by level; none of them uses
// the SCC machinery they are checking.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "endkit/classify.hpp"
#include "endkit/decompose.hpp"
#include "endkit/ends.hpp"
#include "endkit/rewrite.hpp"
#include "endkit/surface.hpp"

namespace testing {

using namespace endkit;

inline SurfacePresentation parse(const std::string& text) { return parse_presentation(text); }

inline SurfacePresentation loch_ness() { return parse("surface loch_ness { root = H(root) }"); }
inline SurfacePresentation cantor() { return parse("surface cantor { root = P(root, root) }"); }
inline SurfacePresentation flute() { return parse("surface flute { root = P(root, punc); punc = A(punc) }"); }
inline SurfacePresentation blooming_cantor() {
  return parse("surface blooming { root = H(split); split = P(root, root) }");
}
inline SurfacePresentation finite(std::uint64_t g, std::uint64_t b, std::uint64_t p) {
  return SurfacePresentation::finite("S", {g, b, p});
}

/// Random regular presentation with up to `max_states` rules, all reachable.
inline SurfacePresentation random_presentation(std::mt19937& rng, int max_states = 5) {
  std::uniform_int_distribution<int> size_dist(1, max_states);
  const int n = size_dist(rng);
  std::uniform_int_distribution<int> kind_dist(0, 2);
  std::uniform_int_distribution<int> state_dist(0, n - 1);
  std::vector<RuleSpec> specs;
  for (int i = 0; i < n; ++i) {
    const auto kind = static_cast<BlockKind>(kind_dist(rng));
    RuleSpec s{"s" + std::to_string(i), kind, {}};
    for (int k = 0; k < arity(kind); ++k) {
      // Lean towards the next rule so that larger systems stay connected.
      const int child = (k == 0 && i + 1 < n && rng() % 2 == 0) ? i + 1 : state_dist(rng);
      s.children.push_back("s" + std::to_string(child));
    }
    specs.push_back(std::move(s));
  }
  return SurfacePresentation::from_specs("random", prune_specs(specs, "s0"), "s0");
}

/// Number of unfolding nodes of each state on every level 0..depth-1.
/// Doubles so that exponential growth does not saturate.
inline std::vector<std::vector<double>> level_census(const SurfacePresentation& p, int depth) {
  const auto& reg = p.regular();
  std::vector<std::vector<double>> levels;
  std::vector<double> cur(reg.size(), 0.0);
  cur[reg.root()] = 1.0;
  for (int d = 0; d < depth; ++d) {
    levels.push_back(cur);
    std::vector<double> next(reg.size(), 0.0);
    for (int s = 0; s < reg.size(); ++s) {
      for (int c : reg.rule(s).children) next[c] += cur[s];
    }
    cur = std::move(next);
  }
  return levels;
}

inline int oracle_depth(const SurfacePresentation& p) { return 20 * p.regular().size() + 40; }

/// Weighted number of unfolding nodes up to `depth`, or -1 when the count
/// keeps growing between depth and 2*depth.
inline double weighted_nodes(const SurfacePresentation& p, double w_annulus, double w_pants,
                             double w_handle) {
  const auto& reg = p.regular();
  const int d = oracle_depth(p);
  const auto levels = level_census(p, 2 * d);
  double upto_d = 0.0, upto_2d = 0.0;
  for (int l = 0; l < 2 * d; ++l) {
    for (int s = 0; s < reg.size(); ++s) {
      const auto k = reg.rule(s).kind;
      const double w = k == BlockKind::Annulus ? w_annulus : k == BlockKind::Pants ? w_pants : w_handle;
      (l < d ? upto_d : upto_2d) += w * levels[l][s];
    }
  }
  return upto_2d == 0.0 ? upto_d : -1.0;
}

/// Genus by counting Handle nodes; -1 for infinite.
inline double genus_oracle(const SurfacePresentation& p) { return weighted_nodes(p, 0, 0, 1); }

/// 2*handles + pants; -1 for infinite.
inline double spine_rank_oracle(const SurfacePresentation& p) { return weighted_nodes(p, 0, 1, 2); }

enum class EndsClass { Finite, Countable, Uncountable };

struct EndsOracle {
  EndsClass cls;
  double count;  // Finite only
};

/// Level widths: constant means finitely many ends, polynomial growth
/// countably many, exponential growth a Cantor set inside.
inline EndsOracle ends_oracle(const SurfacePresentation& p) {
  const int d = oracle_depth(p);
  const auto levels = level_census(p, 2 * d + 1);
  auto width = [&](int l) {
    double w = 0;
    for (double x : levels[l]) w += x;
    return w;
  };
  const double a = width(d), b = width(2 * d);
  if (a == b) return {EndsClass::Finite, a};
  // Polynomial growth of degree k <= #states multiplies by at most 2^k.
  const double poly_bound = std::pow(2.0, p.regular().size() + 1);
  return {b / a > poly_bound ? EndsClass::Uncountable : EndsClass::Countable, 0};
}

/// Future of `state` is one Annulus loop: every level below it is a single
/// Annulus node.
inline bool single_annulus_loop_oracle(const SurfacePresentation& p, int state) {
  const auto& reg = p.regular();
  int s = state;
  for (int d = 0; d < 2 * reg.size() + 2; ++d) {
    if (reg.rule(s).kind != BlockKind::Annulus) return false;
    s = reg.rule(s).children[0];
  }
  return true;
}

/// Random expression in the compile fragment.
inline EndExpr random_expr(std::mt19937& rng, int depth = 3) {
  const int pick = static_cast<int>(rng() % (depth > 0 ? 4 : 2));
  const bool np = rng() % 2 == 0;
  switch (pick) {
    case 0:
      return EndExpr::point(np);
    case 1:
      return EndExpr::cantor(np);
    case 2: {
      std::vector<EndExpr> parts;
      const int k = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < k; ++i) parts.push_back(random_expr(rng, depth - 1));
      return EndExpr::union_of(std::move(parts));
    }
    default: {
      auto body = random_expr(rng, depth - 1);
      const bool limit = has_nonplanar(body) || np;
      return EndExpr::seq(std::move(body), limit);
    }
  }
}

/// A second compiler for expressions, written differently from realize():
/// points are two-state annulus loops, unions lean left, sequences put the
/// spine first and carry an annulus, genus handles sit after an annulus.
class ReferenceBuilder {
 public:
  SurfacePresentation build(Genus g, const EndExpr& e) {
    specs_.clear();
    next_ = 0;
    const auto top = compile(e);
    std::string root = top;
    if (g.is_finite()) {
      for (std::uint64_t i = 0; i < g.value(); ++i) {
        const auto h = name();
        const auto a = name();
        specs_.push_back({h, BlockKind::Handle, {a}});
        specs_.push_back({a, BlockKind::Annulus, {root}});
        root = h;
      }
    }
    return SurfacePresentation::from_specs("reference", specs_, root);
  }

 private:
  std::string name() { return "q" + std::to_string(next_++); }

  std::string compile(const EndExpr& e) {
    switch (e.kind) {
      case EndExpr::Kind::Point: {
        const auto a = name(), b = name();
        specs_.push_back({a, e.nonplanar ? BlockKind::Handle : BlockKind::Annulus, {b}});
        specs_.push_back({b, BlockKind::Annulus, {a}});
        return a;
      }
      case EndExpr::Kind::Cantor: {
        const auto a = name();
        if (e.nonplanar) {
          const auto b = name(), c = name();
          specs_.push_back({a, BlockKind::Pants, {b, c}});
          specs_.push_back({b, BlockKind::Handle, {a}});
          specs_.push_back({c, BlockKind::Handle, {a}});
        } else {
          const auto b = name();
          specs_.push_back({a, BlockKind::Annulus, {b}});
          specs_.push_back({b, BlockKind::Pants, {a, a}});
        }
        return a;
      }
      case EndExpr::Kind::Union: {
        std::string acc = compile(e.parts.front());
        for (std::size_t i = 1; i < e.parts.size(); ++i) {
          const auto rhs = compile(e.parts[i]);
          const auto u = name();
          specs_.push_back({u, BlockKind::Pants, {acc, rhs}});
          acc = u;
        }
        return acc;
      }
      case EndExpr::Kind::Seq: {
        const auto body = compile(e.parts.front());
        const auto s = name(), a = name();
        specs_.push_back({s, BlockKind::Pants, {a, body}});
        if (e.nonplanar) {
          const auto h = name();
          specs_.push_back({a, BlockKind::Annulus, {h}});
          specs_.push_back({h, BlockKind::Handle, {s}});
        } else {
          specs_.push_back({a, BlockKind::Annulus, {s}});
        }
        return s;
      }
    }
    return {};
  }

  std::vector<RuleSpec> specs_;
  int next_ = 0;
};

/// Random curve configuration with `n` components over up to 3 targets.
inline CurveConfig random_config(std::mt19937& rng, int n) {
  CurveConfig c;
  const int targets = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < targets; ++t) c.targets.push_back(t);
  for (int i = 0; i < n; ++i) {
    Component k;
    k.id = i;
    k.target = static_cast<int>(rng() % targets);
    if (rng() % 2 == 0) {
      k.kind = Component::Kind::Trivial;
      // Parents come earlier, so the nesting is a forest.
      std::vector<int> trivial;
      for (const auto& prev : c.components) {
        if (prev.kind == Component::Kind::Trivial) trivial.push_back(prev.id);
      }
      if (!trivial.empty() && rng() % 2 == 0) k.parent = trivial[rng() % trivial.size()];
    } else {
      k.kind = Component::Kind::Primitive;
      if (rng() % 3 == 0) {
        k.label = {true, 1};
      } else {
        k.label = {false, static_cast<int>(rng() % 7) - 3};
      }
    }
    c.components.push_back(k);
  }
  for (const auto& k : c.components) {
    if (k.kind == Component::Kind::Primitive) c.parallel[k.target].push_back(k.id);
  }
  for (auto& [t, list] : c.parallel) std::shuffle(list.begin(), list.end(), rng);
  c.pi1_bijective = rng() % 4 != 0;
  switch (rng() % 3) {
    case 0:
      c.degree = {GlobalDegree::Kind::Zero, 0};
      break;
    case 1:
      c.degree = {GlobalDegree::Kind::PlusMinusOne, 0};
      break;
    default:
      c.degree = {GlobalDegree::Kind::Other, 2 + static_cast<int>(rng() % 3)};
  }
  return c;
}

/// Collapse random adjacent parallel pairs until none is left; return the
/// surviving count per target.
inline std::vector<std::size_t> pairwise_collapse_oracle(const CurveConfig& c, std::mt19937& rng) {
  std::vector<std::vector<int>> lists;
  for (int t : c.targets) {
    auto it = c.parallel.find(t);
    lists.push_back(it == c.parallel.end() ? std::vector<int>{} : it->second);
  }
  for (;;) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < lists.size(); ++i) {
      if (lists[i].size() >= 2) open.push_back(i);
    }
    if (open.empty()) break;
    auto& l = lists[open[rng() % open.size()]];
    l.erase(l.begin() + 1 + static_cast<long>(rng() % (l.size() - 1)));
  }
  std::vector<std::size_t> out;
  for (const auto& l : lists) out.push_back(l.size());
  return out;
}

/// All node paths of the unfolding with fewer than `levels` edges, "r.0.1" style.
inline std::vector<std::string> node_paths(const SurfacePresentation& p, int levels) {
  const auto& reg = p.regular();
  std::vector<std::pair<std::string, int>> cur{{"r", reg.root()}};
  std::vector<std::string> out;
  for (int d = 0; d < levels; ++d) {
    std::vector<std::pair<std::string, int>> next;
    for (const auto& [path, s] : cur) {
      out.push_back(path);
      const auto& kids = reg.rule(s).children;
      for (std::size_t k = 0; k < kids.size(); ++k) next.push_back({path + "." + std::to_string(k), kids[k]});
    }
    cur = std::move(next);
  }
  return out;
}

}  // namespace testing
