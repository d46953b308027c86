#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endkit/end_expr.hpp"
#include "endkit/path_graph.hpp"
#include "endkit/surface.hpp"

namespace endkit {

/// The ends of a presented surface as the infinite root paths of its rule
/// graph. An end is marked (non-planar for surfaces) when every tail of it
/// still reaches a marked state, i.e. every neighbourhood carries genus.
struct EndsAutomaton {
  std::vector<std::string> states;
  std::vector<BlockKind> kinds;
  PathGraph graph;
  std::vector<bool> marked;  // Handle states for a surface

  int root() const noexcept { return graph.root; }

  /// Path space of the marked ends (a closed subspace).
  PathGraph marked_part() const;
};

EndsAutomaton ends_automaton(const SurfacePresentation& p);

Cardinality ends_count(const SurfacePresentation& p);

enum class Marked { All, NonplanarOnly };

CBReport cb_report(const EndsAutomaton& e, Marked which, std::uint64_t rank_cutoff = 16);

/// Throws Error(ends, NotConvertible) outside the convertible fragment:
/// branching cycles whose exits are not Cantor sets of the same marking.
EndExpr to_end_expr(const EndsAutomaton& e);

enum class Tristate { Yes, No, Unknown };
std::string to_string(Tristate t);

struct PairVerdict {
  Tristate verdict = Tristate::Unknown;
  /// For No: the invariant that differed (e.g. "ends.cardinality").
  /// For Yes/Unknown: the fragment that decided or failed to decide.
  std::string reason;
};

/// Sound three-valued decision of (Ends, marked) homeomorphism.
PairVerdict pair_homeomorphic(const EndsAutomaton& a, const EndsAutomaton& b,
                              std::uint64_t rank_cutoff = 16);

/// A state of the regular presentation whose future is a single loop of
/// annuli, i.e. a tail neighbourhood of an isolated planar end.
std::optional<int> find_isolated_planar_end(const SurfacePresentation& p);

}  // namespace endkit
