#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "endkit/ends.hpp"
#include "endkit/surface.hpp"

namespace endkit {

enum class Mode { Lenient, Strict };

struct Piece {
  enum class Kind { Pants, PuncturedDisk, OneHoledTorus };
  int id = 0;
  Kind kind = Kind::Pants;
  std::vector<int> circles;  // boundary slots: 3, 1 or 1 circle ids
};

std::string to_string(Piece::Kind k);
int euler_characteristic(Piece::Kind k);

/// Dual-graph window: the first pieces of the decomposition, and every
/// circle touching them. `sides` holds the two pieces a circle separates;
/// -1 stands for a piece not yet emitted.
struct DecompositionWindow {
  Mode mode = Mode::Strict;
  std::vector<Piece> pieces;
  std::vector<std::pair<int, int>> sides;  // indexed by circle id
  bool complete = false;                   // no pieces beyond the window

  std::size_t count(Piece::Kind k) const;
};

/// Lazy breadth-first decomposition of a presented surface into pants and
/// punctured disks (plus one one-holed torus in lenient mode, only for the
/// once-punctured torus). Throws Error(decompose, PlaneExcluded) and, in
/// strict mode, Error(decompose, PuncturedTorusExcludedInStrict).
class Decomposer {
 public:
  /// A subtree of the unfolding still to be cut, hanging off `circle`.
  struct Task {
    int state;
    int circle;
  };

  Decomposer(const SurfacePresentation& p, Mode mode);

  std::optional<Piece> next();

  const SurfacePresentation& presentation() const noexcept { return reg_; }
  const std::deque<Piece>& buffered() const noexcept { return ready_; }
  const std::deque<Task>& pending() const noexcept { return tasks_; }
  int circle_count() const noexcept { return circles_; }

  /// 2*handles + pants below `state` in the unfolding (nullopt: infinite).
  Count weight(int state) const { return weight_.at(static_cast<std::size_t>(state)); }

 private:
  int walk(int state) const;
  int circle() { return circles_++; }
  void emit(Piece::Kind kind, std::vector<int> circles);
  void expand(Task t);

  SurfacePresentation reg_;
  std::vector<bool> impure_;  // some non-annulus block lies ahead
  std::vector<Count> weight_;
  std::deque<Piece> ready_;
  std::deque<Task> tasks_;
  int circles_ = 0;
  int pieces_ = 0;
};

/// Window of the first `depth` pieces.
DecompositionWindow decompose(const SurfacePresentation& p, Mode mode, std::size_t depth);

std::string to_dot(const DecompositionWindow& w);

/// Moves the listed unfolding nodes right after the initial disk, in order.
/// Nodes are child-index paths: "r", "r.0", "r.1.0", ... Throws
/// Error(decompose, OccurrenceInsideCycle) for a node whose rule repeats
/// infinitely often (unroll first) and Error(decompose, InvalidOccurrence)
/// for a malformed or duplicate path.
SurfacePresentation interchange_normalize(const SurfacePresentation& p,
                                          const std::vector<std::string>& front);

/// Unrolls as needed and pulls the breadth-first first blocks of the given
/// kinds to the front. Throws Error(decompose, NotEnoughBlocks).
SurfacePresentation pull_to_front(const SurfacePresentation& p, const std::vector<BlockKind>& kinds);

struct SpineGraph {
  /// Rule graph with Pants and Handle states marked: the marked ends are
  /// the ends of the core X_g.
  EndsAutomaton automaton;
  Count rank;               // 2*handles + pants
  std::vector<bool> core;   // states of X_g
};

SpineGraph spine(const SurfacePresentation& p);
Tristate graph_phe_equal(const SpineGraph& a, const SpineGraph& b, std::uint64_t rank_cutoff = 16);
std::string to_dot(const SpineGraph& g);

struct ComplementComponent {
  std::vector<int> pieces;  // emitted pieces in the component
  std::size_t frontier = 0; // pieces and subtrees beyond the window
  Count rank;               // free rank of pi_1, 1 - chi
};

struct EssentialPants {
  SurfacePresentation normalized;
  DecompositionWindow window;
  int piece = -1;
  std::vector<ComplementComponent> components;
};

/// Components of the decomposition with piece `removed` deleted, counting
/// the frontier of `d` as well as the emitted pieces.
std::vector<ComplementComponent> complement_census(const std::vector<Piece>& emitted,
                                                   const Decomposer& d, int removed);

/// Throws Error(decompose, ComplexityTooLow) for finite-type surfaces with
/// g + p < 4 and p < 6.
EssentialPants find_essential_pants(const SurfacePresentation& p);

}  // namespace endkit
