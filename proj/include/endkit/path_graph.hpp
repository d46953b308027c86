#pragma once

// Infinite-path spaces of finite directed multigraphs. A state's "future" is
// the set of infinite paths starting at it, with the cylinder topology. Every
// ends space in the library is one of these.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace endkit {

/// Natural number or infinity (nullopt). Arithmetic throws on overflow.
using Count = std::optional<std::uint64_t>;

Count count_add(Count a, Count b);
Count count_mul(Count a, Count b);
std::string count_to_string(Count c);

struct PathGraph {
  std::vector<std::vector<int>> succ;  // parallel edges allowed
  int root = -1;                       // -1: empty path space

  int size() const noexcept { return static_cast<int>(succ.size()); }
  bool empty() const noexcept { return root < 0; }
};

/// Component ids are in reverse topological order: every edge goes from a
/// component to one with an equal or smaller id.
struct SccDecomposition {
  std::vector<int> component;
  std::vector<std::vector<int>> members;
  std::vector<bool> cyclic;   // carries at least one cycle
  std::vector<bool> perfect;  // some member has two edges staying inside

  int count() const noexcept { return static_cast<int>(members.size()); }
};

SccDecomposition strongly_connected(const PathGraph& g);
std::vector<bool> reachable(const PathGraph& g, int source);

/// Number of paths source -> v for every v; nullopt when infinite.
/// Unreachable states get 0.
std::vector<Count> path_counts(const PathGraph& g, int source, const SccDecomposition& scc);

/// Drops every edge into a state outside `keep`; root becomes -1 if dropped.
PathGraph restrict_to(const PathGraph& g, const std::vector<bool>& keep);

/// States from which a state in `marked` is reachable (including itself).
std::vector<bool> can_reach(const PathGraph& g, const std::vector<bool>& marked);

struct Cardinality {
  enum class Class { Finite, CountablyInfinite, Uncountable };
  Class cls = Class::Finite;
  std::uint64_t count = 0;  // Finite only

  static Cardinality finite(std::uint64_t n) { return {Class::Finite, n}; }
  bool is_finite() const noexcept { return cls == Class::Finite; }
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
  std::string to_string() const;
};

/// Cantor-Bendixson summary. `rank` is the number of derivatives needed to
/// reach a fixed point (the perfect kernel, possibly empty). `degree` is the
/// number of points removed by the last derivative.
struct CBReport {
  std::uint64_t rank = 0;
  bool rank_exceeds_cutoff = false;  // rank then holds the cutoff
  Count degree = 0;
  bool perfect_kernel = false;
  Cardinality cardinality;

  std::string rank_to_string() const;
};

/// Invariant equality used to refute homeomorphism. Two reports that both
/// exceeded the cutoff are not distinguished by rank or degree.
bool same_invariants(const CBReport& a, const CBReport& b);

Cardinality cardinality(const PathGraph& g);
CBReport cb_report(const PathGraph& g, std::uint64_t rank_cutoff = 16);

/// Number of unfolding nodes from the root that enter component `c`.
Count entries(const PathGraph& g, const SccDecomposition& scc, const std::vector<Count>& counts,
              int c);

}  // namespace endkit
