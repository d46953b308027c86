#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace endkit {

/// What is known about a proper map between non-compact surfaces, as far
/// as its compactly supported degree is concerned.
struct MapDescriptor {
  std::string name;
  std::optional<bool> proper;
  std::optional<bool> surjective;
  std::optional<std::pair<int, int>> boundary_embedding;  // (b1, b2)
  bool proper_homotopy_equivalence = false;
  bool pseudo_phe = false;
  bool target_excluded = false;       // target is the plane or the punctured plane
  std::optional<bool> ends_injective; // the induced map on ends
  std::optional<int> orientation;     // +1 / -1 when a disk witness fixes it
  std::optional<std::int64_t> degree;
  std::optional<std::int64_t> degree_abs;
  /// nullopt: unconstrained.
  std::optional<std::set<std::int64_t>> allowed_degrees;

  friend bool operator==(const MapDescriptor&, const MapDescriptor&) = default;
};

struct DegreeReport {
  MapDescriptor descriptor;  // constrained; feeding it back changes nothing
  bool phe_admissible = false;
  bool pseudo_phe_admissible = false;
  std::optional<bool> pi1_surjective;  // true once |degree| = 1 is forced
  std::vector<std::string> fired;      // rules that narrowed something
};

std::int64_t deg_compose(std::int64_t d1, std::int64_t d2);

/// Fixpoint of the degree rules. Throws Error(degree, DegreeContradiction)
/// when no degree survives and Error(degree, BoundaryCountMismatch) for a
/// boundary embedding between surfaces with different boundary counts.
DegreeReport infer_degree(const MapDescriptor& m);

/// +1 for an orientation-preserving disk witness, -1 otherwise.
int degree_from_disk_witness(bool orientation_preserving);

}  // namespace endkit
