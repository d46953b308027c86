#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "endkit/end_expr.hpp"
#include "endkit/ends.hpp"
#include "endkit/surface.hpp"

namespace endkit {

struct ClassifierVerdict {
  enum class Kind { Homeomorphic, NotHomeomorphic, Unknown };
  Kind verdict = Kind::Unknown;
  /// NotHomeomorphic: "genus" (two different finite genera) or "ends-pair"
  /// (which covers finite against infinite genus). Otherwise the fragment
  /// that decided, or failed to decide, the ends pair.
  std::string witness;
  std::string detail;  // human readable, e.g. "1 != 0"
};

std::string to_string(ClassifierVerdict::Kind k);

ClassifierVerdict kerekjarto(const SurfacePresentation& a, const SurfacePresentation& b,
                             std::uint64_t rank_cutoff = 16);

/// Compiles (genus, ends) into a rule system. Throws Error(classify,
/// InconsistentInvariants) unless the genus is infinite exactly when `e`
/// has a non-planar point, and Error(classify, NotRealizable) when `e` is
/// not a valid expression.
SurfacePresentation realize(Genus g, const EndExpr& e, std::string name = "realized");

/// n infinite-type presentations that are pairwise NotHomeomorphic.
/// Throws Error(classify, FamilyTooLarge) above `cap`.
std::vector<SurfacePresentation> distinct_family(std::size_t n, std::size_t cap = 64);

}  // namespace endkit
