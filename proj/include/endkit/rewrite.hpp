#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace endkit {

/// Restriction of the map to a primitive preimage circle: a covering of
/// some degree onto its target, or (after normalization) a homeomorphism.
struct Label {
  bool homeo = false;
  int degree = 1;  // ignored when homeo
  friend bool operator==(const Label&, const Label&) = default;
};

struct Component {
  enum class Kind { Trivial, Primitive };
  int id = 0;
  int target = 0;
  Kind kind = Kind::Trivial;
  int parent = -1;      // Trivial only: the trivial circle whose disk contains this one
  Label label;          // Primitive only
  bool coerced = false; // label forced to Homeo from a degree other than +-1
  friend bool operator==(const Component&, const Component&) = default;
};

struct GlobalDegree {
  enum class Kind { Unknown, Zero, PlusMinusOne, Other };
  Kind kind = Kind::Unknown;
  int value = 0;  // Other only
  bool nonzero() const noexcept { return kind == Kind::PlusMinusOne || kind == Kind::Other; }
  friend bool operator==(const GlobalDegree&, const GlobalDegree&) = default;
};

/// Finite window of the transversal preimage of a curve system: which
/// preimage circles lie over which target circle, how trivial circles nest
/// and in which order parallel primitive circles sit.
struct CurveConfig {
  std::vector<int> targets;
  std::vector<Component> components;         // sorted by id
  std::map<int, std::vector<int>> parallel;  // target -> primitive ids, in order
  bool pi1_bijective = true;
  GlobalDegree degree;
  friend bool operator==(const CurveConfig&, const CurveConfig&) = default;
};

/// Throws Error(curve-rewrite, InvalidConfig) when the nesting is not a
/// forest of trivial circles, ids or targets do not resolve, or the
/// parallel orders do not partition the primitive circles by target.
void validate(const CurveConfig& c);

/// Fills missing parallel orders (by id) and sorts components.
CurveConfig canonicalize(CurveConfig c);

std::size_t count_on(const CurveConfig& c, int target);

struct Measure {
  std::size_t trivial = 0;
  std::size_t excess = 0;        // sum over targets of max(0, count - 1)
  std::size_t unnormalized = 0;  // non-Homeo labels, counted when pi1_bijective
  std::size_t total() const noexcept { return trivial + excess + unnormalized; }
  friend bool operator==(const Measure&, const Measure&) = default;
};

Measure measure(const CurveConfig& c);

CurveConfig r1_disk_removal(const CurveConfig& c);
CurveConfig r2_homeo_normalize(const CurveConfig& c);
CurveConfig r3_annulus_removal(const CurveConfig& c);
CurveConfig r4_surjectivity_endgame(const CurveConfig& c);

/// One rule application. Besides the four whole rules there are the finer
/// moves they are made of: removing one outermost disk, normalizing one
/// label, collapsing one target or one adjacent parallel pair.
struct Step {
  enum class Rule { R1, R2, R3, R4 };
  enum class Scope { All, Disk, Component, Target, Pair };
  Rule rule = Rule::R1;
  Scope scope = Scope::All;
  int arg = -1;  // component id (Disk, Component, Pair: the first of the pair) or target id

  std::string to_string() const;
  friend bool operator==(const Step&, const Step&) = default;
};

Step parse_step(const std::string& text);

CurveConfig apply(const CurveConfig& c, const Step& s);

/// Steps whose preconditions hold and that change the configuration. R4 is
/// a check and never listed.
std::vector<Step> legal_steps(const CurveConfig& c);

struct TraceEntry {
  Step step;
  Measure before;
  Measure after;
};

struct RewriteResult {
  CurveConfig config;
  std::vector<TraceEntry> trace;
};

/// r1, r2, then r3 and r4 when the map is a pi_1 bijection.
std::vector<Step> default_schedule(const CurveConfig& c);

/// Applies the schedule in order; steps that change nothing are not traced.
RewriteResult run_pipeline(const CurveConfig& c, const std::vector<Step>& schedule);

/// Every final configuration reachable by maximal sequences of legal steps.
std::vector<CurveConfig> all_normal_forms(const CurveConfig& c);

}  // namespace endkit
