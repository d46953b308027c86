#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace endkit {

/// Construction blocks glued after the implicit initial disk. Each block has
/// one input boundary and `arity()` output boundaries.
enum class BlockKind { Annulus, Pants, Handle };

int arity(BlockKind kind) noexcept;
char block_letter(BlockKind kind) noexcept;

/// Element of N u {inf}. Infinity absorbs addition.
class Genus {
 public:
  constexpr Genus() = default;
  constexpr explicit Genus(std::uint64_t value) : value_(value) {}
  static constexpr Genus infinite() {
    Genus g;
    g.value_.reset();
    return g;
  }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  constexpr bool is_finite() const noexcept { return value_.has_value(); }
  /// Only meaningful when finite.
  constexpr std::uint64_t value() const { return *value_; }

  friend Genus operator+(Genus a, Genus b);
  friend constexpr bool operator==(const Genus&, const Genus&) = default;
  friend std::strong_ordering operator<=>(const Genus& a, const Genus& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const;

 private:
  std::optional<std::uint64_t> value_{std::uint64_t{0}};
};

struct Rule {
  std::string name;
  BlockKind kind;
  std::vector<int> children;  // rule indices, size == arity(kind)
};

/// S_{g,b,p}: genus, boundary circles, punctures.
struct FiniteType {
  std::uint64_t g = 0;
  std::uint64_t b = 0;
  std::uint64_t p = 0;
  friend bool operator==(const FiniteType&, const FiniteType&) = default;
};

/// Unresolved rule as it appears in text, used to build presentations.
struct RuleSpec {
  std::string name;
  BlockKind kind;
  std::vector<std::string> children;
};

/// A finitely presented non-compact orientable surface: either a regular
/// rule system whose tree unfolding is an inductive construction starting
/// from a disk, or a finite-type triple.
class SurfacePresentation {
 public:
  /// Validates arity, names and reachability. Throws Error on failure.
  static SurfacePresentation from_specs(std::string name, const std::vector<RuleSpec>& specs,
                                        std::string_view root_name);
  static SurfacePresentation finite(std::string name, FiniteType type);

  bool is_regular() const noexcept { return !finite_.has_value(); }
  const std::string& name() const noexcept { return name_; }

  std::span<const Rule> rules() const noexcept { return rules_; }
  const Rule& rule(int index) const { return rules_.at(static_cast<std::size_t>(index)); }
  int root() const noexcept { return root_; }
  int size() const noexcept { return static_cast<int>(rules_.size()); }
  std::optional<int> find(std::string_view rule_name) const;

  /// Only valid when !is_regular().
  const FiniteType& finite_type() const { return *finite_; }

  /// Regular presentation used by every structural analysis. Finite-type
  /// inputs are expanded into their standard rule system.
  const SurfacePresentation& regular() const;

  std::vector<RuleSpec> specs() const;

 private:
  std::string name_;
  std::vector<Rule> rules_;
  int root_ = 0;
  std::optional<FiniteType> finite_;
  std::vector<SurfacePresentation> expanded_;  // holds the regular form of a finite-type input
};

/// Parses the `.surf` grammar:
///   surface <name> { <id> = A|P|H(<id>[, <id>]) ; ... }
///   surface <name> finite S(g=<nat>, b=<nat>, p=<nat>)
/// The rule named `root` is the root if present, otherwise the first rule.
SurfacePresentation parse_presentation(std::string_view text);

/// Canonical text. Root rule first, remaining rules in breadth-first order.
std::string to_text(const SurfacePresentation& p);

/// Standard rule system for the interior of S_{g,0,ends}: (ends-1) pants in a
/// chain, then g handles, then puncture tails sharing one Annulus loop.
SurfacePresentation standard_presentation(std::uint64_t g, std::uint64_t ends,
                                          std::string name = "standard");

Genus genus(const SurfacePresentation& p);
bool is_finite_type(const SurfacePresentation& p);

/// S_{g,0,p} normal form of a finite-type surface.
FiniteType canonical_finite_type(const SurfacePresentation& p);

/// Inserts a fresh Annulus rule on the edge `parent -> children[child_slot]`.
SurfacePresentation splice_annulus(const SurfacePresentation& p, int parent, int child_slot);

/// Same unfolding tree, with every node of depth < `levels` given its own
/// rule. Nodes are named after their child-index path.
SurfacePresentation unroll(const SurfacePresentation& p, int levels);

/// Keeps the rules reachable from `root`, in their original order.
std::vector<RuleSpec> prune_specs(const std::vector<RuleSpec>& specs, const std::string& root);

/// Number of nodes of each state in the unfolding (nullopt = infinitely many).
std::vector<std::optional<std::uint64_t>> occurrence_counts(const SurfacePresentation& p);

}  // namespace endkit
