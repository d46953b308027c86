#include "endkit/classify.hpp"

#include "endkit/error.hpp"

namespace endkit {

std::string to_string(ClassifierVerdict::Kind k) {
  switch (k) {
    case ClassifierVerdict::Kind::Homeomorphic:
      return "Homeomorphic";
    case ClassifierVerdict::Kind::NotHomeomorphic:
      return "NotHomeomorphic";
    case ClassifierVerdict::Kind::Unknown:
      return "Unknown";
  }
  return {};
}

ClassifierVerdict kerekjarto(const SurfacePresentation& a, const SurfacePresentation& b,
                             std::uint64_t rank_cutoff) {
  using K = ClassifierVerdict::Kind;
  const auto ga = genus(a);
  const auto gb = genus(b);
  // Infinite genus is the same thing as a non-empty set of non-planar ends,
  // so only a mismatch of two finite values is charged to the genus.
  if (ga != gb && ga.is_finite() && gb.is_finite()) {
    return {K::NotHomeomorphic, "genus", ga.to_string() + " != " + gb.to_string()};
  }
  const auto pair = pair_homeomorphic(ends_automaton(a), ends_automaton(b), rank_cutoff);
  if (ga != gb && pair.verdict != Tristate::No) {
    throw Error("classify", "InternalError", "infinite genus without non-planar ends");
  }
  switch (pair.verdict) {
    case Tristate::No:
      return {K::NotHomeomorphic, "ends-pair", pair.reason};
    case Tristate::Yes:
      return {K::Homeomorphic, pair.reason, {}};
    case Tristate::Unknown:
      break;
  }
  return {K::Unknown, pair.reason, {}};
}

namespace {

class Compiler {
 public:
  std::vector<RuleSpec> specs;

  std::string compile(const EndExpr& e) {
    switch (e.kind) {
      case EndExpr::Kind::Point: {
        const auto t = fresh("pt");
        add(t, e.nonplanar ? BlockKind::Handle : BlockKind::Annulus, {t});
        return t;
      }
      case EndExpr::Kind::Cantor: {
        const auto c = fresh("cantor");
        if (!e.nonplanar) {
          add(c, BlockKind::Pants, {c, c});
        } else {
          const auto split = fresh("cantor");
          add(c, BlockKind::Handle, {split});
          add(split, BlockKind::Pants, {c, c});
        }
        return c;
      }
      case EndExpr::Kind::Union: {
        std::vector<std::string> heads;
        for (std::size_t i = 0; i + 1 < e.parts.size(); ++i) heads.push_back(fresh("union"));
        // Rules of the chain go in before the parts so the output reads top-down.
        const auto first = specs.size();
        for (const auto& h : heads) add(h, BlockKind::Pants, {"", ""});
        for (std::size_t i = 0; i < heads.size(); ++i) {
          specs[first + i].children[0] = compile(e.parts[i]);
          specs[first + i].children[1] =
              i + 1 < heads.size() ? heads[i + 1] : compile(e.parts.back());
        }
        return heads.empty() ? compile(e.parts.front()) : heads.front();
      }
      case EndExpr::Kind::Seq: {
        const auto s = fresh("seq");
        const bool needs_handle = e.nonplanar && !has_nonplanar(e.parts.front());
        const auto spine = needs_handle ? fresh("seq") : s;
        if (needs_handle) add(s, BlockKind::Handle, {spine});
        const auto at = specs.size();
        add(spine, BlockKind::Pants, {"", s});
        specs[at].children[0] = compile(e.parts.front());
        return s;
      }
    }
    return {};
  }

  std::string fresh(const std::string& stem) { return stem + std::to_string(next_++); }

  void add(const std::string& name, BlockKind kind, std::vector<std::string> children) {
    specs.push_back({name, kind, std::move(children)});
  }

 private:
  int next_ = 0;
};

}  // namespace

SurfacePresentation realize(Genus g, const EndExpr& e, std::string name) {
  try {
    validate(e);
  } catch (const Error& err) {
    throw Error("classify", "NotRealizable", err.what());
  }
  if (g.is_infinite() != has_nonplanar(e)) {
    throw Error("classify", "InconsistentInvariants",
                g.is_infinite() ? "infinite genus needs a non-planar end, got " + to_string(e)
                                : "genus " + g.to_string() + " leaves no room for non-planar ends in " +
                                      to_string(e));
  }
  Compiler c;
  std::vector<RuleSpec> prefix;
  const std::uint64_t handles = g.is_finite() ? g.value() : 0;
  for (std::uint64_t i = 0; i < handles; ++i) {
    prefix.push_back({"genus" + std::to_string(i), BlockKind::Handle, {}});
  }
  const auto top = c.compile(e);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    prefix[i].children = {i + 1 < prefix.size() ? prefix[i + 1].name : top};
  }
  prefix.insert(prefix.end(), c.specs.begin(), c.specs.end());
  const auto root = handles > 0 ? prefix.front().name : top;
  return SurfacePresentation::from_specs(std::move(name), prefix, root);
}

namespace {

// Pt(np), Cantor(np), Seq(Pt(p), np), then k >= 2 isolated non-planar ends.
// All have infinite genus; the last group is told apart by ends count.
EndExpr family_member(std::size_t i) {
  switch (i) {
    case 0:
      return EndExpr::point(true);
    case 1:
      return EndExpr::cantor(true);
    case 2:
      return EndExpr::seq(EndExpr::point(false), true);
    default:
      break;
  }
  std::vector<EndExpr> points(i - 1, EndExpr::point(true));
  return EndExpr::union_of(std::move(points));
}

const char* family_name(std::size_t i) {
  switch (i) {
    case 0:
      return "loch_ness";
    case 1:
      return "blooming_cantor";
    case 2:
      return "flute_with_genus_limit";
    default:
      return "nonplanar_ends";
  }
}

}  // namespace

std::vector<SurfacePresentation> distinct_family(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error("classify", "FamilyTooLarge",
                "family size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  std::vector<SurfacePresentation> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = family_name(i);
    if (i >= 3) name += "_" + std::to_string(i - 1);
    out.push_back(realize(Genus::infinite(), family_member(i), name));
  }
  return out;
}

}  // namespace endkit
