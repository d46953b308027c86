#include "endkit/degree.hpp"

#include <algorithm>
#include <cstdlib>

#include "endkit/error.hpp"

namespace endkit {

namespace {

using Degrees = std::set<std::int64_t>;

const Degrees kUnit{-1, 1};

std::string show(const Degrees& d) {
  std::string out = "{";
  for (auto it = d.begin(); it != d.end(); ++it) {
    if (it != d.begin()) out += ",";
    out += std::to_string(*it);
  }
  return out + "}";
}

class Ledger {
 public:
  explicit Ledger(MapDescriptor m) : m_(std::move(m)) {}

  // Intersects the allowed set with `with`, remembering which rule did it.
  bool narrow(const Degrees& with, const std::string& rule) {
    Degrees next;
    if (!m_.allowed_degrees) {
      next = with;
    } else {
      for (auto d : *m_.allowed_degrees) {
        if (with.count(d)) next.insert(d);
      }
    }
    if (m_.allowed_degrees && next == *m_.allowed_degrees) return false;
    if (next.empty()) {
      throw Error("degree", "DegreeContradiction",
                  rule + " leaves no degree: " + (m_.allowed_degrees ? show(*m_.allowed_degrees) : "any") +
                      " against " + show(with));
    }
    m_.allowed_degrees = std::move(next);
    fired_.push_back(rule);
    return true;
  }

  bool set_flag(std::optional<bool>& flag, bool value, const std::string& rule) {
    if (flag == value) return false;
    if (flag.has_value()) throw Error("degree", "DegreeContradiction", rule + " contradicts a given flag");
    flag = value;
    fired_.push_back(rule);
    return true;
  }

  DegreeReport run() {
    if (m_.boundary_embedding && m_.boundary_embedding->first != m_.boundary_embedding->second) {
      throw Error("degree", "BoundaryCountMismatch",
                  "boundary embedding needs b1 = b2, got " + std::to_string(m_.boundary_embedding->first) +
                      " and " + std::to_string(m_.boundary_embedding->second));
    }
    if (m_.orientation && *m_.orientation != 1 && *m_.orientation != -1) {
      throw Error("degree", "DegreeContradiction", "orientation must be +1 or -1");
    }
    bool changed = true;
    while (changed) {
      changed = false;
      if (m_.proper_homotopy_equivalence && !m_.pseudo_phe) {
        m_.pseudo_phe = true;
        fired_.push_back("phe-is-pseudo-phe");
        changed = true;
      }
      if (m_.pseudo_phe) changed |= set_flag(m_.proper, true, "pseudo-phe-is-proper");
      if (m_.degree) changed |= narrow({*m_.degree}, "degree");
      if (m_.degree_abs) changed |= narrow({*m_.degree_abs, -*m_.degree_abs}, "degree-abs");
      if (m_.surjective == false) changed |= narrow({0}, "not-surjective");
      if (m_.boundary_embedding) changed |= narrow(kUnit, "boundary-embedding");
      if (m_.proper_homotopy_equivalence) changed |= narrow(kUnit, "phe");
      if (m_.pseudo_phe && !m_.target_excluded) changed |= narrow(kUnit, "pseudo-phe");
      if (m_.allowed_degrees && !m_.allowed_degrees->count(0)) {
        changed |= set_flag(m_.surjective, true, "nonzero-degree-is-surjective");
      }
      if (m_.orientation && m_.allowed_degrees) {
        Degrees signed_ok;
        for (auto d : *m_.allowed_degrees) {
          if (d == 0 || (d > 0) == (*m_.orientation > 0)) signed_ok.insert(d);
        }
        changed |= narrow(signed_ok, "orientation");
      }
    }
    if (m_.allowed_degrees) {
      const auto& a = *m_.allowed_degrees;
      if (a.size() == 1) m_.degree = *a.begin();
      const auto abs0 = std::llabs(*a.begin());
      bool same_abs = true;
      for (auto d : a) same_abs = same_abs && std::llabs(d) == abs0;
      if (same_abs) m_.degree_abs = abs0;
    }
    DegreeReport r;
    const bool unit_possible = !m_.allowed_degrees || m_.allowed_degrees->count(1) || m_.allowed_degrees->count(-1);
    r.pseudo_phe_admissible = m_.proper != false && (unit_possible || m_.target_excluded);
    r.phe_admissible = m_.proper != false && unit_possible && m_.surjective != false && m_.ends_injective != false;
    if (m_.allowed_degrees && std::all_of(m_.allowed_degrees->begin(), m_.allowed_degrees->end(),
                                          [](std::int64_t d) { return d == 1 || d == -1; })) {
      r.pi1_surjective = true;
    }
    r.descriptor = m_;
    r.fired = fired_;
    return r;
  }

 private:
  MapDescriptor m_;
  std::vector<std::string> fired_;
};

}  // namespace

std::int64_t deg_compose(std::int64_t d1, std::int64_t d2) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(d1, d2, &out)) throw Error("degree", "Overflow", "degree product overflows");
  return out;
}

DegreeReport infer_degree(const MapDescriptor& m) { return Ledger(m).run(); }

int degree_from_disk_witness(bool orientation_preserving) { return orientation_preserving ? 1 : -1; }

}  // namespace endkit
