#include "endkit/rewrite.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "endkit/error.hpp"

namespace endkit {

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& message) {
  throw Error("curve-rewrite", code, message);
}

const Component* find_component(const CurveConfig& c, int id) {
  for (const auto& k : c.components) {
    if (k.id == id) return &k;
  }
  return nullptr;
}

bool has_trivial(const CurveConfig& c) {
  return std::any_of(c.components.begin(), c.components.end(),
                     [](const Component& k) { return k.kind == Component::Kind::Trivial; });
}

bool labels_normalized(const CurveConfig& c) {
  return std::none_of(c.components.begin(), c.components.end(), [](const Component& k) {
    return k.kind == Component::Kind::Primitive && !k.label.homeo;
  });
}

CurveConfig remove_ids(const CurveConfig& c, const std::set<int>& ids) {
  CurveConfig out = c;
  std::erase_if(out.components, [&](const Component& k) { return ids.count(k.id) > 0; });
  for (auto it = out.parallel.begin(); it != out.parallel.end();) {
    std::erase_if(it->second, [&](int id) { return ids.count(id) > 0; });
    it = it->second.empty() ? out.parallel.erase(it) : std::next(it);
  }
  return out;
}

// The outermost disk bounded by `root` with everything nested inside it.
std::set<int> disk_contents(const CurveConfig& c, int root) {
  std::set<int> inside{root};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& k : c.components) {
      if (k.kind == Component::Kind::Trivial && inside.count(k.parent) && inside.insert(k.id).second) {
        grew = true;
      }
    }
  }
  return inside;
}

CurveConfig normalize_label(CurveConfig c, int id) {
  for (auto& k : c.components) {
    if (k.id == id && k.kind == Component::Kind::Primitive && !k.label.homeo) {
      k.coerced = std::abs(k.label.degree) != 1;
      k.label.homeo = true;
    }
  }
  return c;
}

void require_r2(const CurveConfig& c) {
  if (has_trivial(c)) fail("TrivialComponentsPresent", "remove the trivial circles (r1) first");
}

void require_r3(const CurveConfig& c) {
  if (!labels_normalized(c)) fail("LabelsNotNormalized", "every primitive label must be Homeo (run r2)");
}

std::string key(const CurveConfig& c) {
  std::ostringstream out;
  for (const auto& k : c.components) {
    out << k.id << ':' << k.target << ':' << static_cast<int>(k.kind) << ':' << k.parent << ':'
        << k.label.homeo << ':' << k.label.degree << ':' << k.coerced << ';';
  }
  out << '|';
  for (const auto& [t, ids] : c.parallel) {
    out << t << '[';
    for (int id : ids) out << id << ',';
    out << ']';
  }
  return out.str();
}

}  // namespace

void validate(const CurveConfig& c) {
  std::set<int> targets(c.targets.begin(), c.targets.end());
  if (targets.size() != c.targets.size()) fail("InvalidConfig", "duplicate target id");
  std::set<int> ids;
  for (const auto& k : c.components) {
    if (!ids.insert(k.id).second) fail("InvalidConfig", "duplicate component id " + std::to_string(k.id));
    if (!targets.count(k.target)) fail("InvalidConfig", "component " + std::to_string(k.id) + " has unknown target");
  }
  for (const auto& k : c.components) {
    if (k.kind == Component::Kind::Primitive) {
      if (k.parent != -1) fail("InvalidConfig", "primitive component " + std::to_string(k.id) + " inside a disk");
      continue;
    }
    if (k.label.homeo) fail("InvalidConfig", "Homeo label on trivial component " + std::to_string(k.id));
    // Walk up the nesting; a repeat means a cycle.
    std::set<int> seen{k.id};
    for (int p = k.parent; p != -1;) {
      const auto* parent = find_component(c, p);
      if (!parent || parent->kind != Component::Kind::Trivial) {
        fail("InvalidConfig", "component " + std::to_string(k.id) + " nested in a non-trivial or missing circle");
      }
      if (!seen.insert(p).second) fail("InvalidConfig", "nesting cycle through " + std::to_string(k.id));
      p = parent->parent;
    }
  }
  std::set<int> ordered;
  for (const auto& [t, list] : c.parallel) {
    for (int id : list) {
      const auto* k = find_component(c, id);
      if (!k || k->kind != Component::Kind::Primitive || k->target != t) {
        fail("InvalidConfig", "parallel order of target " + std::to_string(t) + " lists " + std::to_string(id));
      }
      if (!ordered.insert(id).second) fail("InvalidConfig", "component " + std::to_string(id) + " ordered twice");
    }
  }
  for (const auto& k : c.components) {
    if (k.kind == Component::Kind::Primitive && !ordered.count(k.id)) {
      fail("InvalidConfig", "primitive component " + std::to_string(k.id) + " missing from its parallel order");
    }
  }
}

CurveConfig canonicalize(CurveConfig c) {
  std::sort(c.components.begin(), c.components.end(),
            [](const Component& a, const Component& b) { return a.id < b.id; });
  std::set<int> ordered;
  for (const auto& [t, list] : c.parallel) ordered.insert(list.begin(), list.end());
  for (const auto& k : c.components) {
    if (k.kind == Component::Kind::Primitive && !ordered.count(k.id)) c.parallel[k.target].push_back(k.id);
  }
  std::erase_if(c.parallel, [](const auto& entry) { return entry.second.empty(); });
  return c;
}

std::size_t count_on(const CurveConfig& c, int target) {
  return static_cast<std::size_t>(std::count_if(c.components.begin(), c.components.end(),
                                                [target](const Component& k) { return k.target == target; }));
}

Measure measure(const CurveConfig& c) {
  Measure m;
  for (const auto& k : c.components) {
    if (k.kind == Component::Kind::Trivial) {
      ++m.trivial;
    } else if (c.pi1_bijective && !k.label.homeo) {
      ++m.unnormalized;
    }
  }
  for (const auto& [t, list] : c.parallel) m.excess += list.size() > 1 ? list.size() - 1 : 0;
  return m;
}

CurveConfig r1_disk_removal(const CurveConfig& c) {
  std::set<int> trivial;
  for (const auto& k : c.components) {
    if (k.kind == Component::Kind::Trivial) trivial.insert(k.id);
  }
  return remove_ids(c, trivial);
}

CurveConfig r2_homeo_normalize(const CurveConfig& c) {
  require_r2(c);
  // Without a pi_1 bijection a label is a constant map (degree 0) or a
  // covering; both are admissible, so there is nothing to rewrite.
  if (!c.pi1_bijective) return c;
  CurveConfig out = c;
  for (const auto& k : c.components) out = normalize_label(std::move(out), k.id);
  return out;
}

CurveConfig r3_annulus_removal(const CurveConfig& c) {
  require_r3(c);
  std::set<int> extra;
  for (const auto& [t, list] : c.parallel) extra.insert(list.begin() + 1, list.end());
  return remove_ids(c, extra);
}

CurveConfig r4_surjectivity_endgame(const CurveConfig& c) {
  if (c.degree.kind == GlobalDegree::Kind::Unknown) fail("DegreeUnknown", "the global degree is not known");
  if (!c.degree.nonzero()) return c;
  require_r2(c);
  for (int t : c.targets) {
    const auto n = count_on(c, t);
    if (n == 0) {
      fail("InconsistentConfiguration",
           "target " + std::to_string(t) + " has an empty preimage under a map of non-zero degree");
    }
    if (n > 1) fail("ParallelComponentsPresent", "target " + std::to_string(t) + " still has parallel preimages");
  }
  return c;
}

std::string Step::to_string() const {
  static const char* rules[] = {"r1", "r2", "r3", "r4"};
  std::string out = rules[static_cast<int>(rule)];
  switch (scope) {
    case Scope::All:
      return out;
    case Scope::Disk:
      return out + ":disk=" + std::to_string(arg);
    case Scope::Component:
      return out + ":component=" + std::to_string(arg);
    case Scope::Target:
      return out + ":target=" + std::to_string(arg);
    case Scope::Pair:
      return out + ":pair=" + std::to_string(arg);
  }
  return out;
}

Step parse_step(const std::string& text) {
  Step s;
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  if (head == "r1") {
    s.rule = Step::Rule::R1;
  } else if (head == "r2") {
    s.rule = Step::Rule::R2;
  } else if (head == "r3") {
    s.rule = Step::Rule::R3;
  } else if (head == "r4") {
    s.rule = Step::Rule::R4;
  } else {
    fail("InvalidStep", "unknown rule '" + head + "'");
  }
  if (colon == std::string::npos) return s;
  const auto eq = text.find('=', colon);
  if (eq == std::string::npos) fail("InvalidStep", "expected scope=id in '" + text + "'");
  const auto scope = text.substr(colon + 1, eq - colon - 1);
  const std::pair<const char*, Step::Scope> scopes[] = {{"disk", Step::Scope::Disk},
                                                         {"component", Step::Scope::Component},
                                                         {"target", Step::Scope::Target},
                                                         {"pair", Step::Scope::Pair}};
  bool known = false;
  for (const auto& [name, value] : scopes) {
    if (scope == name) {
      s.scope = value;
      known = true;
    }
  }
  if (!known) fail("InvalidStep", "unknown scope '" + scope + "'");
  try {
    std::size_t used = 0;
    s.arg = std::stoi(text.substr(eq + 1), &used);
    if (used != text.size() - eq - 1) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    fail("InvalidStep", "bad id in '" + text + "'");
  }
  return s;
}

CurveConfig apply(const CurveConfig& c, const Step& s) {
  using R = Step::Rule;
  using S = Step::Scope;
  if (s.scope == S::All) {
    switch (s.rule) {
      case R::R1:
        return r1_disk_removal(c);
      case R::R2:
        return r2_homeo_normalize(c);
      case R::R3:
        return r3_annulus_removal(c);
      case R::R4:
        return r4_surjectivity_endgame(c);
    }
  }
  const auto bad = [&] { fail("InvalidStep", "step " + s.to_string() + " does not apply"); };
  if (s.rule == R::R1 && s.scope == S::Disk) {
    const auto* k = find_component(c, s.arg);
    if (!k || k->kind != Component::Kind::Trivial || k->parent != -1) bad();
    return remove_ids(c, disk_contents(c, s.arg));
  }
  if (s.rule == R::R2 && s.scope == S::Component) {
    require_r2(c);
    const auto* k = find_component(c, s.arg);
    if (!k || k->kind != Component::Kind::Primitive) bad();
    return c.pi1_bijective ? normalize_label(c, s.arg) : c;
  }
  if (s.rule == R::R3 && s.scope == S::Target) {
    require_r3(c);
    const auto it = c.parallel.find(s.arg);
    if (it == c.parallel.end()) return c;
    return remove_ids(c, {it->second.begin() + 1, it->second.end()});
  }
  if (s.rule == R::R3 && s.scope == S::Pair) {
    require_r3(c);
    // Compress the annulus between this circle and the next one outward.
    for (const auto& [t, list] : c.parallel) {
      const auto it = std::find(list.begin(), list.end(), s.arg);
      if (it == list.end()) continue;
      if (std::next(it) == list.end()) bad();
      return remove_ids(c, {*std::next(it)});
    }
    bad();
  }
  bad();
  return c;
}

std::vector<Step> legal_steps(const CurveConfig& c) {
  using R = Step::Rule;
  using S = Step::Scope;
  std::vector<Step> out;
  if (has_trivial(c)) {
    out.push_back({R::R1, S::All, -1});
    for (const auto& k : c.components) {
      if (k.kind == Component::Kind::Trivial && k.parent == -1) out.push_back({R::R1, S::Disk, k.id});
    }
  } else if (c.pi1_bijective && !labels_normalized(c)) {
    out.push_back({R::R2, S::All, -1});
    for (const auto& k : c.components) {
      if (k.kind == Component::Kind::Primitive && !k.label.homeo) out.push_back({R::R2, S::Component, k.id});
    }
  }
  if (labels_normalized(c)) {
    bool any = false;
    for (const auto& [t, list] : c.parallel) {
      if (list.size() < 2) continue;
      any = true;
      out.push_back({R::R3, S::Target, t});
      for (std::size_t i = 0; i + 1 < list.size(); ++i) out.push_back({R::R3, S::Pair, list[i]});
    }
    if (any) out.push_back({R::R3, S::All, -1});
  }
  return out;
}

std::vector<Step> default_schedule(const CurveConfig& c) {
  using R = Step::Rule;
  std::vector<Step> s{{R::R1, Step::Scope::All, -1}, {R::R2, Step::Scope::All, -1}};
  if (c.pi1_bijective) {
    s.push_back({R::R3, Step::Scope::All, -1});
    s.push_back({R::R4, Step::Scope::All, -1});
  }
  return s;
}

RewriteResult run_pipeline(const CurveConfig& c, const std::vector<Step>& schedule) {
  validate(c);
  RewriteResult r{c, {}};
  for (const auto& step : schedule) {
    auto next = apply(r.config, step);
    if (next == r.config) continue;
    TraceEntry e{step, measure(r.config), measure(next)};
    if (e.after.total() >= e.before.total()) {
      fail("MeasureNotDecreasing", "step " + step.to_string() + " did not decrease the measure");
    }
    r.trace.push_back(e);
    r.config = std::move(next);
  }
  return r;
}

std::vector<CurveConfig> all_normal_forms(const CurveConfig& c) {
  validate(c);
  std::set<std::string> visited;
  std::map<std::string, CurveConfig> finals;
  std::function<void(const CurveConfig&)> explore = [&](const CurveConfig& cur) {
    if (!visited.insert(key(cur)).second) return;
    const auto steps = legal_steps(cur);
    if (steps.empty()) {
      finals.emplace(key(cur), cur);
      return;
    }
    for (const auto& s : steps) explore(apply(cur, s));
  };
  explore(c);
  std::vector<CurveConfig> out;
  for (auto& [k, v] : finals) out.push_back(std::move(v));
  return out;
}

}  // namespace endkit
