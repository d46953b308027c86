#include "endkit/json_io.hpp"

#include "endkit/error.hpp"

namespace endkit {

Json count_json(Count c) { return c ? Json(*c) : Json("inf"); }

Json to_json(const CBReport& r) {
  Json j;
  j["cardinality"] = r.cardinality.to_string();
  j["rank"] = r.rank_exceeds_cutoff ? Json(r.rank_to_string()) : Json(r.rank);
  j["degree"] = count_json(r.degree);
  j["perfect_kernel"] = r.perfect_kernel;
  return j;
}

Json to_json(const EndsAutomaton& e) {
  Json edges = Json::array();
  Json marked = Json::array();
  for (int i = 0; i < e.graph.size(); ++i) {
    for (int w : e.graph.succ[i]) edges.push_back({e.states[i], e.states[w]});
    if (e.marked[i]) marked.push_back(e.states[i]);
  }
  return {{"states", e.states},
          {"edges", edges},
          {"root", e.root() < 0 ? Json(nullptr) : Json(e.states[e.root()])},
          {"nonplanar_states", marked}};
}

Json to_json(const ClassifierVerdict& v) {
  Json j{{"verdict", to_string(v.verdict)}};
  if (v.verdict == ClassifierVerdict::Kind::NotHomeomorphic) j["witness"] = v.witness;
  if (v.verdict == ClassifierVerdict::Kind::Unknown) j["fragment"] = v.witness;
  return j;
}

Json invariants_json(const SurfacePresentation& p, std::uint64_t rank_cutoff) {
  const auto e = ends_automaton(p);
  Json j;
  j["name"] = p.name();
  j["automaton"] = to_json(e);
  j["genus"] = genus(p).to_string();
  j["finite_type"] = is_finite_type(p);
  if (is_finite_type(p)) {
    const auto t = canonical_finite_type(p);
    j["canonical"] = {t.g, t.b, t.p};
  }
  j["ends"] = to_json(cb_report(e, Marked::All, rank_cutoff));
  j["ends_nonplanar"] = to_json(cb_report(e, Marked::NonplanarOnly, rank_cutoff));
  try {
    j["end_expr"] = to_string(to_end_expr(e));
  } catch (const Error& err) {
    if (err.code() != "NotConvertible") throw;
    j["end_expr"] = nullptr;
  }
  return j;
}

Json census_json(const DecompositionWindow& w) {
  Json j{{"pants", w.count(Piece::Kind::Pants)}, {"punctured_disks", w.count(Piece::Kind::PuncturedDisk)}};
  if (const auto tori = w.count(Piece::Kind::OneHoledTorus)) j["one_holed_tori"] = tori;
  if (!w.complete) j["truncated"] = true;
  return j;
}

Json to_json(const DecompositionWindow& w) {
  Json pieces = Json::array();
  for (const auto& p : w.pieces) {
    pieces.push_back({{"id", p.id}, {"kind", to_string(p.kind)}, {"circles", p.circles}});
  }
  Json circles = Json::array();
  for (std::size_t c = 0; c < w.sides.size(); ++c) {
    if (w.sides[c].first < 0) continue;
    circles.push_back({{"id", c}, {"sides", {w.sides[c].first, w.sides[c].second}}});
  }
  return {{"mode", w.mode == Mode::Strict ? "strict" : "lenient"},
          {"pieces", pieces},
          {"circles", circles},
          {"complete", w.complete},
          {"census", census_json(w)}};
}

Json to_json(const SpineGraph& g) {
  Json core = Json::array();
  for (std::size_t i = 0; i < g.core.size(); ++i) {
    if (g.core[i]) core.push_back(g.automaton.states[i]);
  }
  return {{"rank", count_json(g.rank)},
          {"core", core},
          {"ends", to_json(cb_report(g.automaton, Marked::All))},
          {"core_ends", to_json(cb_report(g.automaton, Marked::NonplanarOnly))}};
}

Json to_json(const EssentialPants& e) {
  Json comps = Json::array();
  for (const auto& c : e.components) {
    comps.push_back({{"pieces", c.pieces}, {"frontier", c.frontier}, {"rank", count_json(c.rank)}});
  }
  return {{"piece", e.piece}, {"components", comps}, {"presentation", to_text(e.normalized)}};
}

namespace {

[[noreturn]] void bad_config(const std::string& what) { throw Error("curve-rewrite", "InvalidConfig", what); }
[[noreturn]] void bad_descriptor(const std::string& what) {
  throw Error("degree", "InvalidDescriptor", what);
}

template <class T>
T field(const Json& j, const char* key, void (*fail)(const std::string&)) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("field '") + key + "': " + e.what());
  }
  return T{};
}

Json degree_json(const GlobalDegree& d) {
  switch (d.kind) {
    case GlobalDegree::Kind::Unknown:
      return "Unknown";
    case GlobalDegree::Kind::Zero:
      return "Zero";
    case GlobalDegree::Kind::PlusMinusOne:
      return "PlusMinusOne";
    case GlobalDegree::Kind::Other:
      return Json{{"Other", d.value}};
  }
  return nullptr;
}

GlobalDegree degree_from(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Unknown") return {GlobalDegree::Kind::Unknown, 0};
    if (s == "Zero") return {GlobalDegree::Kind::Zero, 0};
    if (s == "PlusMinusOne") return {GlobalDegree::Kind::PlusMinusOne, 0};
  } else if (j.is_object() && j.contains("Other") && j.at("Other").is_number_integer()) {
    const int d = j.at("Other").get<int>();
    if (d == 0) return {GlobalDegree::Kind::Zero, 0};
    if (d == 1 || d == -1) return {GlobalDegree::Kind::PlusMinusOne, 0};
    return {GlobalDegree::Kind::Other, d};
  }
  bad_config("global_degree must be Unknown, Zero, PlusMinusOne or {\"Other\": d}");
}

}  // namespace

CurveConfig config_from_json(const Json& j) {
  if (!j.is_object()) bad_config("config must be an object");
  CurveConfig c;
  c.targets = field<std::vector<int>>(j, "targets", bad_config);
  if (!j.contains("components") || !j.at("components").is_array()) bad_config("components must be an array");
  for (const auto& k : j.at("components")) {
    Component comp;
    comp.id = field<int>(k, "id", bad_config);
    comp.target = field<int>(k, "target", bad_config);
    const auto kind = field<std::string>(k, "kind", bad_config);
    if (kind == "Trivial") {
      comp.kind = Component::Kind::Trivial;
      comp.parent = k.value("parent", -1);
      if (k.contains("label")) bad_config("trivial component " + std::to_string(comp.id) + " has a label");
    } else if (kind == "Primitive") {
      comp.kind = Component::Kind::Primitive;
      if (k.contains("parent") && k.at("parent") != -1) bad_config("primitive components are not nested");
      const auto& label = k.contains("label") ? k.at("label") : Json("Homeo");
      if (label == "Homeo") {
        comp.label = {true, 1};
      } else if (label.is_object() && label.contains("Degree") && label.at("Degree").is_number_integer()) {
        comp.label = {false, label.at("Degree").get<int>()};
      } else {
        bad_config("label must be \"Homeo\" or {\"Degree\": d}");
      }
      comp.coerced = k.value("coerced", false);
    } else {
      bad_config("kind must be Trivial or Primitive");
    }
    c.components.push_back(comp);
  }
  if (j.contains("parallel")) {
    for (const auto& [t, list] : j.at("parallel").items()) {
      try {
        c.parallel[std::stoi(t)] = list.get<std::vector<int>>();
      } catch (const std::exception& e) {
        bad_config("parallel order for target '" + t + "': " + e.what());
      }
    }
  }
  c.pi1_bijective = j.value("pi1_bijective", true);
  c.degree = j.contains("global_degree") ? degree_from(j.at("global_degree")) : GlobalDegree{};
  c = canonicalize(std::move(c));
  validate(c);
  return c;
}

Json to_json(const CurveConfig& c) {
  Json comps = Json::array();
  for (const auto& k : c.components) {
    Json e{{"id", k.id}, {"target", k.target}};
    if (k.kind == Component::Kind::Trivial) {
      e["kind"] = "Trivial";
      e["parent"] = k.parent;
    } else {
      e["kind"] = "Primitive";
      e["label"] = k.label.homeo ? Json("Homeo") : Json{{"Degree", k.label.degree}};
      if (k.coerced) e["coerced"] = true;
    }
    comps.push_back(e);
  }
  Json parallel = Json::object();
  for (const auto& [t, list] : c.parallel) parallel[std::to_string(t)] = list;
  return {{"targets", c.targets},
          {"components", comps},
          {"parallel", parallel},
          {"pi1_bijective", c.pi1_bijective},
          {"global_degree", degree_json(c.degree)}};
}

Json to_json(const TraceEntry& e) {
  auto m = [](const Measure& x) {
    return Json{{"trivial", x.trivial}, {"excess", x.excess}, {"unnormalized", x.unnormalized}, {"total", x.total()}};
  };
  return {{"step", e.step.to_string()}, {"before", m(e.before)}, {"after", m(e.after)}};
}

MapDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) bad_descriptor("descriptor must be an object");
  static const std::set<std::string> known{"name",        "proper",          "surjective",
                                           "boundary_embedding", "proper_homotopy_equivalence",
                                           "pseudo_phe",  "target_excluded", "ends_injective",
                                           "orientation", "degree",          "degree_abs",
                                           "allowed_degrees"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) bad_descriptor("unknown field '" + k + "'");
  }
  MapDescriptor m;
  try {
    m.name = j.value("name", "");
    if (j.contains("proper")) m.proper = j.at("proper").get<bool>();
    if (j.contains("surjective")) m.surjective = j.at("surjective").get<bool>();
    if (j.contains("boundary_embedding")) {
      const auto b = j.at("boundary_embedding").get<std::vector<int>>();
      if (b.size() != 2) bad_descriptor("boundary_embedding is [b1, b2]");
      m.boundary_embedding = std::pair{b[0], b[1]};
    }
    m.proper_homotopy_equivalence = j.value("proper_homotopy_equivalence", false);
    m.pseudo_phe = j.value("pseudo_phe", false);
    m.target_excluded = j.value("target_excluded", false);
    if (j.contains("ends_injective")) m.ends_injective = j.at("ends_injective").get<bool>();
    if (j.contains("orientation")) m.orientation = j.at("orientation").get<int>();
    if (j.contains("degree")) m.degree = j.at("degree").get<std::int64_t>();
    if (j.contains("degree_abs")) m.degree_abs = j.at("degree_abs").get<std::int64_t>();
    if (j.contains("allowed_degrees")) m.allowed_degrees = j.at("allowed_degrees").get<std::set<std::int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    bad_descriptor(e.what());
  }
  if (m.degree_abs && *m.degree_abs < 0) bad_descriptor("degree_abs must be non-negative");
  return m;
}

Json to_json(const MapDescriptor& m) {
  Json j = Json::object();
  if (!m.name.empty()) j["name"] = m.name;
  if (m.proper) j["proper"] = *m.proper;
  if (m.surjective) j["surjective"] = *m.surjective;
  if (m.boundary_embedding) j["boundary_embedding"] = {m.boundary_embedding->first, m.boundary_embedding->second};
  if (m.proper_homotopy_equivalence) j["proper_homotopy_equivalence"] = true;
  if (m.pseudo_phe) j["pseudo_phe"] = true;
  if (m.target_excluded) j["target_excluded"] = true;
  if (m.ends_injective) j["ends_injective"] = *m.ends_injective;
  if (m.orientation) j["orientation"] = *m.orientation;
  if (m.degree) j["degree"] = *m.degree;
  if (m.degree_abs) j["degree_abs"] = *m.degree_abs;
  if (m.allowed_degrees) j["allowed_degrees"] = *m.allowed_degrees;
  return j;
}

Json to_json(const DegreeReport& r) {
  Json j{{"descriptor", to_json(r.descriptor)},
         {"phe_admissible", r.phe_admissible},
         {"pseudo_phe_admissible", r.pseudo_phe_admissible},
         {"fired", r.fired}};
  j["allowed_degrees"] = r.descriptor.allowed_degrees ? Json(*r.descriptor.allowed_degrees) : Json("any");
  if (r.pi1_surjective) j["pi1_surjective"] = *r.pi1_surjective;
  return j;
}

}  // namespace endkit
