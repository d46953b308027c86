// endkit: command-line front end. Every command prints one JSON document
// (or DOT with --dot) on stdout. Exit status: 0 decided, 2 Unknown, 1 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "endkit/classify.hpp"
#include "endkit/decompose.hpp"
#include "endkit/degree.hpp"
#include "endkit/error.hpp"
#include "endkit/json_io.hpp"
#include "endkit/rewrite.hpp"

using namespace endkit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli", "IoError", "cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SurfacePresentation load_surface(const std::string& path) { return parse_presentation(slurp(path)); }

Json load_json(const std::string& path, const std::string& module) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw Error(module, "SyntaxError", path + ": " + e.what());
  }
}

Genus parse_genus(const std::string& text) {
  if (text == "inf" || text == "infinite") return Genus::infinite();
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used == text.size()) return Genus(v);
  } catch (const std::logic_error&) {
  }
  throw Error("cli", "UsageError", "genus must be a natural number or 'inf', got '" + text + "'");
}

int print(const Json& j) {
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, decompositions and degree checks for non-compact surfaces"};
  app.require_subcommand(1);
  std::uint64_t rank_cutoff = 16;
  app.add_option("--rank-cutoff", rank_cutoff, "Largest Cantor-Bendixson rank computed exactly");

  std::string file_a, file_b;
  auto* classify_cmd = app.add_subcommand("classify", "Decide whether two presented surfaces are homeomorphic");
  classify_cmd->add_option("a", file_a)->required();
  classify_cmd->add_option("b", file_b)->required();

  auto* invariants_cmd = app.add_subcommand("invariants", "Genus, type and ends invariants");
  invariants_cmd->add_option("surface", file_a)->required();

  std::string mode = "strict";
  std::size_t depth = 8;
  bool dot = false, full_json = false;
  auto* decompose_cmd = app.add_subcommand("decompose", "Pants and punctured-disk decomposition window");
  decompose_cmd->add_option("surface", file_a)->required();
  decompose_cmd->add_option("--mode", mode)->check(CLI::IsMember({"strict", "lenient"}));
  decompose_cmd->add_option("--depth", depth, "Number of pieces in the window");
  decompose_cmd->add_flag("--dot", dot);
  decompose_cmd->add_flag("--json", full_json, "Print the whole window, not just the census");

  std::vector<std::string> front;
  auto* normalize_cmd = app.add_subcommand("normalize", "Move unfolding nodes right after the initial disk");
  normalize_cmd->add_option("surface", file_a)->required();
  normalize_cmd->add_option("--front", front, "Nodes such as r, r.0, r.1.0, in order");

  auto* spine_cmd = app.add_subcommand("spine", "Spine graph of a presented surface");
  spine_cmd->add_option("surface", file_a)->required();
  spine_cmd->add_flag("--dot", dot);

  auto* phe_cmd = app.add_subcommand("graph-phe", "Compare two spines up to proper homotopy");
  phe_cmd->add_option("a", file_a)->required();
  phe_cmd->add_option("b", file_b)->required();

  auto* pants_cmd = app.add_subcommand("essential-pants", "Find an essential pair of pants");
  pants_cmd->add_option("surface", file_a)->required();

  std::string schedule;
  bool trace_lines = false;
  auto* rewrite_cmd = app.add_subcommand("rewrite", "Run the curve rewriting pipeline on a configuration");
  rewrite_cmd->add_option("config", file_a)->required();
  rewrite_cmd->add_option("--schedule", schedule, "Comma separated steps, e.g. r1,r2,r3:target=0,r4");
  rewrite_cmd->add_flag("--trace", trace_lines, "Print the trace as JSON lines before the result");

  auto* degree_cmd = app.add_subcommand("degree", "Degree ledger");
  degree_cmd->require_subcommand(1);
  auto* check_cmd = degree_cmd->add_subcommand("check", "Constrain the degree of a map descriptor");
  check_cmd->add_option("descriptor", file_a)->required();

  std::string genus_text, expr_text;
  auto* realize_cmd = app.add_subcommand("realize", "Build a surface with the given genus and ends");
  realize_cmd->add_option("genus", genus_text)->required();
  realize_cmd->add_option("ends", expr_text, "End expression, e.g. 'Seq(Pt(p),np)'")->required();

  std::size_t family_size = 2;
  auto* family_cmd = app.add_subcommand("family", "Pairwise non-homeomorphic infinite-type surfaces");
  family_cmd->add_option("n", family_size)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print({{"error", {{"module", "cli"}, {"case", "UsageError"}, {"message", e.what()}}}});
    return 1;
  }

  try {
    if (*classify_cmd) {
      const auto v = kerekjarto(load_surface(file_a), load_surface(file_b), rank_cutoff);
      print(to_json(v));
      return v.verdict == ClassifierVerdict::Kind::Unknown ? 2 : 0;
    }
    if (*invariants_cmd) return print(invariants_json(load_surface(file_a), rank_cutoff));
    if (*decompose_cmd) {
      const auto w = decompose(load_surface(file_a), mode == "strict" ? Mode::Strict : Mode::Lenient, depth);
      if (dot) {
        std::cout << to_dot(w);
        return 0;
      }
      return print(full_json ? to_json(w) : census_json(w));
    }
    if (*normalize_cmd) {
      return print({{"presentation", to_text(interchange_normalize(load_surface(file_a), front))}});
    }
    if (*spine_cmd) {
      const auto g = spine(load_surface(file_a));
      if (dot) {
        std::cout << to_dot(g);
        return 0;
      }
      return print(to_json(g));
    }
    if (*phe_cmd) {
      const auto v = graph_phe_equal(spine(load_surface(file_a)), spine(load_surface(file_b)), rank_cutoff);
      print({{"verdict", to_string(v)}});
      return v == Tristate::Unknown ? 2 : 0;
    }
    if (*pants_cmd) return print(to_json(find_essential_pants(load_surface(file_a))));
    if (*rewrite_cmd) {
      const auto config = config_from_json(load_json(file_a, "curve-rewrite"));
      std::vector<Step> steps;
      if (schedule.empty()) {
        steps = default_schedule(config);
      } else {
        std::stringstream in(schedule);
        for (std::string item; std::getline(in, item, ',');) steps.push_back(parse_step(item));
      }
      const auto result = run_pipeline(config, steps);
      Json trace = Json::array();
      for (const auto& e : result.trace) {
        if (trace_lines) print(to_json(e));
        trace.push_back(to_json(e));
      }
      return print({{"config", to_json(result.config)}, {"trace", trace}});
    }
    if (*check_cmd) return print(to_json(infer_degree(descriptor_from_json(load_json(file_a, "degree")))));
    if (*realize_cmd) {
      const auto p = realize(parse_genus(genus_text), parse_end_expr(expr_text));
      return print({{"presentation", to_text(p)}});
    }
    if (*family_cmd) {
      Json surfaces = Json::array();
      for (const auto& p : distinct_family(family_size)) surfaces.push_back(to_text(p));
      return print({{"surfaces", surfaces}});
    }
  } catch (const Error& e) {
    print({{"error", {{"module", e.module()}, {"case", e.code()}, {"message", e.what()}}}});
    return 1;
  }
  return 1;
}
