#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <numeric>

#include "endkit/error.hpp"
#include "support.hpp"

using namespace endkit;
using namespace testing;

using PK = Piece::Kind;

namespace {

std::string error_code(const SurfacePresentation& p, Mode m) {
  try {
    decompose(p, m, 64);
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

int chi(const DecompositionWindow& w) {
  int total = 0;
  for (const auto& piece : w.pieces) total += euler_characteristic(piece.kind);
  return total;
}

struct Census {
  std::size_t components = 0;
  std::vector<std::int64_t> rank_lower_bound;  // from emitted pieces only
  std::vector<bool> open;                      // touches the frontier
};

// Components of the window with one piece deleted, read off the circle sides.
Census complement(const DecompositionWindow& w, int removed) {
  std::vector<int> parent(w.pieces.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [a, b] : w.sides) {
    if (a < 0 || b < 0 || a == removed || b == removed) continue;
    parent[find(a)] = find(b);
  }
  std::map<int, std::size_t> index;
  Census c;
  for (int i = 0; i < static_cast<int>(w.pieces.size()); ++i) {
    if (i == removed) continue;
    const int r = find(i);
    if (!index.count(r)) {
      index[r] = c.components++;
      c.rank_lower_bound.push_back(1);
      c.open.push_back(false);
    }
    c.rank_lower_bound[index[r]] -= euler_characteristic(w.pieces[i].kind);
  }
  for (const auto& [a, b] : w.sides) {
    if (a >= 0 && a != removed && b < 0) c.open[index[find(a)]] = true;
    if (b >= 0 && b != removed && a < 0) c.open[index[find(b)]] = true;
  }
  return c;
}

}  // namespace

TEST_CASE("S_{3,0,1} gives five pants and one punctured disk") {
  const auto w = decompose(finite(3, 0, 1), Mode::Strict, 1000);
  CHECK(w.complete);
  CHECK(w.count(PK::Pants) == 5);
  CHECK(w.count(PK::PuncturedDisk) == 1);
  CHECK(w.pieces.size() == 6);
}

TEST_CASE("S_{g,0,1} gives 2g-1 pants") {
  for (std::uint64_t g = 2; g <= 6; ++g) {
    const auto w = decompose(finite(g, 0, 1), Mode::Strict, 1000);
    CHECK(w.count(PK::Pants) == 2 * g - 1);
    CHECK(w.count(PK::PuncturedDisk) == 1);
  }
}

TEST_CASE("loch ness windows are all pants") {
  for (std::size_t n = 1; n <= 16; ++n) {
    const auto w = decompose(loch_ness(), Mode::Strict, n);
    CHECK(w.pieces.size() == n);
    CHECK(w.count(PK::Pants) == n);
    CHECK_FALSE(w.complete);
  }
}

TEST_CASE("excluded surfaces") {
  CHECK(error_code(finite(0, 0, 1), Mode::Strict) == "PlaneExcluded");
  CHECK(error_code(finite(0, 0, 1), Mode::Lenient) == "PlaneExcluded");
  CHECK(error_code(finite(1, 0, 1), Mode::Strict) == "PuncturedTorusExcludedInStrict");
  const auto w = decompose(finite(1, 0, 1), Mode::Lenient, 100);
  CHECK(w.count(PK::OneHoledTorus) == 1);
  CHECK(w.count(PK::PuncturedDisk) == 1);
  CHECK(w.pieces.front().kind == PK::OneHoledTorus);
  CHECK(chi(w) == -1);
}

TEST_CASE("Euler accounting on finite type") {
  std::mt19937 rng(41);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t g = rng() % 9, p = 1 + rng() % 8;
    if ((g == 0 || g == 1) && p == 1) continue;
    INFO("g=" << g << " p=" << p);
    const auto w = decompose(finite(g, 0, p), Mode::Strict, 10000);
    REQUIRE(w.complete);
    CHECK(w.count(PK::Pants) == 2 * g + p - 2);
    CHECK(w.count(PK::PuncturedDisk) == p);
    CHECK(w.count(PK::OneHoledTorus) == 0);
    CHECK(chi(w) == 2 - 2 * static_cast<int>(g) - static_cast<int>(p));
  }
}

TEST_CASE("Euler accounting on random finite-type presentations") {
  std::mt19937 rng(42);
  int seen = 0;
  for (int i = 0; i < 400; ++i) {
    const auto p = random_presentation(rng, 6);
    if (!is_finite_type(p)) continue;
    const auto t = canonical_finite_type(p);
    if (t.g + t.p <= 1 || (t.g == 1 && t.p == 1)) continue;
    ++seen;
    INFO(to_text(p));
    const auto w = decompose(p, Mode::Strict, 10000);
    REQUIRE(w.complete);
    CHECK(chi(w) == 2 - 2 * static_cast<int>(t.g) - static_cast<int>(t.p));
    // Every circle is two-sided inside a complete window.
    for (const auto& [a, b] : w.sides) {
      CHECK(a >= 0);
      CHECK(b >= 0);
    }
  }
  CHECK(seen >= 10);
}

TEST_CASE("windows grow monotonically") {
  std::mt19937 rng(43);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_presentation(rng, 5);
    const auto t = is_finite_type(p) ? canonical_finite_type(p) : FiniteType{9, 0, 9};
    if (t.g + t.p <= 1) continue;
    INFO(to_text(p));
    const auto mode = (t.g == 1 && t.p == 1) ? Mode::Lenient : Mode::Strict;
    auto prev = decompose(p, mode, 0);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto cur = decompose(p, mode, n);
      REQUIRE(cur.pieces.size() >= prev.pieces.size());
      for (std::size_t k = 0; k < prev.pieces.size(); ++k) {
        CHECK(cur.pieces[k].kind == prev.pieces[k].kind);
        CHECK(cur.pieces[k].circles == prev.pieces[k].circles);
      }
      prev = cur;
    }
  }
}

TEST_CASE("dot output names every piece") {
  const auto w = decompose(finite(2, 0, 1), Mode::Strict, 100);
  const auto dot = to_dot(w);
  CHECK(dot.rfind("graph", 0) == 0);
  for (const auto& piece : w.pieces) CHECK(dot.find("p" + std::to_string(piece.id)) != std::string::npos);
}

TEST_CASE("interchange with an empty front changes nothing") {
  const auto p = standard_presentation(2, 3);
  const auto q = interchange_normalize(p, {});
  CHECK(kerekjarto(p, q).verdict == ClassifierVerdict::Kind::Homeomorphic);
  CHECK(q.rule(q.root()).kind == p.rule(p.root()).kind);
}

TEST_CASE("interchange moves a later handle to the front") {
  const auto p = standard_presentation(1, 3);
  REQUIRE(p.rule(p.root()).kind == BlockKind::Pants);
  const auto u = unroll(p, 6);
  std::string handle;
  const auto& reg = u.regular();
  for (const auto& path : node_paths(u, 5)) {
    int s = reg.root();
    for (std::size_t k = 2; k < path.size(); k += 2) s = reg.rule(s).children[path[k] - '0'];
    if (reg.rule(s).kind == BlockKind::Handle) {
      handle = path;
      break;
    }
  }
  REQUIRE_FALSE(handle.empty());
  const auto q = interchange_normalize(u, {handle});
  CHECK(q.rule(q.root()).kind == BlockKind::Handle);
  CHECK(kerekjarto(p, q).verdict == ClassifierVerdict::Kind::Homeomorphic);
  CHECK(canonical_finite_type(q) == FiniteType{1, 0, 3});
}

TEST_CASE("interchange refuses occurrences inside cycles") {
  try {
    interchange_normalize(loch_ness(), {"r.0"});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "OccurrenceInsideCycle");
  }
  try {
    interchange_normalize(unroll(finite(2, 0, 1), 3), {"r.7"});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "InvalidOccurrence");
  }
}

TEST_CASE("two handles pulled to the front of genus two") {
  const auto p = finite(2, 0, 2);
  const auto q = pull_to_front(p, {BlockKind::Handle, BlockKind::Handle});
  CHECK(q.rule(q.root()).kind == BlockKind::Handle);
  CHECK(q.rule(q.rule(q.root()).children[0]).kind == BlockKind::Handle);
  CHECK(kerekjarto(p, q).verdict == ClassifierVerdict::Kind::Homeomorphic);
  CHECK_THROWS_AS(pull_to_front(finite(1, 0, 2), {BlockKind::Handle, BlockKind::Handle}), Error);
}

TEST_CASE("interchange keeps genus and verdict on random inputs") {
  std::mt19937 rng(44);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_presentation(rng, 5);
    const auto u = unroll(p, 4);
    auto paths = node_paths(u, 3);
    std::shuffle(paths.begin(), paths.end(), rng);
    paths.resize(rng() % std::min<std::size_t>(paths.size(), 4) + 1);
    INFO(to_text(p));
    const auto q = interchange_normalize(u, paths);
    CHECK(genus(q) == genus(p));
    CHECK(kerekjarto(p, q).verdict != ClassifierVerdict::Kind::NotHomeomorphic);
    CHECK(kerekjarto(u, q).verdict == kerekjarto(u, u).verdict);
  }
}

TEST_CASE("spine ranks") {
  CHECK(spine(finite(1, 0, 1)).rank == Count{2});
  CHECK(spine(finite(0, 0, 3)).rank == Count{2});
  CHECK(spine(finite(0, 0, 1)).rank == Count{0});
  CHECK_FALSE(spine(loch_ness()).rank.has_value());
}

TEST_CASE("spine rank is 1 - chi on finite type and infinite otherwise") {
  std::mt19937 rng(45);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_presentation(rng, 6);
    INFO(to_text(p));
    const auto s = spine(p);
    const double oracle = spine_rank_oracle(p);
    if (oracle < 0) {
      CHECK_FALSE(s.rank.has_value());
      continue;
    }
    REQUIRE(s.rank.has_value());
    CHECK(static_cast<double>(*s.rank) == oracle);
    const auto t = canonical_finite_type(p);
    CHECK(*s.rank == 2 * t.g + t.p - 1);
  }
}

TEST_CASE("graph proper homotopy comparison") {
  CHECK(graph_phe_equal(spine(finite(1, 0, 1)), spine(finite(0, 0, 3))) == Tristate::No);
  CHECK(graph_phe_equal(spine(loch_ness()), spine(cantor())) == Tristate::No);
  CHECK(graph_phe_equal(spine(cantor()), spine(cantor())) == Tristate::Yes);
  CHECK(graph_phe_equal(spine(finite(1, 0, 2)), spine(finite(0, 0, 4))) == Tristate::No);
  const auto dot = to_dot(spine(flute()));
  CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("essential pants pass a direct census") {
  for (const auto& p : {cantor(), loch_ness(), flute(), blooming_cantor(), finite(2, 0, 2), finite(3, 0, 1), finite(0, 0, 6),
                        finite(1, 0, 3), finite(3, 0, 2)}) {
    INFO(to_text(p));
    const auto e = find_essential_pants(p);
    REQUIRE(e.piece >= 0);
    CHECK(e.window.pieces[e.piece].kind == PK::Pants);
    CHECK(kerekjarto(p, e.normalized).verdict != ClassifierVerdict::Kind::NotHomeomorphic);
    const auto c = complement(e.window, e.piece);
    CHECK(c.components >= 2);
    CHECK(c.components == e.components.size());
    for (std::size_t k = 0; k < c.components; ++k) {
      // Emitted pieces alone must reach rank 2, or the component runs on
      // past the window into the rest of the surface.
      const bool ok = c.rank_lower_bound[k] >= 2 || c.open[k];
      CHECK(ok);
    }
    for (const auto& comp : e.components) CHECK((!comp.rank.has_value() || *comp.rank >= 2));
  }
}

TEST_CASE("essential pants hypotheses") {
  for (const auto& t : {FiniteType{1, 0, 1}, FiniteType{0, 0, 3}, FiniteType{1, 0, 2}, FiniteType{2, 0, 0}}) {
    if (t.p == 0) continue;
    try {
      find_essential_pants(finite(t.g, 0, t.p));
      FAIL("expected ComplexityTooLow");
    } catch (const Error& e) {
      CHECK(e.code() == "ComplexityTooLow");
    }
  }
  try {
    find_essential_pants(finite(0, 0, 4));
    FAIL("expected NoEssentialPants");
  } catch (const Error& e) {
    CHECK(e.code() == "NoEssentialPants");
  }
}
