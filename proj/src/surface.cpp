#include "endkit/surface.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "endkit/error.hpp"
#include "endkit/path_graph.hpp"

namespace endkit {

namespace {

constexpr const char* kModule = "surface-model";

[[noreturn]] void fail(const std::string& code, const std::string& message) {
  throw Error(kModule, code, message);
}

// ---------------------------------------------------------------- lexer

struct Token {
  enum class Kind { Ident, Number, Punct, End } kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      out.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Token::Kind::Number, std::string(text.substr(start, i - start)), start});
    } else if (std::string_view("{}(),;=").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), i});
      ++i;
    } else {
      fail("SyntaxError", "unexpected character '" + std::string(1, c) + "' at offset " +
                              std::to_string(i));
    }
  }
  out.push_back({Token::Kind::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  SurfacePresentation parse() {
    keyword("surface");
    const std::string name = ident("surface name");
    if (peek().kind == Token::Kind::Ident && peek().text == "finite") {
      ++pos_;
      keyword("S");
      punct("(");
      FiniteType t;
      t.g = field("g");
      punct(",");
      t.b = field("b");
      punct(",");
      t.p = field("p");
      punct(")");
      end();
      return SurfacePresentation::finite(name, t);
    }
    punct("{");
    std::vector<RuleSpec> specs;
    specs.push_back(rule());
    while (peek().text == ";") {
      ++pos_;
      if (peek().text == "}") break;
      specs.push_back(rule());
    }
    punct("}");
    end();
    std::string root = specs.front().name;
    for (const auto& s : specs) {
      if (s.name == "root") root = "root";
    }
    return SurfacePresentation::from_specs(name, specs, root);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const auto& t = peek();
    fail("SyntaxError", "expected " + wanted + " at offset " + std::to_string(t.offset) +
                            ", found '" + (t.kind == Token::Kind::End ? "<end>" : t.text) + "'");
  }

  void keyword(std::string_view word) {
    if (peek().kind != Token::Kind::Ident || peek().text != word) unexpected(std::string(word));
    ++pos_;
  }
  void punct(std::string_view p) {
    if (peek().kind != Token::Kind::Punct || peek().text != p) unexpected("'" + std::string(p) + "'");
    ++pos_;
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) unexpected(what);
    return tokens_[pos_++].text;
  }
  std::uint64_t number() {
    if (peek().kind != Token::Kind::Number) unexpected("natural number");
    const auto& text = tokens_[pos_++].text;
    if (text.size() > 18) fail("SyntaxError", "number too large: " + text);
    return std::stoull(text);
  }
  std::uint64_t field(std::string_view key) {
    keyword(key);
    punct("=");
    return number();
  }
  void end() {
    if (peek().kind != Token::Kind::End) unexpected("end of input");
  }

  RuleSpec rule() {
    RuleSpec spec;
    spec.name = ident("rule name");
    punct("=");
    const std::string kind = ident("block kind A, P or H");
    if (kind == "A") {
      spec.kind = BlockKind::Annulus;
    } else if (kind == "P") {
      spec.kind = BlockKind::Pants;
    } else if (kind == "H") {
      spec.kind = BlockKind::Handle;
    } else {
      --pos_;
      unexpected("block kind A, P or H");
    }
    punct("(");
    spec.children.push_back(ident("child rule name"));
    while (peek().text == ",") {
      ++pos_;
      spec.children.push_back(ident("child rule name"));
    }
    punct(")");
    if (static_cast<int>(spec.children.size()) != arity(spec.kind)) {
      fail("SyntaxError", "rule '" + spec.name + "': block " + kind + " takes " +
                              std::to_string(arity(spec.kind)) + " children");
    }
    return spec;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string fresh_name(const std::set<std::string>& taken, const std::string& base) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    auto candidate = base + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace

std::vector<RuleSpec> prune_specs(const std::vector<RuleSpec>& specs, const std::string& root) {
  std::map<std::string, const RuleSpec*> by_name;
  for (const auto& s : specs) by_name[s.name] = &s;
  std::set<std::string> seen{root};
  std::vector<std::string> todo{root};
  while (!todo.empty()) {
    const auto name = todo.back();
    todo.pop_back();
    for (const auto& c : by_name.at(name)->children) {
      if (seen.insert(c).second) todo.push_back(c);
    }
  }
  std::vector<RuleSpec> out;
  for (const auto& s : specs) {
    if (seen.count(s.name)) out.push_back(s);
  }
  return out;
}

int arity(BlockKind kind) noexcept { return kind == BlockKind::Pants ? 2 : 1; }

char block_letter(BlockKind kind) noexcept {
  switch (kind) {
    case BlockKind::Annulus:
      return 'A';
    case BlockKind::Pants:
      return 'P';
    case BlockKind::Handle:
      return 'H';
  }
  return '?';
}

Genus operator+(Genus a, Genus b) {
  if (a.is_infinite() || b.is_infinite()) return Genus::infinite();
  return Genus(a.value() + b.value());
}

std::string Genus::to_string() const { return is_infinite() ? "inf" : std::to_string(*value_); }

SurfacePresentation SurfacePresentation::from_specs(std::string name,
                                                    const std::vector<RuleSpec>& specs,
                                                    std::string_view root_name) {
  if (specs.empty()) fail("SyntaxError", "presentation has no rules");
  SurfacePresentation p;
  p.name_ = std::move(name);
  std::map<std::string, int, std::less<>> index;
  for (const auto& s : specs) {
    if (!index.emplace(s.name, static_cast<int>(index.size())).second) {
      fail("SyntaxError", "rule '" + s.name + "' defined twice");
    }
    if (static_cast<int>(s.children.size()) != arity(s.kind)) {
      fail("SyntaxError", "rule '" + s.name + "' has the wrong number of children");
    }
  }
  const auto root = index.find(root_name);
  if (root == index.end()) fail("DanglingRule", "root '" + std::string(root_name) + "' undefined");
  p.root_ = root->second;
  for (const auto& s : specs) {
    Rule r{s.name, s.kind, {}};
    for (const auto& c : s.children) {
      const auto it = index.find(c);
      if (it == index.end()) {
        fail("DanglingRule", "rule '" + s.name + "' refers to undefined '" + c + "'");
      }
      r.children.push_back(it->second);
    }
    p.rules_.push_back(std::move(r));
  }
  PathGraph g;
  g.root = p.root_;
  for (const auto& r : p.rules_) g.succ.push_back(r.children);
  const auto seen = reachable(g, g.root);
  for (std::size_t i = 0; i < p.rules_.size(); ++i) {
    if (!seen[i]) fail("UnreachableRule", "rule '" + p.rules_[i].name + "' is unreachable from the root");
  }
  return p;
}

SurfacePresentation SurfacePresentation::finite(std::string name, FiniteType type) {
  if (type.b + type.p == 0) {
    fail("CompactSurface", "finite type with b + p = 0 is compact");
  }
  SurfacePresentation p;
  p.name_ = std::move(name);
  p.finite_ = type;
  p.expanded_.push_back(standard_presentation(type.g, type.b + type.p, p.name_));
  return p;
}

std::optional<int> SurfacePresentation::find(std::string_view rule_name) const {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].name == rule_name) return static_cast<int>(i);
  }
  return std::nullopt;
}

const SurfacePresentation& SurfacePresentation::regular() const {
  return is_regular() ? *this : expanded_.front();
}

std::vector<RuleSpec> SurfacePresentation::specs() const {
  std::vector<RuleSpec> out;
  for (const auto& r : rules_) {
    RuleSpec s{r.name, r.kind, {}};
    for (int c : r.children) s.children.push_back(rules_[c].name);
    out.push_back(std::move(s));
  }
  return out;
}

SurfacePresentation parse_presentation(std::string_view text) { return Parser(text).parse(); }

std::string to_text(const SurfacePresentation& p) {
  if (!p.is_regular()) {
    const auto& t = p.finite_type();
    return "surface " + p.name() + " finite S(g=" + std::to_string(t.g) +
           ", b=" + std::to_string(t.b) + ", p=" + std::to_string(t.p) + ")";
  }
  // Breadth-first from the root; a non-root rule called "root" is renamed so
  // the text parses back to the same root.
  std::vector<int> order{p.root()};
  std::vector<bool> seen(p.size(), false);
  seen[p.root()] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int c : p.rule(order[i]).children) {
      if (!seen[c]) {
        seen[c] = true;
        order.push_back(c);
      }
    }
  }
  std::set<std::string> taken;
  for (const auto& r : p.rules()) taken.insert(r.name);
  std::vector<std::string> names;
  for (const auto& r : p.rules()) names.push_back(r.name);
  for (int i = 0; i < p.size(); ++i) {
    if (i != p.root() && names[i] == "root") {
      names[i] = fresh_name(taken, "root_");
      taken.insert(names[i]);
    }
  }
  std::string out = "surface " + p.name() + " { ";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& r = p.rule(order[i]);
    if (i > 0) out += "; ";
    out += names[order[i]] + " = " + block_letter(r.kind) + "(";
    for (std::size_t k = 0; k < r.children.size(); ++k) {
      if (k > 0) out += ", ";
      out += names[r.children[k]];
    }
    out += ")";
  }
  return out + " }";
}

SurfacePresentation standard_presentation(std::uint64_t g, std::uint64_t ends, std::string name) {
  if (ends == 0) fail("CompactSurface", "a non-compact surface needs at least one end");
  std::vector<BlockKind> blocks(ends - 1, BlockKind::Pants);
  blocks.insert(blocks.end(), g, BlockKind::Handle);
  std::vector<RuleSpec> specs;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string next = i + 1 < blocks.size() ? "s" + std::to_string(i + 1) : "t";
    RuleSpec s{"s" + std::to_string(i), blocks[i], {next}};
    if (blocks[i] == BlockKind::Pants) s.children.push_back("t");
    specs.push_back(std::move(s));
  }
  specs.push_back({"t", BlockKind::Annulus, {"t"}});
  return SurfacePresentation::from_specs(std::move(name), specs, specs.front().name);
}

std::vector<std::optional<std::uint64_t>> occurrence_counts(const SurfacePresentation& p) {
  const auto& reg = p.regular();
  PathGraph g;
  g.root = reg.root();
  for (const auto& r : reg.rules()) g.succ.push_back(r.children);
  return path_counts(g, g.root, strongly_connected(g));
}

Genus genus(const SurfacePresentation& p) {
  if (!p.is_regular()) return Genus(p.finite_type().g);
  const auto counts = occurrence_counts(p);
  Count total = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (p.rule(i).kind == BlockKind::Handle) total = count_add(total, counts[i]);
  }
  return total ? Genus(*total) : Genus::infinite();
}

bool is_finite_type(const SurfacePresentation& p) {
  if (!p.is_regular()) return true;
  const auto counts = occurrence_counts(p);
  for (int i = 0; i < p.size(); ++i) {
    if (p.rule(i).kind != BlockKind::Annulus && !counts[i]) return false;
  }
  return true;
}

FiniteType canonical_finite_type(const SurfacePresentation& p) {
  if (!p.is_regular()) {
    const auto& t = p.finite_type();
    return {t.g, 0, t.b + t.p};
  }
  if (!is_finite_type(p)) fail("NotFiniteType", "presentation '" + p.name() + "' is of infinite type");
  PathGraph g;
  g.root = p.root();
  for (const auto& r : p.rules()) g.succ.push_back(r.children);
  const auto ends = cardinality(g);
  return {genus(p).value(), 0, ends.count};
}

SurfacePresentation splice_annulus(const SurfacePresentation& p, int parent, int child_slot) {
  const auto& reg = p.regular();
  auto specs = reg.specs();
  std::set<std::string> taken;
  for (const auto& s : specs) taken.insert(s.name);
  const auto name = fresh_name(taken, "spliced");
  auto& slot = specs.at(static_cast<std::size_t>(parent)).children.at(static_cast<std::size_t>(child_slot));
  specs.push_back({name, BlockKind::Annulus, {slot}});
  slot = name;
  return SurfacePresentation::from_specs(reg.name(), specs, reg.rule(reg.root()).name);
}

SurfacePresentation unroll(const SurfacePresentation& p, int levels) {
  const auto& reg = p.regular();
  auto specs = reg.specs();
  if (levels <= 0) return reg;
  std::set<std::string> taken;
  for (const auto& s : specs) taken.insert(s.name);
  std::string prefix = "n";
  auto clashes = [&](const std::string& pre) {
    return std::any_of(taken.begin(), taken.end(), [&](const std::string& t) {
      return t == pre || t.rfind(pre + "_", 0) == 0;
    });
  };
  while (clashes(prefix)) prefix += "n";

  struct Node {
    int state;
    std::string name;
    int depth;
  };
  std::deque<Node> todo{{reg.root(), prefix, 0}};
  std::vector<RuleSpec> copies;
  while (!todo.empty()) {
    auto node = todo.front();
    todo.pop_front();
    const auto& r = reg.rule(node.state);
    RuleSpec s{node.name, r.kind, {}};
    for (std::size_t k = 0; k < r.children.size(); ++k) {
      const int c = r.children[k];
      if (node.depth + 1 < levels) {
        auto child = node.name + "_" + std::to_string(k);
        s.children.push_back(child);
        todo.push_back({c, child, node.depth + 1});
      } else {
        s.children.push_back(reg.rule(c).name);
      }
    }
    copies.push_back(std::move(s));
  }
  copies.insert(copies.end(), specs.begin(), specs.end());
  return SurfacePresentation::from_specs(reg.name(), prune_specs(copies, prefix), prefix);
}

}  // namespace endkit
