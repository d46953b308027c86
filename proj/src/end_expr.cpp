#include "endkit/end_expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "endkit/error.hpp"

namespace endkit {

namespace {

[[noreturn]] void syntax(const std::string& message) { throw Error("ends", "SyntaxError", message); }

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  EndExpr parse() {
    auto e = expr();
    skip();
    if (pos_ != text_.size()) syntax("trailing input in end expression at offset " + std::to_string(pos_));
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string word() {
    skip();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) syntax("expected a word at offset " + std::to_string(start));
    return std::string(text_.substr(start, pos_ - start));
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) syntax(std::string("expected '") + c + "' at offset " + std::to_string(pos_));
  }
  bool marking() {
    const auto w = word();
    if (w == "p" || w == "planar") return false;
    if (w == "np" || w == "nonplanar") return true;
    syntax("expected p or np, found '" + w + "'");
  }

  EndExpr expr() {
    const auto head = word();
    expect('(');
    EndExpr e;
    if (head == "Pt") {
      e = EndExpr::point(marking());
    } else if (head == "Cantor") {
      e = EndExpr::cantor(marking());
    } else if (head == "Union") {
      std::vector<EndExpr> parts{expr()};
      while (accept(',')) parts.push_back(expr());
      e = EndExpr::union_of(std::move(parts));
    } else if (head == "Seq") {
      auto body = expr();
      expect(',');
      e = EndExpr::seq(std::move(body), marking());
    } else {
      syntax("unknown constructor '" + head + "'");
    }
    expect(')');
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<EndExpr> components(const EndExpr& e) {
  if (e.kind == EndExpr::Kind::Union) return e.parts;
  return {e};
}

EndExpr simplify_union(std::vector<EndExpr> parts) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::string> keys;
    for (const auto& p : parts) keys.push_back(to_string(p));
    std::vector<bool> drop(parts.size(), false);
    for (std::size_t i = 0; i < parts.size() && !changed; ++i) {
      if (parts[i].kind == EndExpr::Kind::Cantor) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          if (keys[j] == keys[i]) {
            drop[j] = true;
            changed = true;
          }
        }
      } else if (parts[i].kind == EndExpr::Kind::Seq) {
        std::set<std::string> absorbed;
        for (const auto& c : components(parts[i].parts.front())) absorbed.insert(to_string(c));
        for (std::size_t j = 0; j < parts.size(); ++j) {
          if (j != i && absorbed.count(keys[j])) {
            drop[j] = true;
            changed = true;
          }
        }
      }
    }
    if (changed) {
      std::vector<EndExpr> kept;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!drop[i]) kept.push_back(std::move(parts[i]));
      }
      parts = std::move(kept);
    }
  }
  std::sort(parts.begin(), parts.end(),
            [](const EndExpr& a, const EndExpr& b) { return to_string(a) < to_string(b); });
  if (parts.size() == 1) return parts.front();
  return EndExpr::union_of(std::move(parts));
}

struct Summary {
  std::uint64_t rank = 0;
  Count degree = 0;
  bool kernel = false;
  Cardinality card;
};

Cardinality card_union(const Cardinality& a, const Cardinality& b) {
  using C = Cardinality::Class;
  if (a.cls == C::Uncountable || b.cls == C::Uncountable) return {C::Uncountable, 0};
  if (a.cls == C::CountablyInfinite || b.cls == C::CountablyInfinite) return {C::CountablyInfinite, 0};
  return Cardinality::finite(a.count + b.count);
}

Summary summarize(const EndExpr& e) {
  using C = Cardinality::Class;
  switch (e.kind) {
    case EndExpr::Kind::Point:
      return {1, 1, false, Cardinality::finite(1)};
    case EndExpr::Kind::Cantor:
      return {0, 0, true, {C::Uncountable, 0}};
    case EndExpr::Kind::Union: {
      Summary s;
      std::vector<Summary> subs;
      for (const auto& p : e.parts) subs.push_back(summarize(p));
      for (const auto& t : subs) {
        s.rank = std::max(s.rank, t.rank);
        s.kernel = s.kernel || t.kernel;
        s.card = card_union(s.card, t.card);
      }
      for (const auto& t : subs) {
        if (s.rank > 0 && t.rank == s.rank) s.degree = count_add(s.degree, t.degree);
      }
      return s;
    }
    case EndExpr::Kind::Seq: {
      const auto body = summarize(e.parts.front());
      Summary s;
      s.card = body.card.cls == C::Uncountable ? Cardinality{C::Uncountable, 0}
                                                : Cardinality{C::CountablyInfinite, 0};
      s.kernel = body.kernel;
      if (body.kernel) {
        // The limit point joins the kernel; the body's top layer repeats forever.
        s.rank = body.rank;
        s.degree = body.rank > 0 ? Count{} : Count{0};
      } else {
        s.rank = body.rank + 1;
        s.degree = 1;
      }
      return s;
    }
  }
  return {};
}

}  // namespace

EndExpr EndExpr::point(bool nonplanar) { return {Kind::Point, nonplanar, {}}; }
EndExpr EndExpr::cantor(bool nonplanar) { return {Kind::Cantor, nonplanar, {}}; }
EndExpr EndExpr::union_of(std::vector<EndExpr> parts) { return {Kind::Union, false, std::move(parts)}; }
EndExpr EndExpr::seq(EndExpr body, bool limit_nonplanar) {
  return {Kind::Seq, limit_nonplanar, {std::move(body)}};
}

std::string to_string(const EndExpr& e) {
  const char* mark = e.nonplanar ? "np" : "p";
  switch (e.kind) {
    case EndExpr::Kind::Point:
      return std::string("Pt(") + mark + ")";
    case EndExpr::Kind::Cantor:
      return std::string("Cantor(") + mark + ")";
    case EndExpr::Kind::Union: {
      std::string out = "Union(";
      for (std::size_t i = 0; i < e.parts.size(); ++i) {
        if (i > 0) out += ",";
        out += to_string(e.parts[i]);
      }
      return out + ")";
    }
    case EndExpr::Kind::Seq:
      return "Seq(" + to_string(e.parts.front()) + "," + mark + ")";
  }
  return {};
}

EndExpr parse_end_expr(std::string_view text) { return ExprParser(text).parse(); }

void validate(const EndExpr& e) {
  switch (e.kind) {
    case EndExpr::Kind::Point:
    case EndExpr::Kind::Cantor:
      if (!e.parts.empty()) throw Error("ends", "MalformedExpr", "leaf with parts");
      return;
    case EndExpr::Kind::Union:
      if (e.parts.empty()) throw Error("ends", "MalformedExpr", "empty Union");
      for (const auto& p : e.parts) validate(p);
      return;
    case EndExpr::Kind::Seq:
      if (e.parts.size() != 1) throw Error("ends", "MalformedExpr", "Seq takes one body");
      validate(e.parts.front());
      if (!e.nonplanar && has_nonplanar(e.parts.front())) {
        throw Error("ends", "MalformedExpr",
                    "non-planar points cannot converge to a planar limit: " + to_string(e));
      }
      return;
  }
}

bool has_nonplanar(const EndExpr& e) {
  if (e.nonplanar) return true;
  return std::any_of(e.parts.begin(), e.parts.end(), [](const EndExpr& p) { return has_nonplanar(p); });
}

std::optional<EndExpr> nonplanar_part(const EndExpr& e) {
  switch (e.kind) {
    case EndExpr::Kind::Point:
    case EndExpr::Kind::Cantor:
      if (!e.nonplanar) return std::nullopt;
      return e;
    case EndExpr::Kind::Union: {
      std::vector<EndExpr> kept;
      for (const auto& p : e.parts) {
        if (auto q = nonplanar_part(p)) kept.push_back(std::move(*q));
      }
      if (kept.empty()) return std::nullopt;
      if (kept.size() == 1) return kept.front();
      return EndExpr::union_of(std::move(kept));
    }
    case EndExpr::Kind::Seq: {
      auto body = nonplanar_part(e.parts.front());
      if (!body) return e.nonplanar ? std::optional<EndExpr>(EndExpr::point(true)) : std::nullopt;
      return EndExpr::seq(std::move(*body), true);
    }
  }
  return std::nullopt;
}

EndExpr normalize(const EndExpr& e) {
  switch (e.kind) {
    case EndExpr::Kind::Point:
    case EndExpr::Kind::Cantor:
      return e;
    case EndExpr::Kind::Union: {
      std::vector<EndExpr> flat;
      for (const auto& p : e.parts) {
        auto n = normalize(p);
        if (n.kind == EndExpr::Kind::Union) {
          for (auto& q : n.parts) flat.push_back(std::move(q));
        } else {
          flat.push_back(std::move(n));
        }
      }
      return simplify_union(std::move(flat));
    }
    case EndExpr::Kind::Seq: {
      auto parts = components(normalize(e.parts.front()));
      std::vector<EndExpr> unique;
      std::set<std::string> seen;
      for (auto& p : parts) {
        if (seen.insert(to_string(p)).second) unique.push_back(std::move(p));
      }
      EndExpr body = unique.size() == 1 ? unique.front() : simplify_union(std::move(unique));
      if (body.kind == EndExpr::Kind::Cantor && body.nonplanar == e.nonplanar) return body;
      return EndExpr::seq(std::move(body), e.nonplanar);
    }
  }
  return e;
}

CBReport cb_of(const EndExpr& e, std::uint64_t rank_cutoff) {
  const auto s = summarize(e);
  CBReport r;
  r.rank = s.rank;
  r.degree = s.degree;
  r.perfect_kernel = s.kernel;
  r.cardinality = s.card;
  if (r.rank > rank_cutoff) {
    r.rank = rank_cutoff;
    r.rank_exceeds_cutoff = true;
    r.degree = 0;
  }
  return r;
}

}  // namespace endkit
