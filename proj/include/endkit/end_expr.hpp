#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "endkit/path_graph.hpp"

namespace endkit {

/// Expression denoting a compact totally-disconnected space with a marked
/// closed subset (the non-planar ends):
///   Pt(x)        one point
///   Cantor(x)    a Cantor set, every point marked alike
///   Union(e...)  disjoint union
///   Seq(e, x)    countably many copies of e converging to one limit point
/// where x is `p` (planar) or `np` (non-planar).
struct EndExpr {
  enum class Kind { Point, Cantor, Union, Seq };

  Kind kind = Kind::Point;
  bool nonplanar = false;  // Point, Cantor: the points; Seq: the limit point
  std::vector<EndExpr> parts;

  static EndExpr point(bool nonplanar);
  static EndExpr cantor(bool nonplanar);
  static EndExpr union_of(std::vector<EndExpr> parts);
  static EndExpr seq(EndExpr body, bool limit_nonplanar);
};

std::string to_string(const EndExpr& e);

/// Throws Error(ends, SyntaxError) on malformed text.
EndExpr parse_end_expr(std::string_view text);

/// Throws Error(ends, MalformedExpr) when the expression does not denote a
/// closed marked subset (empty union, marked points converging to an
/// unmarked limit).
void validate(const EndExpr& e);

bool has_nonplanar(const EndExpr& e);

/// The marked subspace as an expression, or nullopt when empty.
std::optional<EndExpr> nonplanar_part(const EndExpr& e);

/// Normal form: unions flattened, sorted, with duplicate Cantor sets merged
/// and parts already repeated inside a sibling Seq absorbed; Seq bodies keep
/// one copy of each part; Seq(Cantor(x), x) becomes Cantor(x).
/// Equal normal forms denote homeomorphic pairs.
EndExpr normalize(const EndExpr& e);

/// Cantor-Bendixson summary of the denoted space, computed on the algebra.
CBReport cb_of(const EndExpr& e, std::uint64_t rank_cutoff = 16);

}  // namespace endkit
