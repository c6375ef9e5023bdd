#pragma once

#include "lalg/poly.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace lalg {

/// Parse an expression over the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' uint)*
///   atom   := uint ('/' uint)? | ident | '(' expr ')' | '-' factor
/// Whitespace is insignificant. Identifiers must be declared in `pool`;
/// when `allowed` is given they must additionally be members of it.
/// Throws Error{SyntaxError|UndeclaredVariable|NegativeExponent} with the
/// byte offset of the offending token.
Poly parse_poly(std::string_view text, const VarPool& pool,
                const std::optional<std::set<VarId>>& allowed = std::nullopt);

/// Canonical printer: graded-lex descending term order, explicit '*' and
/// '^'. Round-trip: parse_poly(print_poly(p)) == p.
std::string print_poly(const Poly& p, const VarPool& pool);

std::string print_rat(const Rat& r);

} // namespace lalg
