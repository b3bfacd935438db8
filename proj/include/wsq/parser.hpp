/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/ast.hpp"

#include <string_view>

namespace wsq {

/// Parses a formula or a term.
///
/// Grammar, loosest binding first:
///
///   formula  := formula "implies" formula          (right associative)
///             | formula "or" formula | formula "and" formula
///             | "not" formula | ("exists" | "forall") var formula
///             | term cmp term | var ("=" | "!=") var
///             | ident "(" vars ")" | "(" formula ")"
///   cmp      := "<=" | "<" | ">=" | ">" | "=" | "!="
///   term     := term ("+" | "-") term | term ("*" | "/") term | "-" term
///             | "sum" "{" vars ":" formula "}" term
///             | ("avg" | "min" | "max") "{" vars ":" formula "}" term
///             | "count" "{" vars ":" formula "}"
///             | "if" formula "then" term "else" term
///             | "ifp" "(" ident "(" vars ")" "<-" term ")" "(" vars ")"
///             | ident "(" vars ")" | number | "bot" | "(" term ")"
///   number   := digits | digits "." digits | digits "/" digits
///
/// Quantifier bodies extend as far right as possible.  The body of sum and
/// of the aggregates is a product-level term, so `sum {y : phi} a * b + c`
/// adds c once.  Nullary symbols are written with parentheses (`lo()`);
/// a bare identifier is always a variable.  `edge(x, y)` in formula position
/// is the test wt(x, y) != bot.  Text after `#` up to the end of the line is
/// ignored.
///
/// A bare application at the top level (`R(x)`) is returned as a
/// WeightAtom; resolve_top_level() turns it into a relation atom once the
/// target vocabulary is known.
///
/// Throws ParseError carrying line and column.
ExprPtr parse(std::string_view text);

/// Parses and requires a formula.
ExprPtr parse_formula(std::string_view text);

/// Parses and requires a term.
ExprPtr parse_term(std::string_view text);

} // namespace wsq
