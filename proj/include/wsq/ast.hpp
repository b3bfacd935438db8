/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/numerics.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace wsq {

/// Node kinds of formulas and weight terms.  The core kinds are exactly the
/// FO(SUM)/IFP(SUM) constructors; the sugar kinds are accepted by the parser
/// and the evaluator and removed by desugar().
enum class Kind {
	// core formulas
	ElemEq,   // x = y
	RelAtom,  // R(x1, ..., xk)
	Leq,      // t1 <= t2
	Not,
	And,
	Or,
	Implies,
	Exists,
	Forall,
	// formula sugar
	ElemNeq,  // x != y
	Lt,
	Geq,
	Gt,
	TermEq,
	TermNeq,
	EdgeTest, // edge(x, y), i.e. wt(x, y) != bot
	// core terms
	Zero,
	One,
	WeightAtom, // F(x1, ..., xk)
	Arith,
	Cond,       // if phi then t1 else t2
	Sum,        // sum {x1..xk : phi} t
	Ifp,        // ifp (F(x1..xk) <- t)(x1'..xk')
	// term sugar
	Literal,    // any element of Q_bot other than 0 and 1
	Count,
	Avg,
	Min,
	Max,
};

bool is_formula(Kind k);
bool is_sugar(Kind k);
const char *kind_name(Kind k);

struct SourcePos {
	std::size_t line = 0;  // 0: generated, no source text
	std::size_t column = 0;

	bool known() const { return line != 0; }
	std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node; subtrees may be shared, so expressions are DAGs.
///
/// Field use by kind:
///   symbol   RelAtom, WeightAtom, Ifp (the intensional symbol)
///   vars     atom arguments; ElemEq/ElemNeq/EdgeTest operands; the bound
///            variable of Exists/Forall; the bound tuple of Sum, the
///            aggregates and Ifp
///   applied  Ifp argument tuple
///   op       Arith
///   literal  Literal
///   kids     subformulas/subterms in source order; for Sum and the
///            aggregates: guard formula, then body term (Count has no body)
struct Expr {
	Kind kind = Kind::Zero;
	std::string symbol;
	std::vector<std::string> vars;
	std::vector<std::string> applied;
	ArithOp op = ArithOp::Add;
	ExtRational literal;
	std::vector<ExprPtr> kids;
	SourcePos pos;

	bool formula() const { return is_formula(kind); }
	const ExprPtr &kid(std::size_t i) const { return kids.at(i); }
};

/// Same shape, symbols, variables and literals; positions are ignored.
bool structurally_equal(const Expr &a, const Expr &b);

/// Copy of `e` with new children.
ExprPtr with_kids(const Expr &e, std::vector<ExprPtr> kids);

/// Copy of `e` with position `p`.
ExprPtr at(ExprPtr e, SourcePos p);

namespace ast {

using Vars = std::vector<std::string>;

ExprPtr elem_eq(const std::string &x, const std::string &y);
ExprPtr elem_neq(const std::string &x, const std::string &y);
ExprPtr rel(const std::string &name, Vars args);
ExprPtr edge(const std::string &x, const std::string &y);
ExprPtr leq(ExprPtr a, ExprPtr b);
ExprPtr lt(ExprPtr a, ExprPtr b);
ExprPtr geq(ExprPtr a, ExprPtr b);
ExprPtr gt(ExprPtr a, ExprPtr b);
ExprPtr term_eq(ExprPtr a, ExprPtr b);
ExprPtr term_neq(ExprPtr a, ExprPtr b);
ExprPtr not_(ExprPtr f);
ExprPtr and_(ExprPtr a, ExprPtr b);
ExprPtr or_(ExprPtr a, ExprPtr b);
ExprPtr implies(ExprPtr a, ExprPtr b);
ExprPtr exists(const std::string &x, ExprPtr f);
ExprPtr forall(const std::string &x, ExprPtr f);
/// Conjunction of all; `true`-free so the list must be nonempty.
ExprPtr all_of(std::vector<ExprPtr> fs);

ExprPtr zero();
ExprPtr one();
/// 0 and 1 become Zero/One; everything else (including bot) a Literal.
ExprPtr lit(const ExtRational &q);
ExprPtr bot();
ExprPtr weight(const std::string &name, Vars args);
ExprPtr arith(ArithOp op, ExprPtr a, ExprPtr b);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr cond(ExprPtr f, ExprPtr a, ExprPtr b);
ExprPtr sum(Vars bound, ExprPtr guard, ExprPtr body);
ExprPtr ifp(const std::string &fn, Vars bound, ExprPtr body, Vars applied);
ExprPtr count(Vars bound, ExprPtr guard);
ExprPtr avg(Vars bound, ExprPtr guard, ExprPtr body);
ExprPtr min(Vars bound, ExprPtr guard, ExprPtr body);
ExprPtr max(Vars bound, ExprPtr guard, ExprPtr body);

} // namespace ast

} // namespace wsq
