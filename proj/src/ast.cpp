/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/ast.hpp"

#include "wsq/errors.hpp"

namespace wsq {

bool is_formula(Kind k)
{
	switch (k) {
	case Kind::ElemEq: case Kind::RelAtom: case Kind::Leq: case Kind::Not:
	case Kind::And: case Kind::Or: case Kind::Implies: case Kind::Exists:
	case Kind::Forall: case Kind::ElemNeq: case Kind::Lt: case Kind::Geq:
	case Kind::Gt: case Kind::TermEq: case Kind::TermNeq: case Kind::EdgeTest:
		return true;
	default:
		return false;
	}
}

bool is_sugar(Kind k)
{
	switch (k) {
	case Kind::ElemNeq: case Kind::Lt: case Kind::Geq: case Kind::Gt:
	case Kind::TermEq: case Kind::TermNeq: case Kind::EdgeTest:
	case Kind::Literal: case Kind::Count: case Kind::Avg: case Kind::Min: case Kind::Max:
		return true;
	default:
		return false;
	}
}

const char *kind_name(Kind k)
{
	switch (k) {
	case Kind::ElemEq: return "ElemEq";
	case Kind::RelAtom: return "RelAtom";
	case Kind::Leq: return "Leq";
	case Kind::Not: return "Not";
	case Kind::And: return "And";
	case Kind::Or: return "Or";
	case Kind::Implies: return "Implies";
	case Kind::Exists: return "Exists";
	case Kind::Forall: return "Forall";
	case Kind::ElemNeq: return "ElemNeq";
	case Kind::Lt: return "Lt";
	case Kind::Geq: return "Geq";
	case Kind::Gt: return "Gt";
	case Kind::TermEq: return "TermEq";
	case Kind::TermNeq: return "TermNeq";
	case Kind::EdgeTest: return "EdgeTest";
	case Kind::Zero: return "Zero";
	case Kind::One: return "One";
	case Kind::WeightAtom: return "WeightAtom";
	case Kind::Arith: return "Arith";
	case Kind::Cond: return "Cond";
	case Kind::Sum: return "Sum";
	case Kind::Ifp: return "Ifp";
	case Kind::Literal: return "Literal";
	case Kind::Count: return "Count";
	case Kind::Avg: return "Avg";
	case Kind::Min: return "Min";
	case Kind::Max: return "Max";
	}
	return "?";
}

bool structurally_equal(const Expr &a, const Expr &b)
{
	if (&a == &b)
		return true;
	if (a.kind != b.kind || a.symbol != b.symbol || a.vars != b.vars || a.applied != b.applied ||
	    a.kids.size() != b.kids.size())
		return false;
	if (a.kind == Kind::Arith && a.op != b.op)
		return false;
	if (a.kind == Kind::Literal && a.literal != b.literal)
		return false;
	for (std::size_t i = 0; i < a.kids.size(); ++i)
		if (!structurally_equal(*a.kids[i], *b.kids[i]))
			return false;
	return true;
}

ExprPtr with_kids(const Expr &e, std::vector<ExprPtr> kids)
{
	auto out = std::make_shared<Expr>(e);
	out->kids = std::move(kids);
	return out;
}

ExprPtr at(ExprPtr e, SourcePos p)
{
	auto out = std::make_shared<Expr>(*e);
	out->pos = p;
	return out;
}

namespace ast {

namespace {

ExprPtr node(Kind k, std::vector<ExprPtr> kids = {}, Vars vars = {})
{
	auto e = std::make_shared<Expr>();
	e->kind = k;
	e->kids = std::move(kids);
	e->vars = std::move(vars);
	return e;
}

ExprPtr binder(Kind k, Vars bound, std::vector<ExprPtr> kids)
{
	if (bound.empty())
		throw UsageError(std::string(kind_name(k)) + " needs at least one bound variable");
	return node(k, std::move(kids), std::move(bound));
}

} // namespace

ExprPtr elem_eq(const std::string &x, const std::string &y) { return node(Kind::ElemEq, {}, {x, y}); }
ExprPtr elem_neq(const std::string &x, const std::string &y) { return node(Kind::ElemNeq, {}, {x, y}); }
ExprPtr edge(const std::string &x, const std::string &y) { return node(Kind::EdgeTest, {}, {x, y}); }

ExprPtr rel(const std::string &name, Vars args)
{
	auto e = std::make_shared<Expr>();
	e->kind = Kind::RelAtom;
	e->symbol = name;
	e->vars = std::move(args);
	return e;
}

ExprPtr leq(ExprPtr a, ExprPtr b) { return node(Kind::Leq, {std::move(a), std::move(b)}); }
ExprPtr lt(ExprPtr a, ExprPtr b) { return node(Kind::Lt, {std::move(a), std::move(b)}); }
ExprPtr geq(ExprPtr a, ExprPtr b) { return node(Kind::Geq, {std::move(a), std::move(b)}); }
ExprPtr gt(ExprPtr a, ExprPtr b) { return node(Kind::Gt, {std::move(a), std::move(b)}); }
ExprPtr term_eq(ExprPtr a, ExprPtr b) { return node(Kind::TermEq, {std::move(a), std::move(b)}); }
ExprPtr term_neq(ExprPtr a, ExprPtr b) { return node(Kind::TermNeq, {std::move(a), std::move(b)}); }
ExprPtr not_(ExprPtr f) { return node(Kind::Not, {std::move(f)}); }
ExprPtr and_(ExprPtr a, ExprPtr b) { return node(Kind::And, {std::move(a), std::move(b)}); }
ExprPtr or_(ExprPtr a, ExprPtr b) { return node(Kind::Or, {std::move(a), std::move(b)}); }
ExprPtr implies(ExprPtr a, ExprPtr b) { return node(Kind::Implies, {std::move(a), std::move(b)}); }
ExprPtr exists(const std::string &x, ExprPtr f) { return node(Kind::Exists, {std::move(f)}, {x}); }
ExprPtr forall(const std::string &x, ExprPtr f) { return node(Kind::Forall, {std::move(f)}, {x}); }

ExprPtr all_of(std::vector<ExprPtr> fs)
{
	if (fs.empty())
		throw UsageError("all_of needs at least one formula");
	ExprPtr acc = fs.front();
	for (std::size_t i = 1; i < fs.size(); ++i)
		acc = and_(acc, fs[i]);
	return acc;
}

ExprPtr zero() { return node(Kind::Zero); }
ExprPtr one() { return node(Kind::One); }

ExprPtr lit(const ExtRational &q)
{
	if (q.defined() && q.value() == 0)
		return zero();
	if (q.defined() && q.value() == 1)
		return one();
	auto e = std::make_shared<Expr>();
	e->kind = Kind::Literal;
	e->literal = q;
	return e;
}

ExprPtr bot() { return lit(ExtRational::bot()); }

ExprPtr weight(const std::string &name, Vars args)
{
	auto e = std::make_shared<Expr>();
	e->kind = Kind::WeightAtom;
	e->symbol = name;
	e->vars = std::move(args);
	return e;
}

ExprPtr arith(ArithOp op, ExprPtr a, ExprPtr b)
{
	auto e = std::make_shared<Expr>();
	e->kind = Kind::Arith;
	e->op = op;
	e->kids = {std::move(a), std::move(b)};
	return e;
}

ExprPtr add(ExprPtr a, ExprPtr b) { return arith(ArithOp::Add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return arith(ArithOp::Sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return arith(ArithOp::Mul, std::move(a), std::move(b)); }
ExprPtr div(ExprPtr a, ExprPtr b) { return arith(ArithOp::Div, std::move(a), std::move(b)); }

ExprPtr cond(ExprPtr f, ExprPtr a, ExprPtr b)
{
	return node(Kind::Cond, {std::move(f), std::move(a), std::move(b)});
}

ExprPtr sum(Vars bound, ExprPtr guard, ExprPtr body)
{
	return binder(Kind::Sum, std::move(bound), {std::move(guard), std::move(body)});
}

ExprPtr ifp(const std::string &fn, Vars bound, ExprPtr body, Vars applied)
{
	if (bound.size() != applied.size())
		throw UsageError("ifp: bound and applied tuples differ in length");
	auto e = std::make_shared<Expr>();
	e->kind = Kind::Ifp;
	e->symbol = fn;
	e->vars = std::move(bound);
	e->applied = std::move(applied);
	e->kids = {std::move(body)};
	return e;
}

ExprPtr count(Vars bound, ExprPtr guard)
{
	return binder(Kind::Count, std::move(bound), {std::move(guard)});
}

ExprPtr avg(Vars bound, ExprPtr guard, ExprPtr body)
{
	return binder(Kind::Avg, std::move(bound), {std::move(guard), std::move(body)});
}

ExprPtr min(Vars bound, ExprPtr guard, ExprPtr body)
{
	return binder(Kind::Min, std::move(bound), {std::move(guard), std::move(body)});
}

ExprPtr max(Vars bound, ExprPtr guard, ExprPtr body)
{
	return binder(Kind::Max, std::move(bound), {std::move(guard), std::move(body)});
}

} // namespace ast

} // namespace wsq
