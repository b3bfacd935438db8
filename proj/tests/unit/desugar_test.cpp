/* SPDX-License-Identifier: Apache-2.0 */

#include "generators.hpp"
#include "reference.hpp"

#include "wsq/analysis.hpp"
#include "wsq/desugar.hpp"
#include "wsq/eval.hpp"
#include "wsq/parser.hpp"
#include "wsq/printer.hpp"

#include <doctest.h>

using namespace wsq;

namespace {

bool core_only(const Expr &e)
{
	if (is_sugar(e.kind) || e.kind == Kind::Literal)
		return false;
	for (const auto &k : e.kids)
		if (!core_only(*k))
			return false;
	return true;
}

bool has_cond(const Expr &e)
{
	if (e.kind == Kind::Cond)
		return true;
	for (const auto &k : e.kids)
		if (has_cond(*k))
			return true;
	return false;
}

} // namespace

TEST_CASE("aggregate shapes")
{
	CHECK(print(*desugar(parse("avg {x : R(x)} f(x)"))) ==
	      print(*parse("(sum {x : R(x)} f(x)) / (sum {x : R(x)} 1)")));
	CHECK(print(*desugar(parse("count {x : R(x)}"))) == print(*parse("sum {x : R(x)} 1")));
	ExprPtr m = desugar(parse("max {x : R(x)} f(x)"));
	REQUIRE(m->kind == Kind::Arith);
	CHECK(m->op == ArithOp::Div);
	CHECK(m->kid(0)->kid(0)->kind == Kind::And);
	CHECK(m->kid(0)->kid(0)->kid(1)->kind == Kind::Forall);
}

TEST_CASE("literals become sums, products and quotients of 0 and 1")
{
	std::string three_quarters = print(*literal_term(ExtRational(Rational(3, 4))));
	CHECK((three_quarters == "((1 + (1 + 1)) / (1 + (1 + (1 + 1))))" ||
	       three_quarters == "(((1 + 1) + 1) / (((1 + 1) + 1) + 1))"));
	WeightedStructure s({"a"});
	gen::Rng rng(61);
	for (int i = 0; i < 300; ++i) {
		ExtRational q = gen::rational(rng, 400, 120);
		ExprPtr t = literal_term(q);
		CHECK(core_only(*t));
		CHECK(evaluate(*t, s).number() == q);
	}
	CHECK(evaluate(*literal_term(ExtRational::bot()), s).number().is_bot());
	CHECK(evaluate(*literal_term(ExtRational(-7)), s).number() == ExtRational(-7));
}

TEST_CASE("desugared expressions only use core constructors")
{
	gen::Rng rng(62);
	for (int i = 0; i < 300; ++i) {
		ExprPtr e = gen::expression(rng);
		ExprPtr d = desugar(e);
		CHECK(core_only(*d));
		CHECK(free_vars(*d) == free_vars(*e));
		ExprPtr no_cond = desugar(e, {CondElimination::Guarded});
		CHECK_FALSE(has_cond(*no_cond));
		CHECK(free_vars(*no_cond) == free_vars(*e));
	}
}

TEST_CASE("desugaring keeps values")
{
	gen::Rng rng(63);
	for (int i = 0; i < 300; ++i) {
		WeightedStructure s = gen::structure(rng);
		auto env = gen::assignment(rng, s);
		ExprPtr e = gen::expression(rng);
		Value native = evaluate(*e, s, env);
		INFO(print(*e));
		CHECK(evaluate(*desugar(e), s, env) == native);
		CHECK(evaluate(*desugar(e, {CondElimination::Guarded}), s, env) == native);
	}
}

TEST_CASE("blend elimination when both branches are defined")
{
	WeightedStructure s({"a", "b"});
	s.declare_relation("R", 1);
	s.add_tuple("R", {0});
	s.declare_weight("f", 1);
	s.set_weight("f", {0}, ExtRational(3));
	s.set_weight("f", {1}, ExtRational(5));
	ExprPtr e = parse("if R(x) then f(x) else 2 * f(x)");
	ExprPtr blend = desugar(e, {CondElimination::Blend});
	CHECK_FALSE(has_cond(*blend));
	for (Element x : {0u, 1u})
		CHECK(evaluate(*blend, s, {{"x", x}}) == evaluate(*e, s, {{"x", x}}));

	// an undefined unselected branch leaks into the blend
	ExprPtr partial = parse("if R(x) then f(x) else bot");
	CHECK(evaluate(*partial, s, {{"x", 0}}).number() == ExtRational(3));
	CHECK(evaluate(*desugar(partial, {CondElimination::Blend}), s, {{"x", 0}}).number().is_bot());
	CHECK(evaluate(*desugar(partial, {CondElimination::Guarded}), s, {{"x", 0}}).number() == ExtRational(3));
}

TEST_CASE("fragment status survives aggregate desugaring")
{
	gen::Rng rng(64);
	for (int i = 0; i < 400; ++i) {
		ExprPtr e = gen::term(rng, {.depth = 4, .ifp_rate = 0.3, .sugar = true});
		INFO(print(*e));
		CHECK(check_scalar_fragment(*desugar(e)).empty() == check_scalar_fragment(*e).empty());
	}
}
