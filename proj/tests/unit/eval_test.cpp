/* SPDX-License-Identifier: Apache-2.0 */

#include "generators.hpp"
#include "nets.hpp"
#include "reference.hpp"

#include "wsq/errors.hpp"
#include "wsq/eval.hpp"
#include "wsq/fnn.hpp"
#include "wsq/parser.hpp"
#include "wsq/printer.hpp"
#include "wsq/stdlib.hpp"

#include <doctest.h>

using namespace wsq;

namespace {

// Directed triangles p->q->r->p (weight 6) and r->p->s->r (weight 9).
WeightedStructure two_triangles()
{
	WeightedStructure s({"p", "q", "r", "s"});
	s.declare_weight("wt", 2);
	auto w = [&](Element a, Element b, long v) { s.set_weight("wt", {a, b}, ExtRational(v)); };
	w(0, 1, 1);
	w(1, 2, 2);
	w(2, 0, 3);
	w(0, 3, 2);
	w(3, 2, 4);
	return s;
}

nets::Net demo()
{
	nets::Net n;
	std::size_t u = n.add_node("u");
	std::size_t v = n.add_node("v", mpq_class(1));
	n.add_edge(u, v, 3);
	n.inputs = {u};
	n.outputs = {v};
	return n;
}

WeightedStructure path(std::size_t edges)
{
	std::vector<std::string> names;
	for (std::size_t i = 0; i <= edges; ++i)
		names.push_back("v" + std::to_string(i));
	WeightedStructure s(names);
	s.declare_weight("wt", 2);
	for (std::size_t i = 0; i < edges; ++i)
		s.set_weight("wt", {i, i + 1}, ExtRational(1));
	return s;
}

} // namespace

TEST_CASE("minimum weight triangles")
{
	WeightedStructure s = two_triangles();
	ExprPtr f = stdlib::make_basic("min_wt_triangle");
	std::set<Tuple> expected, got;
	auto wt = [&](Element a, Element b) { return s.lookup_weight("wt", {a, b}); };
	// brute force: all triangles, then the lightest ones
	std::optional<ExtRational> best;
	for (Element a = 0; a < 4; ++a)
		for (Element b = 0; b < 4; ++b)
			for (Element c = 0; c < 4; ++c)
				if (wt(a, b).defined() && wt(b, c).defined() && wt(c, a).defined()) {
					ExtRational w = wt(a, b) + wt(b, c) + wt(c, a);
					if (!best || w < *best) {
						best = w;
						expected.clear();
					}
					if (w == *best)
						expected.insert({a, b, c});
				}
	for (Element a = 0; a < 4; ++a)
		for (Element b = 0; b < 4; ++b)
			for (Element c = 0; c < 4; ++c)
				if (evaluate(*f, s, {{"x", a}, {"y", b}, {"z", c}}).truth())
					got.insert({a, b, c});
	CHECK(*best == ExtRational(6));
	CHECK(expected.size() == 3);
	CHECK(got == expected);
	CHECK(evaluate(*stdlib::make_basic("triangles_count"), s).number() == ExtRational(6));
	CHECK(evaluate(*stdlib::make_basic("edges_count"), s).number() == ExtRational(5));
}

TEST_CASE("symbols missing from the structure")
{
	WeightedStructure s({"a"});
	s.declare_relation("R", 1);
	CHECK(evaluate(*parse("wt(x, y)"), s, {{"x", 0}, {"y", 0}}).number().is_bot());
	CHECK_FALSE(evaluate(*parse("f(x) <= 1 or R(x)"), s, {{"x", 0}}).truth());
	CHECK_THROWS_AS(evaluate(*parse("R(x, y) or x = y"), s, {{"x", 0}, {"y", 0}}), SymbolMismatchError);
	CHECK_THROWS_AS(evaluate(*parse("R(x) <= 1"), s, {{"x", 0}}), SymbolMismatchError);
}

TEST_CASE("usage errors are not values")
{
	WeightedStructure s({"a", "b"});
	s.declare_weight("f", 1);
	CHECK_THROWS_AS(evaluate(*parse("f(x)"), s), UnboundVariableError);
	CHECK_THROWS_AS(evaluate(*parse("g(x)"), s), UnboundVariableError); // g is missing, x still unbound
	CHECK_THROWS_AS(evaluate(*parse("f(x)"), s, {{"x", 9}}), UsageError);
	CHECK(evaluate(*parse("f(x)"), s, {{"x", 1}}).number().is_bot());
	CHECK(evaluate(*parse("1/0"), s).str() == "bot");
	CHECK(evaluate(*parse("bot <= bot"), s).truth());
	CHECK(evaluate(*parse("bot < -1000"), s).truth());
	CHECK(evaluate(*parse("sum {x : x != x} 1/0"), s).number() == ExtRational(0));
	CHECK(evaluate(*parse("sum {x : x = x} f(x)"), s).number().is_bot());
}

TEST_CASE("weights count and bounded evaluation on networks")
{
	nets::Net n;
	std::size_t u = n.add_node("u");
	std::size_t h = n.add_node("h", mpq_class(1));
	std::size_t o = n.add_node("o", mpq_class(-2));
	n.add_edge(u, h, 2);
	n.add_edge(h, o, 1);
	n.inputs = {u};
	n.outputs = {o};
	CHECK(evaluate(*stdlib::make_basic("weights_count"), n.structure()).number() == ExtRational(4));

	WeightedStructure clamp = nets::clamp().structure_with_input({mpq_class(1, 2)});
	Element out = clamp.element_or_throw("o");
	CHECK(evaluate(*stdlib::make_eval_at(2), clamp, {{"x", out}}).number() == ExtRational(Rational(1, 2)));
	CHECK(evaluate(*stdlib::make_eval_at(1), clamp, {{"x", out}}).number().is_bot());
}

TEST_CASE("fixed-point tables")
{
	WeightedStructure s = demo().structure_with_input({2});
	ExprPtr body = stdlib::make_eval_node_term()->kid(0);
	FixpointTable t = ifp_iterate("F", {"x"}, body, s);
	CHECK(t.at({0}) == ExtRational(2));
	CHECK(t.at({1}) == ExtRational(7));
	CHECK(t.rounds == 2);

	WeightedStructure three({"a", "b", "c"});
	FixpointTable never = ifp_iterate("F", {"x"}, parse("F(x) + 1"), three);
	CHECK(never.rounds == 0);
	for (const ExtRational &v : never.cells)
		CHECK(v.is_bot());

	FixpointTable pairs = ifp_iterate("F", {"x", "y"}, parse("if x = y then 1 else F(y, y) + 1"), three);
	CHECK(pairs.rounds == 2);
	CHECK(pairs.at({0, 1}) == ExtRational(2));

	CHECK(evaluate(*stdlib::make_squaring("x"), path(3), {{"x", 3}}).number() == ExtRational(256));
	CHECK(evaluate(*stdlib::make_squaring("x"), path(0), {{"x", 0}}).number() == ExtRational(2));
}

TEST_CASE("inner ifp binders shadow outer ones")
{
	WeightedStructure s({"a", "b"});
	s.declare_relation("R", 1);
	s.add_tuple("R", {0});
	Assignment at_b{{"x", 1}};
	CHECK(evaluate(*parse("ifp (F(x) <- if R(x) then 7 else ifp (F(y) <- sum {z : R(z)} F(z))(x))(x)"), s, at_b)
	          .number()
	          .is_bot());
	CHECK(evaluate(*parse("ifp (F(x) <- if R(x) then 7 else ifp (G(y) <- sum {z : R(z)} F(z))(x))(x)"), s, at_b)
	          .number() == ExtRational(7));
}

TEST_CASE("fixed-point runs are reported")
{
	std::vector<FixpointRun> runs;
	EvalOptions opts;
	opts.on_fixpoint = [&](const FixpointRun &r) { runs.push_back(r); };
	evaluate(*stdlib::make_squaring("x"), path(4), {{"x", 4}}, opts);
	REQUIRE(runs.size() == 1);
	CHECK(runs[0].rounds == 5);
	CHECK(runs[0].rounds <= runs[0].total_cells);
	CHECK(runs[0].defined_cells == 5);
}

TEST_CASE("resource caps")
{
	EvalOptions opts;
	opts.max_fixpoint_cells = 4;
	CHECK_THROWS_AS(evaluate(*stdlib::make_squaring("x"), path(4), {{"x", 0}}, opts), ResourceError);
	EvalOptions sums;
	sums.max_summands = 10;
	CHECK_THROWS_AS(evaluate(*parse("sum {x, y : x = y} 1"), path(4), {}, sums), ResourceError);
	CHECK(evaluate(*parse("sum {x, y : x = y} 1"), path(2), {}, sums).number() == ExtRational(3));
}

TEST_CASE("agreement with the reference evaluator")
{
	gen::Rng rng(71);
	for (int i = 0; i < 400; ++i) {
		WeightedStructure s = gen::structure(rng);
		auto env = gen::assignment(rng, s);
		ExprPtr e = gen::expression(rng);
		INFO(print(*e));
		CHECK(evaluate(*e, s, env).str() == ref::str(ref::evaluate(*e, s, env)));
	}
}

TEST_CASE("sum order does not matter")
{
	gen::Rng rng(72);
	EvalOptions reversed;
	reversed.reverse_iteration = true;
	for (int i = 0; i < 300; ++i) {
		WeightedStructure s = gen::structure(rng);
		auto env = gen::assignment(rng, s);
		ExprPtr e = gen::expression(rng);
		CHECK(evaluate(*e, s, env, reversed) == evaluate(*e, s, env));
	}
}

TEST_CASE("evaluate_text resolves a bare top-level atom")
{
	WeightedStructure s({"a"});
	s.declare_relation("R", 1);
	s.add_tuple("R", {0});
	CHECK(evaluate_text("R(x)", s, {{"x", 0}}).truth());
	CHECK(evaluate_text("count {x : x = x}", s).number() == ExtRational(1));
}
