/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/stdlib.hpp"

#include "wsq/analysis.hpp"
#include "wsq/errors.hpp"
#include "wsq/fnn.hpp"

#include <algorithm>
#include <charconv>

namespace wsq::stdlib {

using namespace ast;

namespace {

const std::string wt = fnn_symbols::weight;
const std::string bias = fnn_symbols::bias;
const std::string le_in = fnn_symbols::input_order;
const std::string le_out = fnn_symbols::output_order;
const std::string inp = fnn_symbols::input;

ExprPtr triangle(const std::string &x, const std::string &y, const std::string &z)
{
	return all_of({edge(x, y), edge(y, z), edge(z, x)});
}

ExprPtr triangle_weight(const std::string &x, const std::string &y, const std::string &z)
{
	return add(add(weight(wt, {x, y}), weight(wt, {y, z})), weight(wt, {z, x}));
}

ExprPtr is_input(const std::string &x) { return rel(le_in, {x, x}); }
ExprPtr is_output(const std::string &x) { return rel(le_out, {x, x}); }

// if t >= 0 then t else 0 * t: relu that stays bot on bot.
ExprPtr strict_relu(const ExprPtr &t) { return cond(geq(t, zero()), t, mul(zero(), t)); }

ExprPtr relu(const ExprPtr &t) { return cond(geq(t, zero()), t, zero()); }

// if inp(x) != bot then inp(x) else bias(x) + sum {y : edge(y, x)} wt(y, x) * relu(value(y))
ExprPtr node_step(const std::string &x, const std::string &y, const EdgeFormula &edge_f, const ExprPtr &value_y)
{
	ExprPtr in = weight(inp, {x});
	ExprPtr incoming = sum({y}, edge_f(y, x), mul(weight(wt, {y, x}), strict_relu(value_y)));
	return cond(term_neq(in, bot()), in, add(weight(bias, {x}), incoming));
}

} // namespace

ExprPtr make_basic(const std::string &name)
{
	if (name == "edges_count")
		return sum({"x", "y"}, edge("x", "y"), one());
	if (name == "triangles_count")
		return sum({"x", "y", "z"}, triangle("x", "y", "z"), one());
	if (name == "min_wt_triangle") {
		ExprPtr lighter = implies(triangle("x'", "y'", "z'"),
		                          leq(triangle_weight("x", "y", "z"), triangle_weight("x'", "y'", "z'")));
		return and_(triangle("x", "y", "z"), forall("x'", forall("y'", forall("z'", lighter))));
	}
	if (name == "weights_count")
		return add(sum({"x", "y"}, edge("x", "y"), one()),
		           sum({"x"}, term_neq(weight(bias, {"x"}), bot()), one()));
	throw UsageError("unknown basic query: " + name);
}

ExprPtr make_eval_at(std::size_t d, const std::string &x, const EdgeFormula &edge_f)
{
	EdgeFormula edge_of = edge_f ? edge_f : [](const std::string &a, const std::string &b) { return edge(a, b); };
	auto level_var = [](std::size_t k) { return "y_" + std::to_string(k); };
	ExprPtr term = weight(inp, {level_var(0)});
	for (std::size_t k = 1; k <= d; ++k)
		term = node_step(level_var(k), level_var(k - 1), edge_of, term);
	return rename_free(term, {{level_var(d), x}});
}

ExprPtr make_eval(std::size_t d, std::optional<std::size_t> i)
{
	if (!i)
		return make_eval_at(d, "x");
	if (*i == 0)
		throw UsageError("output index starts at 1");
	ExprPtr at_x = make_eval_at(d, "x");
	ExprPtr at_z = make_eval_at(d, "z");
	ExprPtr position = count({"y"}, rel(le_out, {"y", "x"}));
	ExprPtr chosen = avg({"x"}, and_(is_output("x"), term_eq(position, lit(ExtRational(static_cast<long>(*i))))), at_x);
	return add(chosen, mul(zero(), sum({"z"}, is_output("z"), at_z)));
}

ExprPtr make_eval_node_term(const std::string &x)
{
	ExprPtr body = node_step("x", "y", [](const std::string &a, const std::string &b) { return edge(a, b); },
	                         weight("F", {"y"}));
	return ifp("F", {"x"}, body, {x});
}

ExprPtr make_eval_node()
{
	return avg({"x"}, is_output("x"), make_eval_node_term("x"));
}

ExprPtr make_useless(std::size_t d)
{
	EdgeFormula pruned = [](const std::string &a, const std::string &b) {
		return and_(edge(a, b), not_(and_(elem_eq(a, "x0"), elem_eq(b, "y0"))));
	};
	ExprPtr same = implies(is_output("x"), term_eq(make_eval_at(d, "x"), make_eval_at(d, "x", pruned)));
	return and_(edge("x0", "y0"), forall("x", same));
}

namespace {

// Network function of a depth-2 single-input net at input value t: relu is
// applied to the input, hidden values follow bias + weighted relu of the
// input, the output adds weighted relu of its in-neighbours.
ExprPtr network_at(const ExprPtr &t)
{
	ExprPtr hidden = add(weight(bias, {"h"}), sum({"u"}, edge("u", "h"), mul(weight(wt, {"u", "h"}), relu(t))));
	ExprPtr value_h = cond(is_input("h"), t, hidden);
	ExprPtr out = add(weight(bias, {"o"}), sum({"h"}, edge("h", "o"), mul(weight(wt, {"h", "o"}), relu(value_h))));
	return sum({"o"}, is_output("o"), out);
}

struct Family {
	ExprPtr guard; // formula in the index variable
	ExprPtr value; // term in the index variable
};

std::vector<Family> candidate_families(const std::string &z)
{
	ExprPtr lo = weight("lo", {}), hi = weight("hi", {});
	ExprPtr kink = div(sub(zero(), weight(bias, {z})), sum({"u"}, is_input("u"), weight(wt, {"u", z})));
	ExprPtr hidden = and_(not_(is_input(z)), not_(is_output(z)));
	return {
	    {is_input(z), lo},
	    {is_input(z), hi},
	    {all_of({is_input(z), lt(lo, zero()), lt(zero(), hi)}), zero()},
	    {all_of({hidden, lt(zero(), kink), lt(lo, kink), lt(kink, hi)}), kink},
	};
}

} // namespace

ExprPtr make_integrate_2_1()
{
	const std::vector<Family> left = candidate_families("z1");
	const std::vector<Family> right = candidate_families("z2");
	const std::vector<Family> between = candidate_families("r");
	const std::vector<Family> equal = candidate_families("m");

	auto strictly_between = [&](const ExprPtr &a, const ExprPtr &b) {
		std::vector<ExprPtr> any;
		for (const Family &f : between)
			any.push_back(exists("r", and_(f.guard, and_(lt(a, f.value), lt(f.value, b)))));
		ExprPtr acc = any.front();
		for (std::size_t i = 1; i < any.size(); ++i)
			acc = or_(acc, any[i]);
		return acc;
	};
	auto multiplicity = [&](const ExprPtr &v) {
		ExprPtr acc;
		for (const Family &f : equal) {
			ExprPtr c = count({"m"}, and_(f.guard, term_eq(f.value, v)));
			acc = acc ? add(acc, c) : c;
		}
		return acc;
	};

	ExprPtr total;
	for (const Family &a : left) {
		ExprPtr fa = network_at(a.value);
		ExprPtr ma = multiplicity(a.value);
		for (const Family &b : right) {
			ExprPtr adjacent = and_(lt(a.value, b.value), not_(strictly_between(a.value, b.value)));
			ExprPtr area = div(mul(sub(b.value, a.value), add(fa, network_at(b.value))), lit(ExtRational(2)));
			ExprPtr piece = div(area, mul(ma, multiplicity(b.value)));
			ExprPtr s = sum({"z1", "z2"}, all_of({a.guard, b.guard, adjacent}), piece);
			total = total ? add(total, s) : s;
		}
	}
	return total;
}

ExprPtr make_squaring(const std::string &x)
{
	ExprPtr incoming = sum({"y"}, edge("y", "x"), weight("F", {"y"}));
	ExprPtr body = cond(exists("y", edge("y", "x")), mul(incoming, incoming), lit(ExtRational(2)));
	return ifp("F", {"x"}, body, {x});
}

const std::vector<Builtin> &builtins()
{
	using P = std::map<std::string, std::size_t>;
	static const std::vector<Builtin> all = {
	    {"edges_count", {}, {}, "number of edges (pairs with wt defined)",
	     [](const P &) { return make_basic("edges_count"); }},
	    {"triangles_count", {}, {}, "number of ordered triangles", [](const P &) { return make_basic("triangles_count"); }},
	    {"min_wt_triangle", {}, {}, "formula in x, y, z: a triangle of minimum weight",
	     [](const P &) { return make_basic("min_wt_triangle"); }},
	    {"weights_count", {}, {}, "number of edges plus defined biases",
	     [](const P &) { return make_basic("weights_count"); }},
	    {"eval", {"d", "i"}, {"d"}, "FNN evaluation unrolled to depth d; closed at output i when given",
	     [](const P &p) {
		     auto it = p.find("i");
		     return make_eval(p.at("d"), it == p.end() ? std::nullopt : std::optional<std::size_t>(it->second));
	     }},
	    {"eval_node", {}, {}, "FNN output by fixed-point node evaluation (closed)",
	     [](const P &) { return make_eval_node(); }},
	    {"eval_node_term", {}, {}, "fixed-point node evaluation at node x",
	     [](const P &) { return make_eval_node_term(); }},
	    {"useless", {"d"}, {"d"}, "formula in x0, y0: deleting the edge leaves every output unchanged",
	     [](const P &p) { return make_useless(p.at("d")); }},
	    {"integrate_2_1", {}, {}, "integral over [lo(), hi()] of a depth-2 single-input single-output net",
	     [](const P &) { return make_integrate_2_1(); }},
	    {"squaring", {}, {}, "repeated squaring along paths, at node x", [](const P &) { return make_squaring(); }},
	};
	return all;
}

ExprPtr make_builtin(const std::string &name, const std::map<std::string, std::string> &params)
{
	const auto &all = builtins();
	auto b = std::find_if(all.begin(), all.end(), [&](const Builtin &x) { return x.name == name; });
	if (b == all.end())
		throw UsageError("unknown builtin: " + name);
	std::map<std::string, std::size_t> values;
	for (const auto &[k, v] : params) {
		if (std::find(b->params.begin(), b->params.end(), k) == b->params.end())
			throw UsageError("builtin " + name + " takes no parameter " + k);
		std::size_t n = 0;
		auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
		if (ec != std::errc() || ptr != v.data() + v.size())
			throw UsageError("parameter " + k + " must be a non-negative integer, got '" + v + "'");
		values[k] = n;
	}
	for (const std::string &r : b->required)
		if (!values.count(r))
			throw UsageError("builtin " + name + " needs parameter " + r);
	return b->make(values);
}

} // namespace wsq::stdlib
