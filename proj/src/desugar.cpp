/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/desugar.hpp"

#include "wsq/analysis.hpp"
#include "wsq/fnn.hpp"

#include <unordered_map>

namespace wsq {

namespace {

ExprPtr natural(const Rational &n)
{
	if (n == 0)
		return ast::zero();
	if (n <= 8) {
		ExprPtr acc = ast::one();
		for (Rational k = 1; k < n; k += 1)
			acc = ast::add(acc, ast::one());
		return acc;
	}
	std::string bits = n.get_num().get_str(2);
	ExprPtr two = ast::add(ast::one(), ast::one());
	ExprPtr acc = ast::one();
	for (std::size_t i = 1; i < bits.size(); ++i) {
		acc = ast::mul(two, acc);
		if (bits[i] == '1')
			acc = ast::add(acc, ast::one());
	}
	return acc;
}

class Desugarer {
public:
	explicit Desugarer(DesugarOptions opts) : opts_(opts) {}

	ExprPtr go(const ExprPtr &e)
	{
		if (auto it = memo_.find(e.get()); it != memo_.end())
			return it->second;
		ExprPtr out = rewrite(e);
		memo_.emplace(e.get(), out);
		return out;
	}

private:
	DesugarOptions opts_;
	std::unordered_map<const Expr *, ExprPtr> memo_;

	ExprPtr rewrite(const ExprPtr &e)
	{
		std::vector<ExprPtr> kids;
		kids.reserve(e->kids.size());
		bool changed = false;
		for (const ExprPtr &k : e->kids) {
			kids.push_back(go(k));
			changed |= kids.back() != k;
		}
		auto kid = [&](std::size_t i) { return kids[i]; };
		ExprPtr out;
		switch (e->kind) {
		case Kind::ElemNeq:
			out = ast::not_(ast::elem_eq(e->vars[0], e->vars[1]));
			break;
		case Kind::EdgeTest: {
			ExprPtr w = ast::weight(fnn_symbols::weight, e->vars);
			ExprPtr b = literal_term(ExtRational::bot());
			out = ast::not_(ast::and_(ast::leq(w, b), ast::leq(b, w)));
			break;
		}
		case Kind::Lt: out = ast::not_(ast::leq(kid(1), kid(0))); break;
		case Kind::Geq: out = ast::leq(kid(1), kid(0)); break;
		case Kind::Gt: out = ast::not_(ast::leq(kid(0), kid(1))); break;
		case Kind::TermEq: out = ast::and_(ast::leq(kid(0), kid(1)), ast::leq(kid(1), kid(0))); break;
		case Kind::TermNeq:
			out = ast::not_(ast::and_(ast::leq(kid(0), kid(1)), ast::leq(kid(1), kid(0))));
			break;
		case Kind::Literal: out = literal_term(e->literal); break;
		case Kind::Count: out = ast::sum(e->vars, kid(0), ast::one()); break;
		case Kind::Avg: out = average(e->vars, kid(0), kid(1)); break;
		case Kind::Min:
		case Kind::Max: out = extremum(e->kind == Kind::Max, e->vars, kid(0), kid(1)); break;
		case Kind::Cond:
			if (opts_.cond != CondElimination::Keep) {
				out = eliminate_cond(kid(0), kid(1), kid(2));
				break;
			}
			[[fallthrough]];
		default:
			return changed ? with_kids(*e, std::move(kids)) : e;
		}
		return at(out, e->pos);
	}

	static ExprPtr average(const ast::Vars &xs, const ExprPtr &guard, const ExprPtr &body)
	{
		return ast::div(ast::sum(xs, guard, body), ast::sum(xs, guard, ast::one()));
	}

	static ExprPtr extremum(bool is_max, const ast::Vars &xs, const ExprPtr &guard, const ExprPtr &body)
	{
		std::set<std::string> taken = variable_names(*guard);
		for (const std::string &v : variable_names(*body))
			taken.insert(v);
		taken.insert(xs.begin(), xs.end());
		std::map<std::string, std::string> primed;
		ast::Vars fresh;
		for (const std::string &x : xs) {
			std::string p = fresh_variable(x, taken);
			taken.insert(p);
			primed.emplace(x, p);
			fresh.push_back(p);
		}
		ExprPtr guard_p = rename_free(guard, primed);
		ExprPtr body_p = rename_free(body, primed);
		ExprPtr cmp = is_max ? ast::leq(body_p, body) : ast::leq(body, body_p);
		ExprPtr all = ast::implies(guard_p, cmp);
		for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
			all = ast::forall(*it, all);
		return average(xs, ast::and_(guard, all), body);
	}

	ExprPtr eliminate_cond(const ExprPtr &c, const ExprPtr &a, const ExprPtr &b) const
	{
		std::set<std::string> taken = variable_names(*c);
		for (const ExprPtr &t : {a, b})
			for (const std::string &v : variable_names(*t))
				taken.insert(v);
		std::string z = fresh_variable("z", taken);
		ExprPtr size = ast::sum({z}, ast::elem_eq(z, z), ast::one());
		if (opts_.cond == CondElimination::Guarded)
			return ast::add(ast::div(ast::sum({z}, c, a), size), ast::div(ast::sum({z}, ast::not_(c), b), size));
		ExprPtr eta = ast::div(ast::sum({z}, c, ast::one()), size);
		return ast::add(ast::mul(eta, a), ast::mul(ast::sub(ast::one(), eta), b));
	}
};

} // namespace

ExprPtr literal_term(const ExtRational &q)
{
	if (q.is_bot())
		return ast::div(ast::one(), ast::zero());
	const Rational &v = q.value();
	if (sgn(v) < 0)
		return ast::sub(ast::zero(), literal_term(ExtRational(Rational(-v))));
	ExprPtr num = natural(Rational(v.get_num()));
	if (v.get_den() == 1)
		return num;
	return ast::div(num, natural(Rational(v.get_den())));
}

ExprPtr desugar(const ExprPtr &e, DesugarOptions opts)
{
	Desugarer d(opts);
	return d.go(e);
}

} // namespace wsq
