/* SPDX-License-Identifier: Apache-2.0 */

#include "reference.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace ref {

namespace {

using wsq::Element;
using wsq::Expr;
using wsq::Kind;
using wsq::Tuple;

using Table = std::map<Tuple, Num>;

// bot < q, bot == bot
int cmp(const Num &a, const Num &b)
{
	if (!a && !b)
		return 0;
	if (!a)
		return -1;
	if (!b)
		return 1;
	return ::cmp(*a, *b) < 0 ? -1 : (::cmp(*a, *b) > 0 ? 1 : 0);
}

Num apply(wsq::ArithOp op, const Num &a, const Num &b)
{
	if (!a || !b)
		return std::nullopt;
	switch (op) {
	case wsq::ArithOp::Add:
		return mpq_class(*a + *b);
	case wsq::ArithOp::Sub:
		return mpq_class(*a - *b);
	case wsq::ArithOp::Mul:
		return mpq_class(*a * *b);
	case wsq::ArithOp::Div:
		if (*b == 0)
			return std::nullopt;
		return mpq_class(*a / *b);
	}
	return std::nullopt;
}

// Every assignment of universe elements to `vars`, in odometer order.
void for_each_tuple(std::size_t n, std::size_t k, const std::function<void(const Tuple &)> &f)
{
	Tuple t(k, 0);
	if (n == 0 && k > 0)
		return;
	for (;;) {
		f(t);
		std::size_t i = k;
		while (i > 0) {
			--i;
			if (++t[i] < n)
				break;
			t[i] = 0;
			if (i == 0)
				return;
		}
		if (k == 0)
			return;
	}
}

struct Frame {
	std::string name;
	const Table *table;
};

class Eval {
public:
	Eval(const wsq::WeightedStructure &s, Stats *st) : s_(s), stats_(st) {}

	std::map<std::string, Element> env;
	std::vector<Frame> frames;

	bool f(const Expr &e)
	{
		switch (e.kind) {
		case Kind::ElemEq:
			return env.at(e.vars[0]) == env.at(e.vars[1]);
		case Kind::ElemNeq:
			return env.at(e.vars[0]) != env.at(e.vars[1]);
		case Kind::RelAtom: {
			const wsq::RelationTable *r = s_.relation(e.symbol);
			return r->tuples.count(args(e.vars)) > 0;
		}
		case Kind::EdgeTest: {
			const wsq::WeightTable *w = s_.weight("wt");
			return w->values.count(args(e.vars)) > 0 && w->values.at(args(e.vars)).defined();
		}
		case Kind::Leq:
			return cmp(t(*e.kids[0]), t(*e.kids[1])) <= 0;
		case Kind::Lt:
			return cmp(t(*e.kids[0]), t(*e.kids[1])) < 0;
		case Kind::Geq:
			return cmp(t(*e.kids[0]), t(*e.kids[1])) >= 0;
		case Kind::Gt:
			return cmp(t(*e.kids[0]), t(*e.kids[1])) > 0;
		case Kind::TermEq:
			return cmp(t(*e.kids[0]), t(*e.kids[1])) == 0;
		case Kind::TermNeq:
			return cmp(t(*e.kids[0]), t(*e.kids[1])) != 0;
		case Kind::Not:
			return !f(*e.kids[0]);
		case Kind::And: {
			bool a = f(*e.kids[0]);
			bool b = f(*e.kids[1]);
			return a && b;
		}
		case Kind::Or: {
			bool a = f(*e.kids[0]);
			bool b = f(*e.kids[1]);
			return a || b;
		}
		case Kind::Implies: {
			bool a = f(*e.kids[0]);
			bool b = f(*e.kids[1]);
			return !a || b;
		}
		case Kind::Exists:
		case Kind::Forall: {
			bool any = false, all = true;
			with_tuples({e.vars[0]}, [&] {
				bool v = f(*e.kids[0]);
				any = any || v;
				all = all && v;
			});
			return e.kind == Kind::Exists ? any : all;
		}
		default:
			throw std::logic_error("reference: not a formula");
		}
	}

	Num t(const Expr &e)
	{
		switch (e.kind) {
		case Kind::Zero:
			return mpq_class(0);
		case Kind::One:
			return mpq_class(1);
		case Kind::Literal:
			if (e.literal.is_bot())
				return std::nullopt;
			return e.literal.value();
		case Kind::WeightAtom: {
			Tuple a = args(e.vars);
			for (auto it = frames.rbegin(); it != frames.rend(); ++it)
				if (it->name == e.symbol)
					return it->table->at(a);
			const wsq::WeightTable *w = s_.weight(e.symbol);
			auto v = w->values.find(a);
			if (v == w->values.end() || v->second.is_bot())
				return std::nullopt;
			return v->second.value();
		}
		case Kind::Arith:
			return apply(e.op, t(*e.kids[0]), t(*e.kids[1]));
		case Kind::Cond:
			return f(*e.kids[0]) ? t(*e.kids[1]) : t(*e.kids[2]);
		case Kind::Sum: {
			Num acc = mpq_class(0);
			with_tuples(e.vars, [&] {
				if (f(*e.kids[0]))
					acc = apply(wsq::ArithOp::Add, acc, t(*e.kids[1]));
			});
			return acc;
		}
		case Kind::Count: {
			long n = 0;
			with_tuples(e.vars, [&] { n += f(*e.kids[0]) ? 1 : 0; });
			return mpq_class(n);
		}
		case Kind::Avg: {
			Num acc = mpq_class(0);
			long n = 0;
			with_tuples(e.vars, [&] {
				if (f(*e.kids[0])) {
					acc = apply(wsq::ArithOp::Add, acc, t(*e.kids[1]));
					++n;
				}
			});
			return apply(wsq::ArithOp::Div, acc, mpq_class(n));
		}
		case Kind::Min:
		case Kind::Max: {
			bool seen = false;
			Num best;
			with_tuples(e.vars, [&] {
				if (!f(*e.kids[0]))
					return;
				Num v = t(*e.kids[1]);
				int c = cmp(v, best);
				if (!seen || (e.kind == Kind::Min ? c < 0 : c > 0))
					best = v;
				seen = true;
			});
			return seen ? best : std::nullopt;
		}
		case Kind::Ifp:
			return ifp(e);
		default:
			throw std::logic_error("reference: not a term");
		}
	}

private:
	const wsq::WeightedStructure &s_;
	Stats *stats_;

	Tuple args(const std::vector<std::string> &vars) const
	{
		Tuple a;
		for (const std::string &v : vars)
			a.push_back(env.at(v));
		return a;
	}

	void with_tuples(const std::vector<std::string> &vars, const std::function<void()> &body)
	{
		std::map<std::string, std::optional<Element>> saved;
		for (const std::string &v : vars) {
			auto it = env.find(v);
			saved[v] = it == env.end() ? std::nullopt : std::optional<Element>(it->second);
		}
		for_each_tuple(s_.size(), vars.size(), [&](const Tuple &tp) {
			for (std::size_t i = 0; i < vars.size(); ++i)
				env[vars[i]] = tp[i];
			body();
		});
		for (const auto &[v, old] : saved) {
			if (old)
				env[v] = *old;
			else
				env.erase(v);
		}
	}

	Num ifp(const Expr &e)
	{
		Tuple at = args(e.applied);
		const std::size_t k = e.vars.size();
		Table cur;
		for_each_tuple(s_.size(), k, [&](const Tuple &tp) { cur[tp] = std::nullopt; });
		std::size_t rounds = 0;
		for (;;) {
			Table next = cur;
			frames.push_back({e.symbol, &cur});
			for (auto &[tp, v] : next) {
				if (v)
					continue;
				std::map<std::string, Element> saved = env;
				for (std::size_t i = 0; i < k; ++i)
					env[e.vars[i]] = tp[i];
				v = t(*e.kids[0]);
				env = saved;
			}
			frames.pop_back();
			for (const auto &[tp, v] : cur)
				if (v && (!next.at(tp) || *next.at(tp) != *v) && stats_)
					stats_->inflationary = false;
			if (next == cur)
				break;
			cur = std::move(next);
			++rounds;
		}
		if (stats_) {
			++stats_->fixpoints;
			std::size_t bound = 1;
			for (std::size_t i = 0; i < k; ++i)
				bound *= s_.size();
			if (rounds > bound)
				stats_->max_rounds_over_bound = std::max(stats_->max_rounds_over_bound, rounds - bound);
		}
		return cur.at(at);
	}
};

// Names used outside any ifp binding them, with the kind they are used as.
void extensional(const Expr &e, std::vector<std::string> &bound, std::set<std::string> &names)
{
	switch (e.kind) {
	case Kind::RelAtom:
		names.insert(e.symbol);
		break;
	case Kind::EdgeTest:
		names.insert("wt");
		break;
	case Kind::WeightAtom:
		if (std::find(bound.begin(), bound.end(), e.symbol) == bound.end())
			names.insert(e.symbol);
		break;
	case Kind::Ifp:
		bound.push_back(e.symbol);
		extensional(*e.kids[0], bound, names);
		bound.pop_back();
		return;
	default:
		break;
	}
	for (const auto &k : e.kids)
		extensional(*k, bound, names);
}

} // namespace

Val evaluate(const Expr &e, const wsq::WeightedStructure &s, const std::map<std::string, Element> &env,
             Stats *stats)
{
	std::vector<std::string> bound;
	std::set<std::string> names;
	extensional(e, bound, names);
	for (const std::string &n : names)
		if (!s.relation(n) && !s.weight(n))
			return e.formula() ? Val(false) : Val(Num());
	Eval ev(s, stats);
	ev.env = env;
	if (e.formula())
		return ev.f(e);
	return ev.t(e);
}

std::string str(const Val &v)
{
	if (const bool *b = std::get_if<bool>(&v))
		return *b ? "true" : "false";
	const Num &n = std::get<Num>(v);
	if (!n)
		return "bot";
	return n->get_str();
}

bool same(const Val &a, const std::string &library_str) { return str(a) == library_str; }

} // namespace ref
