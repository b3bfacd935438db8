/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/eval.hpp"

#include "wsq/analysis.hpp"
#include "wsq/errors.hpp"
#include "wsq/fnn.hpp"
#include "wsq/parser.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace wsq {

bool Value::truth() const
{
	if (!is_formula())
		throw UsageError("expected a formula value, got a term value");
	return std::get<bool>(v_);
}

const ExtRational &Value::number() const
{
	if (is_formula())
		throw UsageError("expected a term value, got a formula value");
	return std::get<ExtRational>(v_);
}

std::string Value::str() const
{
	if (is_formula())
		return std::get<bool>(v_) ? "true" : "false";
	return std::get<ExtRational>(v_).str();
}

namespace {

// n^k, or nullopt when it exceeds `cap`.
std::optional<std::size_t> power_within(std::size_t n, std::size_t k, std::size_t cap)
{
	std::size_t out = 1;
	for (std::size_t i = 0; i < k; ++i) {
		if (n != 0 && out > cap / n)
			return std::nullopt;
		out *= n;
	}
	if (out > cap)
		return std::nullopt;
	return out;
}

std::size_t encode(const Tuple &t, std::size_t n)
{
	std::size_t idx = 0;
	for (Element e : t)
		idx = idx * n + e;
	return idx;
}

struct MemoKey {
	const Expr *node;
	std::vector<std::uint64_t> data;
	friend bool operator==(const MemoKey &, const MemoKey &) = default;
};

struct MemoHash {
	std::size_t operator()(const MemoKey &k) const
	{
		std::size_t h = std::hash<const void *>()(k.node);
		for (std::uint64_t v : k.data)
			h ^= std::hash<std::uint64_t>()(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		return h;
	}
};

bool is_memoized(Kind k)
{
	return k == Kind::Sum || k == Kind::Count || k == Kind::Avg || k == Kind::Min || k == Kind::Max;
}

class Evaluator {
public:
	Evaluator(const WeightedStructure &s, const EvalOptions &opts) : s_(s), opts_(opts), n_(s.size()) {}

	void bind_outer(const Assignment &env)
	{
		for (const auto &[v, e] : env)
			env_[v] = e;
	}

	bool formula(const Expr &e);
	ExtRational term(const Expr &e);
	std::shared_ptr<std::vector<ExtRational>> fixpoint(const std::string &fn, const std::vector<std::string> &bound,
	                                                   const Expr &body, FixpointRun &run);

private:
	struct Intensional {
		std::string name;
		const std::vector<ExtRational> *table;
		std::uint64_t serial;
		std::uint64_t version;
	};

	// Binds a variable for the lifetime of the guard, restoring any outer value.
	class Scoped {
	public:
		Scoped(Evaluator &ev, const std::string &var) : ev_(ev), var_(var)
		{
			auto it = ev.env_.find(var);
			if (it != ev.env_.end())
				saved_ = it->second;
		}
		void set(Element e) { ev_.env_[var_] = e; }
		~Scoped()
		{
			if (saved_)
				ev_.env_[var_] = *saved_;
			else
				ev_.env_.erase(var_);
		}

	private:
		Evaluator &ev_;
		const std::string &var_;
		std::optional<Element> saved_;
	};

	const WeightedStructure &s_;
	const EvalOptions &opts_;
	std::size_t n_;
	std::unordered_map<std::string, Element> env_;
	std::vector<Intensional> intensional_;
	std::uint64_t next_serial_ = 0;
	ExprIndex index_;
	std::unordered_map<MemoKey, ExtRational, MemoHash> memo_;
	std::unordered_map<MemoKey, std::shared_ptr<std::vector<ExtRational>>, MemoHash> tables_;

	Element var(const std::string &v) const
	{
		auto it = env_.find(v);
		if (it == env_.end())
			throw UnboundVariableError("unbound variable: " + v);
		return it->second;
	}

	Tuple tuple(const std::vector<std::string> &vs) const
	{
		Tuple t;
		t.reserve(vs.size());
		for (const std::string &v : vs)
			t.push_back(var(v));
		return t;
	}

	const Intensional *intensional(const std::string &name) const
	{
		for (auto it = intensional_.rbegin(); it != intensional_.rend(); ++it)
			if (it->name == name)
				return &*it;
		return nullptr;
	}

	ExtRational weight(const std::string &name, const std::vector<std::string> &args) const
	{
		Tuple t = tuple(args);
		if (const Intensional *b = intensional(name))
			return (*b->table)[encode(t, n_)];
		return s_.lookup_weight(name, t);
	}

	// Free-variable values plus the state of every open intensional symbol.
	MemoKey key(const Expr &e, const std::vector<std::string> *exclude = nullptr)
	{
		MemoKey k{&e, {}};
		for (const std::string &v : index_.free_vars(e)) {
			if (exclude && std::find(exclude->begin(), exclude->end(), v) != exclude->end())
				continue;
			k.data.push_back(var(v));
		}
		for (const std::string &sym : index_.open_symbols(e)) {
			if (const Intensional *b = intensional(sym)) {
				k.data.push_back(b->serial);
				k.data.push_back(b->version);
			} else {
				k.data.push_back(std::numeric_limits<std::uint64_t>::max());
			}
		}
		return k;
	}

	std::size_t tuple_count(std::size_t k) const
	{
		auto c = power_within(n_, k, opts_.max_summands);
		if (!c)
			throw ResourceError("sum over " + std::to_string(k) + " variables exceeds the summand cap of " +
			                    std::to_string(opts_.max_summands));
		return *c;
	}

	// Calls f for each tuple of A^k bound to `vars`; stops when f returns false.
	template <class F> void for_each_tuple(const std::vector<std::string> &vars, F &&f)
	{
		std::size_t total = tuple_count(vars.size());
		std::vector<std::unique_ptr<Scoped>> guards;
		guards.reserve(vars.size());
		for (const std::string &v : vars)
			guards.push_back(std::make_unique<Scoped>(*this, v));
		for (std::size_t step = 0; step < total; ++step) {
			std::size_t idx = opts_.reverse_iteration ? total - 1 - step : step;
			for (std::size_t i = vars.size(); i-- > 0;) {
				guards[i]->set(idx % n_);
				idx /= n_;
			}
			if (!f())
				return;
		}
	}

	bool quantifier(const Expr &e, bool want)
	{
		bool found = false;
		for_each_tuple(e.vars, [&] {
			if (formula(*e.kids[0]) == want)
				found = true;
			return !found;
		});
		return want ? found : !found;
	}

	ExtRational aggregate(const Expr &e);
	ExtRational ifp_value(const Expr &e);
};

bool Evaluator::formula(const Expr &e)
{
	auto cmp = [&]() { return compare(term(*e.kids[0]), term(*e.kids[1])); };
	switch (e.kind) {
	case Kind::ElemEq: return var(e.vars[0]) == var(e.vars[1]);
	case Kind::ElemNeq: return var(e.vars[0]) != var(e.vars[1]);
	case Kind::RelAtom: return s_.lookup_relation(e.symbol, tuple(e.vars));
	case Kind::EdgeTest: return weight(fnn_symbols::weight, e.vars).defined();
	case Kind::Leq: return cmp() <= 0;
	case Kind::Lt: return cmp() < 0;
	case Kind::Geq: return cmp() >= 0;
	case Kind::Gt: return cmp() > 0;
	case Kind::TermEq: return cmp() == 0;
	case Kind::TermNeq: return cmp() != 0;
	case Kind::Not: return !formula(*e.kids[0]);
	case Kind::And: return formula(*e.kids[0]) && formula(*e.kids[1]);
	case Kind::Or: return formula(*e.kids[0]) || formula(*e.kids[1]);
	case Kind::Implies: return !formula(*e.kids[0]) || formula(*e.kids[1]);
	case Kind::Exists: return quantifier(e, true);
	case Kind::Forall: return quantifier(e, false);
	default:
		throw UsageError(std::string("a term (") + kind_name(e.kind) + ") used as a formula");
	}
}

ExtRational Evaluator::term(const Expr &e)
{
	switch (e.kind) {
	case Kind::Zero: return ExtRational(0);
	case Kind::One: return ExtRational(1);
	case Kind::Literal: return e.literal;
	case Kind::WeightAtom: return weight(e.symbol, e.vars);
	case Kind::Arith: {
		ExtRational a = term(*e.kids[0]);
		if (a.is_bot())
			return a;
		return arith(e.op, a, term(*e.kids[1]));
	}
	case Kind::Cond: return formula(*e.kids[0]) ? term(*e.kids[1]) : term(*e.kids[2]);
	case Kind::Ifp: return ifp_value(e);
	default:
		if (is_memoized(e.kind))
			return aggregate(e);
		throw UsageError(std::string("a formula (") + kind_name(e.kind) + ") used as a term");
	}
}

ExtRational Evaluator::aggregate(const Expr &e)
{
	MemoKey k = key(e);
	if (auto it = memo_.find(k); it != memo_.end())
		return it->second;
	const Expr &guard = *e.kids[0];
	ExtRational total(0);
	std::size_t hits = 0;
	std::optional<ExtRational> best;
	for_each_tuple(e.vars, [&] {
		if (!formula(guard))
			return true;
		++hits;
		if (e.kind == Kind::Count)
			return true;
		ExtRational v = term(*e.kids[1]);
		if (e.kind == Kind::Max || e.kind == Kind::Min) {
			if (!best || (e.kind == Kind::Max ? *best < v : v < *best))
				best = v;
			return true;
		}
		total = total + v;
		return total.defined();
	});
	ExtRational out;
	switch (e.kind) {
	case Kind::Sum: out = total; break;
	case Kind::Count: out = ExtRational(static_cast<long>(hits)); break;
	case Kind::Avg: out = hits == 0 ? ExtRational::bot() : total / ExtRational(static_cast<long>(hits)); break;
	default: out = best ? *best : ExtRational::bot(); break;
	}
	memo_.emplace(std::move(k), out);
	return out;
}

ExtRational Evaluator::ifp_value(const Expr &e)
{
	MemoKey k = key(*e.kids[0], &e.vars);
	k.node = &e;
	std::shared_ptr<std::vector<ExtRational>> table;
	if (auto it = tables_.find(k); it != tables_.end()) {
		table = it->second;
	} else {
		FixpointRun run;
		table = fixpoint(e.symbol, e.vars, *e.kids[0], run);
		tables_.emplace(std::move(k), table);
	}
	return (*table)[encode(tuple(e.applied), n_)];
}

std::shared_ptr<std::vector<ExtRational>> Evaluator::fixpoint(const std::string &fn,
                                                             const std::vector<std::string> &bound,
                                                             const Expr &body, FixpointRun &run)
{
	for (std::size_t i = 0; i < bound.size(); ++i)
		for (std::size_t j = i + 1; j < bound.size(); ++j)
			if (bound[i] == bound[j])
				throw UsageError("ifp binds variable " + bound[i] + " twice");
	auto cells = power_within(n_, bound.size(), opts_.max_fixpoint_cells);
	if (!cells)
		throw ResourceError("fixed-point table for " + fn + "/" + std::to_string(bound.size()) +
		                    " exceeds the cap of " + std::to_string(opts_.max_fixpoint_cells) + " cells");
	auto table = std::make_shared<std::vector<ExtRational>>(*cells);
	intensional_.push_back({fn, table.get(), next_serial_++, 0});
	std::vector<std::unique_ptr<Scoped>> guards;
	for (const std::string &v : bound)
		guards.push_back(std::make_unique<Scoped>(*this, v));

	std::size_t rounds = 0, defined = 0;
	for (;;) {
		std::vector<ExtRational> next = *table;
		std::size_t fresh = 0;
		for (std::size_t idx = 0; idx < *cells; ++idx) {
			if ((*table)[idx].defined())
				continue;
			std::size_t rest = idx;
			for (std::size_t i = bound.size(); i-- > 0;) {
				guards[i]->set(rest % n_);
				rest /= n_;
			}
			ExtRational v = term(body);
			if (v.defined()) {
				next[idx] = std::move(v);
				++fresh;
			}
		}
		if (fresh == 0)
			break;
		if (opts_.check_fixpoint_invariants) {
			for (std::size_t idx = 0; idx < *cells; ++idx)
				if ((*table)[idx].defined() && !(next[idx] == (*table)[idx]))
					throw std::logic_error("fixed point of " + fn + " changed a defined entry");
		}
		*table = std::move(next);
		++intensional_.back().version;
		++rounds;
		defined += fresh;
		if (opts_.check_fixpoint_invariants && rounds > *cells)
			throw std::logic_error("fixed point of " + fn + " not reached within |A|^k rounds");
	}
	guards.clear();
	intensional_.pop_back();
	run = FixpointRun{fn, bound.size(), n_, rounds, defined, *cells};
	if (opts_.on_fixpoint)
		opts_.on_fixpoint(run);
	return table;
}

// Checks the extensional vocabulary of `e` against `s`.  Returns false when a
// name is missing; throws when a present name disagrees in kind or arity.
bool vocabulary_matches(const Expr &e, const WeightedStructure &s)
{
	SymbolReport rep = vocabulary_of(e);
	Vocabulary have = s.vocabulary();
	bool all_present = true;
	for (const auto &[name, sym] : rep.extensional.symbols()) {
		const Symbol *h = have.find(name);
		if (!h) {
			all_present = false;
			continue;
		}
		if (h->kind != sym.kind || h->arity != sym.arity)
			throw SymbolMismatchError("symbol " + name + " is " + symbol_str(*h) + " in the structure but used as " +
			                 symbol_str(sym));
	}
	return all_present;
}

void check_assignment(const std::set<std::string> &needed, const Assignment &env, const WeightedStructure &s)
{
	for (const std::string &v : needed)
		if (!env.count(v))
			throw UnboundVariableError("unbound variable: " + v);
	for (const auto &[v, e] : env)
		if (e >= s.size())
			throw UsageError("variable " + v + " is bound to element " + std::to_string(e) +
			                 " outside the universe");
}

} // namespace

Value evaluate(const Expr &e, const WeightedStructure &s, const Assignment &env, const EvalOptions &opts)
{
	bool complete = vocabulary_matches(e, s);
	check_assignment(free_vars(e), env, s);
	if (!complete)
		return e.formula() ? Value(false) : Value(ExtRational::bot());
	Evaluator ev(s, opts);
	ev.bind_outer(env);
	if (e.formula())
		return Value(ev.formula(e));
	return Value(ev.term(e));
}

Value evaluate_text(std::string_view text, const WeightedStructure &s, const Assignment &env,
                    const EvalOptions &opts)
{
	ExprPtr e = resolve_top_level(parse(text), s.vocabulary());
	return evaluate(*e, s, env, opts);
}

const ExtRational &FixpointTable::at(const Tuple &t) const
{
	if (t.size() != arity)
		throw UsageError("table of " + symbol + " has arity " + std::to_string(arity));
	for (Element e : t)
		if (e >= universe_size)
			throw UsageError("tuple component outside the universe");
	return cells[encode(t, universe_size)];
}

FixpointTable ifp_iterate(const std::string &fn, const std::vector<std::string> &bound, const ExprPtr &body,
                          const WeightedStructure &s, const Assignment &env, const EvalOptions &opts)
{
	ExprPtr node = ast::ifp(fn, bound, body, bound);
	SymbolReport rep = vocabulary_of(*node);
	Vocabulary have = s.vocabulary();
	for (const auto &[name, sym] : rep.extensional.symbols()) {
		const Symbol *h = have.find(name);
		if (!h || h->kind != sym.kind || h->arity != sym.arity)
			throw SymbolMismatchError("the body uses " + symbol_str(sym) + ", which the structure does not interpret");
	}
	std::set<std::string> needed = free_vars(*body);
	for (const std::string &v : bound)
		needed.erase(v);
	check_assignment(needed, env, s);
	Evaluator ev(s, opts);
	ev.bind_outer(env);
	FixpointRun run;
	auto table = ev.fixpoint(fn, bound, *body, run);
	return FixpointTable{fn, bound.size(), s.size(), std::move(*table), run.rounds};
}

} // namespace wsq
