/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/analysis.hpp"

#include "wsq/fnn.hpp"

#include <algorithm>
#include <unordered_map>

namespace wsq {

namespace {

using VarSet = std::set<std::string>;

bool binds_tuple(Kind k)
{
	switch (k) {
	case Kind::Exists: case Kind::Forall: case Kind::Sum: case Kind::Count:
	case Kind::Avg: case Kind::Min: case Kind::Max: case Kind::Ifp:
		return true;
	default:
		return false;
	}
}

bool is_atom(Kind k)
{
	return k == Kind::ElemEq || k == Kind::ElemNeq || k == Kind::EdgeTest || k == Kind::RelAtom ||
	       k == Kind::WeightAtom;
}

void collect_names(const Expr &e, VarSet &out, std::unordered_map<const Expr *, bool> &seen)
{
	if (!seen.emplace(&e, true).second)
		return;
	out.insert(e.vars.begin(), e.vars.end());
	out.insert(e.applied.begin(), e.applied.end());
	for (const ExprPtr &k : e.kids)
		collect_names(*k, out, seen);
}

// Name and arity of the weight symbol an atom reads, if any.
bool reads_weight(const Expr &e, std::string &name, std::size_t &arity)
{
	if (e.kind == Kind::WeightAtom) {
		name = e.symbol;
		arity = e.vars.size();
		return true;
	}
	if (e.kind == Kind::EdgeTest) {
		name = fnn_symbols::weight;
		arity = 2;
		return true;
	}
	return false;
}

class VocabularyWalk {
public:
	SymbolReport report;

	void walk(const Expr &e)
	{
		std::string key = scope_key();
		if (!visited_.emplace(&e, key).second)
			return;
		std::string name;
		std::size_t arity = 0;
		if (reads_weight(e, name, arity)) {
			if (const auto *b = innermost(name)) {
				if (b->second != arity)
					throw VocabularyError("intensional symbol " + name + " has arity " +
					                          std::to_string(b->second) + ", used with " +
					                          std::to_string(arity) + " arguments",
					                      e.pos);
			} else {
				add(Symbol{name, SymbolKind::Weight, arity}, e.pos);
			}
			return;
		}
		if (e.kind == Kind::RelAtom) {
			if (innermost(e.symbol))
				throw VocabularyError("intensional symbol " + e.symbol + " used as a relation", e.pos);
			add(Symbol{e.symbol, SymbolKind::Relation, e.vars.size()}, e.pos);
			return;
		}
		if (e.kind == Kind::Ifp) {
			report.intensional.emplace(e.symbol, e.vars.size());
			scope_.emplace_back(e.symbol, e.vars.size());
			walk(*e.kids[0]);
			scope_.pop_back();
			return;
		}
		for (const ExprPtr &k : e.kids)
			walk(*k);
	}

private:
	std::vector<std::pair<std::string, std::size_t>> scope_;
	std::set<std::pair<const Expr *, std::string>> visited_;

	const std::pair<std::string, std::size_t> *innermost(const std::string &name) const
	{
		for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
			if (it->first == name)
				return &*it;
		return nullptr;
	}

	std::string scope_key() const
	{
		std::string key;
		for (const auto &[n, a] : scope_)
			key += n + "/" + std::to_string(a) + ";";
		return key;
	}

	void add(const Symbol &s, SourcePos pos)
	{
		try {
			report.extensional.add(s);
		} catch (const UsageError &err) {
			throw VocabularyError(err.what(), pos);
		}
	}
};

class FragmentWalk {
public:
	std::vector<FragmentViolation> violations;

	void walk(const Expr &e)
	{
		std::string key;
		for (const std::string &s : bound_)
			key += s + ";";
		if (!visited_.emplace(&e, key).second)
			return;
		if (e.kind == Kind::Arith && e.op == ArithOp::Mul && carries(*e.kids[0]) && carries(*e.kids[1]))
			flag(e, "multiplication of two intensional subterms");
		if (e.kind == Kind::Arith && e.op == ArithOp::Div && carries(*e.kids[1]))
			flag(e, "division by an intensional subterm");
		if (e.kind == Kind::Avg && carries(*e.kids[0]))
			flag(e, "division by an intensional subterm (average over an intensional guard)");
		if ((e.kind == Kind::Min || e.kind == Kind::Max) && (carries(*e.kids[0]) || carries(*e.kids[1])))
			flag(e, "division by an intensional subterm (extremum over an intensional guard)");
		if (e.kind == Kind::Ifp)
			bound_.push_back(e.symbol);
		for (std::size_t i = 0; i < e.kids.size(); ++i) {
			path_.push_back(i);
			walk(*e.kids[i]);
			path_.pop_back();
		}
		if (e.kind == Kind::Ifp)
			bound_.pop_back();
	}

private:
	ExprIndex index_;
	std::vector<std::string> bound_;
	std::vector<std::size_t> path_;
	std::set<std::pair<const Expr *, std::string>> visited_;

	bool carries(const Expr &e)
	{
		const VarSet &open = index_.open_symbols(e);
		return std::any_of(bound_.begin(), bound_.end(), [&](const std::string &s) { return open.count(s) > 0; });
	}

	void flag(const Expr &e, const std::string &msg) { violations.push_back({msg, e.pos, path_}); }
};

class Renamer {
public:
	explicit Renamer(const Expr &root, const std::map<std::string, std::string> &m)
	{
		std::unordered_map<const Expr *, bool> seen;
		collect_names(root, taken_, seen);
		for (const auto &[from, to] : m) {
			taken_.insert(from);
			taken_.insert(to);
		}
	}

	ExprPtr go(const ExprPtr &e, const std::map<std::string, std::string> &m)
	{
		const VarSet &fv = free_.free_vars(*e);
		std::map<std::string, std::string> rel;
		for (const auto &[from, to] : m)
			if (from != to && fv.count(from))
				rel.emplace(from, to);
		if (rel.empty())
			return e;
		auto map_var = [](const std::map<std::string, std::string> &mm, const std::string &v) {
			auto it = mm.find(v);
			return it == mm.end() ? v : it->second;
		};
		auto out = std::make_shared<Expr>(*e);
		if (is_atom(e->kind)) {
			for (std::string &v : out->vars)
				v = map_var(rel, v);
			return out;
		}
		if (!binds_tuple(e->kind)) {
			for (ExprPtr &k : out->kids)
				k = go(k, rel);
			return out;
		}
		std::map<std::string, std::string> inner = rel;
		for (const std::string &b : e->vars)
			inner.erase(b);
		std::set<std::string> targets;
		for (const auto &[from, to] : inner)
			targets.insert(to);
		for (std::string &b : out->vars) {
			if (!targets.count(b))
				continue;
			std::string fresh = fresh_variable(b, taken_);
			taken_.insert(fresh);
			inner[b] = fresh;
			b = fresh;
		}
		for (ExprPtr &k : out->kids)
			k = go(k, inner);
		if (e->kind == Kind::Ifp)
			for (std::string &v : out->applied)
				v = map_var(rel, v);
		return out;
	}

private:
	ExprIndex free_;
	VarSet taken_;
};

} // namespace

const std::set<std::string> &ExprIndex::free_vars(const Expr &e)
{
	if (auto it = free_.find(&e); it != free_.end())
		return it->second;
	VarSet out;
	if (is_atom(e.kind)) {
		out.insert(e.vars.begin(), e.vars.end());
	} else {
		for (const ExprPtr &k : e.kids) {
			const VarSet &s = free_vars(*k);
			out.insert(s.begin(), s.end());
		}
		if (binds_tuple(e.kind))
			for (const std::string &v : e.vars)
				out.erase(v);
		if (e.kind == Kind::Ifp)
			out.insert(e.applied.begin(), e.applied.end());
	}
	return free_.emplace(&e, std::move(out)).first->second;
}

const std::set<std::string> &ExprIndex::open_symbols(const Expr &e)
{
	if (auto it = open_.find(&e); it != open_.end())
		return it->second;
	VarSet out;
	std::string name;
	std::size_t arity = 0;
	if (reads_weight(e, name, arity)) {
		out.insert(name);
	} else {
		for (const ExprPtr &k : e.kids) {
			const VarSet &s = open_symbols(*k);
			out.insert(s.begin(), s.end());
		}
		if (e.kind == Kind::Ifp)
			out.erase(e.symbol);
	}
	return open_.emplace(&e, std::move(out)).first->second;
}

std::set<std::string> free_vars(const Expr &e)
{
	ExprIndex index;
	return index.free_vars(e);
}

std::set<std::string> variable_names(const Expr &e)
{
	VarSet out;
	std::unordered_map<const Expr *, bool> seen;
	collect_names(e, out, seen);
	return out;
}

std::string fresh_variable(const std::string &base, const std::set<std::string> &taken)
{
	std::string stem = base.substr(0, base.find('\''));
	for (std::size_t n = 1;; ++n) {
		std::string candidate = stem + "'" + std::to_string(n);
		if (!taken.count(candidate))
			return candidate;
	}
}

SymbolReport vocabulary_of(const Expr &e)
{
	VocabularyWalk w;
	w.walk(e);
	return std::move(w.report);
}

std::vector<FragmentViolation> check_scalar_fragment(const Expr &e)
{
	FragmentWalk w;
	w.walk(e);
	return std::move(w.violations);
}

ExprPtr rename_free(const ExprPtr &e, const std::map<std::string, std::string> &renaming)
{
	Renamer r(*e, renaming);
	return r.go(e, renaming);
}

ExprPtr resolve_top_level(const ExprPtr &e, const Vocabulary &voc)
{
	if (e->kind != Kind::WeightAtom)
		return e;
	const Symbol *s = voc.find(e->symbol);
	if (s && s->kind == SymbolKind::Relation)
		return at(ast::rel(e->symbol, e->vars), e->pos);
	if (!s && e->symbol == "edge" && e->vars.size() == 2)
		return at(ast::edge(e->vars[0], e->vars[1]), e->pos);
	return e;
}

} // namespace wsq
