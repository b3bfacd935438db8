/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/structures.hpp"

#include "wsq/errors.hpp"

#include <algorithm>
#include <cctype>

namespace wsq {

std::string symbol_str(const Symbol &s)
{
	std::string out = s.name + "/" + std::to_string(s.arity);
	if (s.kind == SymbolKind::Relation)
		out += " (relation)";
	return out;
}

void Vocabulary::add(const Symbol &s)
{
	auto it = symbols_.find(s.name);
	if (it == symbols_.end()) {
		symbols_.emplace(s.name, s);
		return;
	}
	if (it->second != s)
		throw UsageError("symbol '" + s.name + "' used as both " + symbol_str(it->second) +
		                 " and " + symbol_str(s));
}

const Symbol *Vocabulary::find(std::string_view name) const
{
	auto it = symbols_.find(name);
	return it == symbols_.end() ? nullptr : &it->second;
}

bool Vocabulary::includes_names_of(const Vocabulary &other) const
{
	return std::all_of(other.symbols_.begin(), other.symbols_.end(),
	                   [this](const auto &kv) { return symbols_.contains(kv.first); });
}

std::string Vocabulary::str() const
{
	if (symbols_.empty())
		return "{}";
	std::string out;
	for (const auto &[_, s] : symbols_) {
		if (!out.empty())
			out += ", ";
		out += symbol_str(s);
	}
	return out;
}

WeightedStructure::WeightedStructure(std::vector<std::string> universe, Interpretation interp)
: universe_(std::move(universe))
, interp_(std::move(interp))
{
	for (Element i = 0; i < universe_.size(); ++i)
		index_.emplace(universe_[i], i);
}

std::optional<Element> WeightedStructure::element(std::string_view name) const
{
	auto it = index_.find(std::string(name));
	if (it == index_.end())
		return std::nullopt;
	return it->second;
}

Element WeightedStructure::element_or_throw(std::string_view name) const
{
	if (auto e = element(name))
		return *e;
	throw UsageError("unknown element '" + std::string(name) + "'");
}

Vocabulary WeightedStructure::vocabulary() const
{
	Vocabulary v;
	for (const auto &[name, t] : interp_.relations)
		v.add({name, SymbolKind::Relation, t.arity});
	for (const auto &[name, t] : interp_.weights)
		v.add({name, SymbolKind::Weight, t.arity});
	return v;
}

const RelationTable *WeightedStructure::relation(std::string_view name) const
{
	auto it = interp_.relations.find(name);
	return it == interp_.relations.end() ? nullptr : &it->second;
}

const WeightTable *WeightedStructure::weight(std::string_view name) const
{
	auto it = interp_.weights.find(name);
	return it == interp_.weights.end() ? nullptr : &it->second;
}

bool WeightedStructure::lookup_relation(std::string_view rel, const Tuple &t) const
{
	const RelationTable *r = relation(rel);
	if (!r)
		throw UsageError("unknown relation symbol '" + std::string(rel) + "'");
	if (r->arity != t.size())
		throw SymbolMismatchError("relation '" + std::string(rel) + "' has arity " +
		                 std::to_string(r->arity) + ", got " + std::to_string(t.size()) +
		                 " arguments");
	return r->tuples.contains(t);
}

ExtRational WeightedStructure::lookup_weight(std::string_view fn, const Tuple &t) const
{
	const WeightTable *w = weight(fn);
	if (!w)
		throw UsageError("unknown weight symbol '" + std::string(fn) + "'");
	if (w->arity != t.size())
		throw SymbolMismatchError("weight function '" + std::string(fn) + "' has arity " +
		                 std::to_string(w->arity) + ", got " + std::to_string(t.size()) +
		                 " arguments");
	auto it = w->values.find(t);
	return it == w->values.end() ? ExtRational::bot() : it->second;
}

void WeightedStructure::declare_relation(const std::string &name, std::size_t arity)
{
	if (interp_.weights.contains(name))
		throw UsageError("'" + name + "' is already a weight symbol");
	auto [it, fresh] = interp_.relations.try_emplace(name);
	if (fresh)
		it->second.arity = arity;
	else if (it->second.arity != arity)
		throw UsageError("relation '" + name + "' redeclared with a different arity");
}

void WeightedStructure::declare_weight(const std::string &name, std::size_t arity)
{
	if (interp_.relations.contains(name))
		throw UsageError("'" + name + "' is already a relation symbol");
	auto [it, fresh] = interp_.weights.try_emplace(name);
	if (fresh)
		it->second.arity = arity;
	else if (it->second.arity != arity)
		throw UsageError("weight '" + name + "' redeclared with a different arity");
}

void WeightedStructure::add_tuple(std::string_view rel, Tuple t)
{
	auto it = interp_.relations.find(rel);
	if (it == interp_.relations.end())
		throw UsageError("unknown relation symbol '" + std::string(rel) + "'");
	it->second.tuples.insert(std::move(t));
}

void WeightedStructure::remove_tuple(std::string_view rel, const Tuple &t)
{
	auto it = interp_.relations.find(rel);
	if (it == interp_.relations.end())
		throw UsageError("unknown relation symbol '" + std::string(rel) + "'");
	it->second.tuples.erase(t);
}

void WeightedStructure::set_weight(std::string_view fn, Tuple t, ExtRational v)
{
	auto it = interp_.weights.find(fn);
	if (it == interp_.weights.end())
		throw UsageError("unknown weight symbol '" + std::string(fn) + "'");
	if (v.is_bot())
		it->second.values.erase(t);
	else
		it->second.values.insert_or_assign(std::move(t), std::move(v));
}

std::string violations_str(const std::vector<Violation> &vs)
{
	std::string out;
	for (const Violation &v : vs) {
		if (!out.empty())
			out += "; ";
		out += v.what;
		if (!v.where.empty())
			out += " at " + v.where;
	}
	return out;
}

namespace {

bool valid_element_name(const std::string &s)
{
	return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
		return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
	});
}

std::string tuple_where(const std::string &sym, const Tuple &t, const WeightedStructure &s)
{
	std::string out = sym + "(";
	for (std::size_t i = 0; i < t.size(); ++i) {
		if (i)
			out += ",";
		out += t[i] < s.size() ? s.name(t[i]) : "#" + std::to_string(t[i]);
	}
	return out + ")";
}

void check_tuple(const std::string &sym, std::size_t arity, const Tuple &t,
                 const WeightedStructure &s, std::vector<Violation> &out)
{
	if (t.size() != arity)
		out.push_back({"arity mismatch: expected " + std::to_string(arity) + ", got " +
		                   std::to_string(t.size()),
		               tuple_where(sym, t, s)});
	for (Element e : t)
		if (e >= s.size()) {
			out.push_back({"tuple component outside the universe", tuple_where(sym, t, s)});
			break;
		}
}

} // namespace

std::vector<Violation> validate_structure(const WeightedStructure &s)
{
	std::vector<Violation> out;
	if (s.size() == 0)
		out.push_back({"universe nonempty", "universe"});
	std::set<std::string> seen;
	for (const std::string &n : s.universe()) {
		if (!seen.insert(n).second)
			out.push_back({"duplicate element name", n});
		if (!valid_element_name(n))
			out.push_back({"element names must match [A-Za-z0-9_]+", "'" + n + "'"});
	}
	const Interpretation &in = s.interpretation();
	for (const auto &[name, rel] : in.relations) {
		if (in.weights.contains(name))
			out.push_back({"symbol is both a relation and a weight function", name});
		for (const Tuple &t : rel.tuples)
			check_tuple(name, rel.arity, t, s, out);
	}
	for (const auto &[name, w] : in.weights)
		for (const auto &[t, v] : w.values) {
			check_tuple(name, w.arity, t, s, out);
			if (v.is_bot())
				out.push_back({"bot stored explicitly (must be omitted)", tuple_where(name, t, s)});
		}
	return out;
}

WeightedStructure expand(const WeightedStructure &s, const Interpretation &extra)
{
	Interpretation merged = s.interpretation();
	auto clash = [&](const std::string &name) {
		return merged.relations.contains(name) || merged.weights.contains(name);
	};
	for (const auto &[name, t] : extra.relations) {
		if (clash(name) || extra.weights.contains(name))
			throw UsageError("expansion symbol '" + name + "' is already interpreted");
		merged.relations.emplace(name, t);
	}
	for (const auto &[name, t] : extra.weights) {
		if (clash(name))
			throw UsageError("expansion symbol '" + name + "' is already interpreted");
		merged.weights.emplace(name, t);
	}
	return WeightedStructure(s.universe(), std::move(merged));
}

WeightedStructure reduct(const WeightedStructure &s, const Vocabulary &voc)
{
	Interpretation kept;
	for (const auto &[name, t] : s.interpretation().relations)
		if (voc.find(name))
			kept.relations.emplace(name, t);
	for (const auto &[name, t] : s.interpretation().weights)
		if (voc.find(name))
			kept.weights.emplace(name, t);
	return WeightedStructure(s.universe(), std::move(kept));
}

bool identical(const WeightedStructure &a, const WeightedStructure &b)
{
	if (a.universe() != b.universe())
		return false;
	const Interpretation &x = a.interpretation(), &y = b.interpretation();
	if (x.relations.size() != y.relations.size() || x.weights.size() != y.weights.size())
		return false;
	for (const auto &[name, t] : x.relations) {
		const RelationTable *u = b.relation(name);
		if (!u || u->arity != t.arity || u->tuples != t.tuples)
			return false;
	}
	for (const auto &[name, t] : x.weights) {
		const WeightTable *u = b.weight(name);
		if (!u || u->arity != t.arity || u->values != t.values)
			return false;
	}
	return true;
}

} // namespace wsq
