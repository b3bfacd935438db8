/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/numerics.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsq {

enum class SymbolKind { Relation, Weight };

struct Symbol {
	std::string name;
	SymbolKind kind = SymbolKind::Relation;
	std::size_t arity = 0;

	friend bool operator==(const Symbol &, const Symbol &) = default;
};

/// "wt/2" for weight functions, "le_in/2 (relation)" for relations.
std::string symbol_str(const Symbol &s);

class Vocabulary {
public:
	/// Adding a name twice is fine if the signature agrees; a clash throws UsageError.
	void add(const Symbol &s);

	const Symbol *find(std::string_view name) const;
	bool empty() const { return symbols_.empty(); }
	std::size_t size() const { return symbols_.size(); }

	/// Every symbol of `other` is present here under the same name.
	bool includes_names_of(const Vocabulary &other) const;

	const std::map<std::string, Symbol, std::less<>> &symbols() const { return symbols_; }

	/// Comma-separated symbol_str of every symbol in name order, or "{}".
	std::string str() const;

	friend bool operator==(const Vocabulary &, const Vocabulary &) = default;

private:
	std::map<std::string, Symbol, std::less<>> symbols_;
};

/// Universe elements are indices into the stored universe order.
using Element = std::size_t;
using Tuple = std::vector<Element>;

struct RelationTable {
	std::size_t arity = 0;
	std::set<Tuple> tuples;
};

/// Sparse: tuples absent from `values` denote bot.
struct WeightTable {
	std::size_t arity = 0;
	std::map<Tuple, ExtRational> values;
};

/// Interpretations of a set of symbols, without a universe.
struct Interpretation {
	std::map<std::string, RelationTable, std::less<>> relations;
	std::map<std::string, WeightTable, std::less<>> weights;
};

/// A finite universe of named elements with relation and weight-function tables.
///
/// Construction does not enforce the structure invariants, so malformed
/// instances can be represented and reported by validate_structure().
/// Evaluation only ever reads a structure.
class WeightedStructure {
public:
	WeightedStructure() = default;
	explicit WeightedStructure(std::vector<std::string> universe, Interpretation interp = {});

	std::size_t size() const { return universe_.size(); }
	const std::vector<std::string> &universe() const { return universe_; }
	const std::string &name(Element e) const { return universe_.at(e); }
	std::optional<Element> element(std::string_view name) const;
	/// Throws UsageError for unknown names.
	Element element_or_throw(std::string_view name) const;

	const Interpretation &interpretation() const { return interp_; }
	Vocabulary vocabulary() const;

	const RelationTable *relation(std::string_view name) const;
	const WeightTable *weight(std::string_view name) const;

	/// Throws UsageError on unknown symbol or arity mismatch.
	bool lookup_relation(std::string_view rel, const Tuple &t) const;
	/// bot for absent tuples; throws UsageError on unknown symbol or arity mismatch.
	ExtRational lookup_weight(std::string_view fn, const Tuple &t) const;

	void declare_relation(const std::string &name, std::size_t arity);
	void declare_weight(const std::string &name, std::size_t arity);
	void add_tuple(std::string_view rel, Tuple t);
	void remove_tuple(std::string_view rel, const Tuple &t);
	/// Setting bot erases the entry.
	void set_weight(std::string_view fn, Tuple t, ExtRational v);

private:
	std::vector<std::string> universe_;
	std::unordered_map<std::string, Element> index_;
	Interpretation interp_;
};

struct Violation {
	std::string what;
	std::string where;

	friend bool operator==(const Violation &, const Violation &) = default;
};

std::string violations_str(const std::vector<Violation> &vs);

/// Every invariant breach with its location; empty means valid.
std::vector<Violation> validate_structure(const WeightedStructure &s);

/// Same universe, old symbols untouched, `extra` symbols added.
/// Throws UsageError when an extra name is already interpreted.
WeightedStructure expand(const WeightedStructure &s, const Interpretation &extra);

/// Keeps only the symbols named in `voc`.
WeightedStructure reduct(const WeightedStructure &s, const Vocabulary &voc);

/// Same universe names, tuples and weights.
bool identical(const WeightedStructure &a, const WeightedStructure &b);

} // namespace wsq
