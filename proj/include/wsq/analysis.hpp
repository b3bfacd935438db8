/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/ast.hpp"
#include "wsq/errors.hpp"
#include "wsq/structures.hpp"

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace wsq {

/// Inconsistent symbol use inside one expression, e.g. a symbol with two
/// arities or an intensional symbol used as a relation.
class VocabularyError : public UsageError {
public:
	VocabularyError(const std::string &msg, SourcePos pos)
	: UsageError(pos.known() ? pos.str() + ": " + msg : msg)
	, message_(msg)
	, pos_(pos)
	{}
	SourcePos pos() const { return pos_; }
	/// The message without the position prefix.
	const std::string &message() const { return message_; }

private:
	std::string message_;
	SourcePos pos_;
};

std::set<std::string> free_vars(const Expr &e);

/// Per-node free variables and open weight symbols (those with an occurrence
/// not bound by an ifp inside the node), cached by node address.  The
/// expressions must outlive the index.
class ExprIndex {
public:
	const std::set<std::string> &free_vars(const Expr &e);
	const std::set<std::string> &open_symbols(const Expr &e);

private:
	std::unordered_map<const Expr *, std::set<std::string>> free_;
	std::unordered_map<const Expr *, std::set<std::string>> open_;
};

/// Every variable name occurring in `e`, bound or free.
std::set<std::string> variable_names(const Expr &e);

/// A name of the form `<base>'<n>` not in `taken`.
std::string fresh_variable(const std::string &base, const std::set<std::string> &taken);

struct SymbolReport {
	/// Relation and weight symbols not bound by an enclosing ifp.
	Vocabulary extensional;
	/// Symbols bound by some ifp, with their arities.
	std::set<std::pair<std::string, std::size_t>> intensional;
};

/// Also the well-formedness check: throws VocabularyError when a symbol is
/// used with two arities or kinds, or an ifp-bound symbol is used with the
/// wrong arity or as a relation.  edge(x, y) contributes wt/2.
SymbolReport vocabulary_of(const Expr &e);

struct FragmentViolation {
	std::string message;
	SourcePos pos;
	/// Child indices from the root to the offending node.
	std::vector<std::size_t> path;
};

/// Scalar-fragment check.  A subterm carries an intensional symbol when it
/// contains a free occurrence of a symbol bound by an ifp enclosing that
/// subterm.  Products need one intensional-free factor; divisors must be
/// intensional-free.  The aggregates are judged by their desugared form:
/// avg divides by a count of the guard, and min/max compare the body inside
/// that guard.
std::vector<FragmentViolation> check_scalar_fragment(const Expr &e);

/// Renames free variables per `renaming`, renaming binders where they would
/// capture.  Shared subterms stay shared where nothing changes.
ExprPtr rename_free(const ExprPtr &e, const std::map<std::string, std::string> &renaming);

/// A top-level bare application `S(x...)` parses as a weight atom.  When the
/// vocabulary interprets S as a relation it becomes a relation atom, and a
/// binary `edge` absent from the vocabulary becomes the edge test.
ExprPtr resolve_top_level(const ExprPtr &e, const Vocabulary &voc);

} // namespace wsq
