/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/ast.hpp"
#include "wsq/numerics.hpp"
#include "wsq/structures.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace wsq {

/// Variables to universe elements.
using Assignment = std::map<std::string, Element>;

/// Truth value of a formula or value of a term.
class Value {
public:
	Value(bool b) : v_(b) {}
	Value(ExtRational q) : v_(std::move(q)) {}

	bool is_formula() const { return std::holds_alternative<bool>(v_); }
	/// Throws UsageError when the value is numeric.
	bool truth() const;
	/// Throws UsageError when the value is Boolean.
	const ExtRational &number() const;
	/// "true", "false", "bot" or the canonical rational.
	std::string str() const;

	friend bool operator==(const Value &, const Value &) = default;

private:
	std::variant<bool, ExtRational> v_;
};

/// One completed fixed-point computation.
struct FixpointRun {
	std::string symbol;
	std::size_t arity = 0;
	std::size_t universe_size = 0;
	/// Least i with F^(i) = F^(i+1).
	std::size_t rounds = 0;
	std::size_t defined_cells = 0;
	std::size_t total_cells = 0;
};

inline constexpr std::size_t default_max_fixpoint_cells = 1'000'000;
inline constexpr std::size_t default_max_summands = 10'000'000;

struct EvalOptions {
	/// Cap on |A|^k for one fixed-point table.
	std::size_t max_fixpoint_cells = default_max_fixpoint_cells;
	/// Cap on the tuples enumerated by one sum or aggregate.
	std::size_t max_summands = default_max_summands;
	/// Verify after every round that defined entries are unchanged and that
	/// the run stops within |A|^k rounds; a breach throws std::logic_error.
	bool check_fixpoint_invariants = true;
	/// Enumerate the universe in reverse order inside sums and quantifiers.
	bool reverse_iteration = false;
	/// Called after each fixed-point run.
	std::function<void(const FixpointRun &)> on_fixpoint;
};

/// Value of `e` on `s` under `env`.
///
/// If `e` mentions a symbol name `s` does not interpret, the result is false
/// for formulas and bot for terms.  A symbol `s` interprets under the same
/// name but with another kind or arity is a UsageError.  Free variables
/// missing from `env` raise UnboundVariableError; elements outside the
/// universe raise UsageError.  Caps raise ResourceError.
Value evaluate(const Expr &e, const WeightedStructure &s, const Assignment &env = {},
               const EvalOptions &opts = {});

/// Parses `text`, resolves a top-level bare atom against `s` and evaluates.
Value evaluate_text(std::string_view text, const WeightedStructure &s, const Assignment &env = {},
                    const EvalOptions &opts = {});

/// Dense table of an intensional symbol after the fixed point is reached.
struct FixpointTable {
	std::string symbol;
	std::size_t arity = 0;
	std::size_t universe_size = 0;
	/// Row-major over A^k with the first component most significant.
	std::vector<ExtRational> cells;
	std::size_t rounds = 0;

	const ExtRational &at(const Tuple &t) const;
};

/// Runs ifp (F(bound) <- body) from the all-bot table: each round fills the
/// still-undefined entries whose body value is defined, computed against the
/// previous round's table, and the run stops at the first round that changes
/// nothing.  Other free variables of `body` are read from `env`.
FixpointTable ifp_iterate(const std::string &fn, const std::vector<std::string> &bound, const ExprPtr &body,
                          const WeightedStructure &s, const Assignment &env = {}, const EvalOptions &opts = {});

} // namespace wsq
