/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/ast.hpp"

namespace wsq {

enum class CondElimination {
	/// Keep if-then-else nodes.
	Keep,
	/// if phi then a else b  ->  (sum {z : phi} a) / n + (sum {z : not phi} b) / n
	/// with n = count {z : z = z} and z fresh.  The unselected branch is
	/// summed over an empty set, so its value never leaks into the result.
	Guarded,
	/// eta * a + (1 - eta) * b with eta = count {z : phi} / count {z : z = z}.
	/// Agrees with the conditional only when both branches are defined: a bot
	/// in the unselected branch makes the whole term bot.
	Blend,
};

struct DesugarOptions {
	CondElimination cond = CondElimination::Keep;
};

/// Rewrites every sugar node into the core constructors:
///   count {x : phi}        ->  sum {x : phi} 1
///   avg {x : phi} t        ->  (sum {x : phi} t) / (sum {x : phi} 1)
///   max {x : phi} t        ->  avg {x : phi'} t,
///       phi' = phi and forall x' (phi[x'/x] implies t[x'/x] <= t), min dually
///   literals               ->  sums, products and quotients of 0 and 1 (bot -> 1/0)
///   t1 < t2 and friends    ->  <= and not
///   edge(x, y)             ->  not (wt(x, y) <= bot and bot <= wt(x, y))
/// Shared subexpressions stay shared.
ExprPtr desugar(const ExprPtr &e, DesugarOptions opts = {});

/// The core term denoting q, built from 0, 1, +, -, * and /.
ExprPtr literal_term(const ExtRational &q);

} // namespace wsq
