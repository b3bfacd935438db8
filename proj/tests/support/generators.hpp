/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/ast.hpp"
#include "wsq/structures.hpp"

#include <random>

namespace gen {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
long uniform(Rng &rng, long lo, long hi);
bool coin(Rng &rng, double p = 0.5);

/// Small rationals: numerator in [-max_num, max_num], denominator in [1, max_den].
wsq::ExtRational rational(Rng &rng, long max_num = 5, long max_den = 3);

/// Structures over R/1, E/2, P/0, f/1, g/2, c/0, wt/2 with 1..max_size
/// elements.  With probability `drop` one symbol is left out.  With
/// `total_weights` every weight function is defined everywhere.
wsq::WeightedStructure structure(Rng &rng, std::size_t max_size = 4, double drop = 0.05, bool total_weights = false);

/// The variables every generated expression may leave free.
const std::vector<std::string> &free_pool();

struct ExprOptions {
	int depth = 4;
	double ifp_rate = 0.08;
	bool sugar = true;
	/// No division, bot literals, avg/min/max or ifp: on structures with
	/// total weights every term is defined.
	bool defined_only = false;
};

wsq::ExprPtr formula(Rng &rng, ExprOptions opts = {});
wsq::ExprPtr term(Rng &rng, ExprOptions opts = {});
/// A formula or a term with equal probability.
wsq::ExprPtr expression(Rng &rng, ExprOptions opts = {});

/// Binds every pool variable to a random element.
std::map<std::string, wsq::Element> assignment(Rng &rng, const wsq::WeightedStructure &s);

} // namespace gen
