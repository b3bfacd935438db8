/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/ast.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wsq::stdlib {

/// Graph and FNN statistics:
///   edges_count      sum over (x, y) with edge(x, y) of 1
///   triangles_count  ordered triangles
///   min_wt_triangle  formula in x, y, z: a triangle of least total weight
///   weights_count    edges plus defined biases
/// Throws UsageError for other names.
ExprPtr make_basic(const std::string &name);

/// Builds the formula edge(from, to) used by the FNN evaluation terms.
using EdgeFormula = std::function<ExprPtr(const std::string &from, const std::string &to)>;

/// eval_d(x): the value of node x when its depth is at most d, else bot.
/// The unrolled term shares each level's subterm, so its size is linear in d.
ExprPtr make_eval_at(std::size_t d, const std::string &x = "x", const EdgeFormula &edge = {});

/// With i: the closed term eval_{d,i}, the i-th output in the output order,
/// bot when i exceeds the output dimension or some output lies deeper than
/// d.  Without i: the open term eval_d(x).  Throws UsageError for i = 0.
ExprPtr make_eval(std::size_t d, std::optional<std::size_t> i = std::nullopt);

/// ifp (F(x) <- if inp(x) != bot then inp(x) else bias(x) + sum ...)(x),
/// the value at node x at any depth.
ExprPtr make_eval_node_term(const std::string &x = "x");

/// avg over outputs of the node evaluation term: the network output for
/// single-output nets.
ExprPtr make_eval_node();

/// Formula in x0, y0: (x0, y0) is an edge and deleting it leaves eval_d at
/// every output unchanged.
ExprPtr make_useless(std::size_t d);

/// Closed term over a single-input, single-output FNN of depth at most 2
/// expanded by weight constants lo() and hi() with lo <= hi: the exact
/// integral of the network function over [lo, hi].
///
/// Candidate points are lo, hi, 0 (when strictly inside) and the hidden-unit
/// kinks -bias(h) / wt(u, h) lying strictly inside (lo, hi) and above 0.  The
/// trapezoid rule is exact between adjacent candidates; equal candidates
/// from different hidden units are divided out by their multiplicity.
/// Other structures give unspecified values.
ExprPtr make_integrate_2_1();

/// ifp (F(x) <- if exists y edge(y, x) then (sum F(y)) * (sum F(y)) else 2)(x).
ExprPtr make_squaring(const std::string &x = "x");

/// A named generator addressable as builtin:<name> k=v ...
struct Builtin {
	std::string name;
	/// Accepted parameter names; each takes a non-negative integer.
	std::vector<std::string> params;
	std::vector<std::string> required;
	std::string summary;
	std::function<ExprPtr(const std::map<std::string, std::size_t> &)> make;
};

const std::vector<Builtin> &builtins();

/// Throws UsageError on an unknown name, unknown parameter, missing
/// required parameter or malformed value.
ExprPtr make_builtin(const std::string &name, const std::map<std::string, std::string> &params);

} // namespace wsq::stdlib
