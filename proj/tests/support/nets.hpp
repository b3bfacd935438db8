/* SPDX-License-Identifier: Apache-2.0 */

// Plain network description with its own forward pass, independent of the
// library's FNN code, plus random network families.

#pragma once

#include "generators.hpp"

#include "wsq/structures.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace nets {

struct Edge {
	std::size_t from, to;
	mpq_class weight;
};

struct Net {
	std::vector<std::string> names;
	std::vector<std::optional<mpq_class>> bias; // nullopt exactly on inputs
	std::vector<Edge> edges;
	std::vector<std::size_t> inputs;  // in input order
	std::vector<std::size_t> outputs; // in output order

	std::size_t add_node(std::string name, std::optional<mpq_class> b = std::nullopt);
	void add_edge(std::size_t from, std::size_t to, mpq_class w) { edges.push_back({from, to, std::move(w)}); }

	/// Value of every node: inputs take r, other nodes bias + sum w * relu(value).
	std::vector<mpq_class> values(const std::vector<mpq_class> &r) const;
	std::vector<mpq_class> forward(const std::vector<mpq_class> &r) const;
	/// Longest path from an input, per node.
	std::vector<std::size_t> depths() const;
	std::size_t depth() const;

	/// The wt/bias/le_in/le_out encoding; le_in and le_out reflexive.
	wsq::WeightedStructure structure() const;
	/// Same plus inp on the inputs.
	wsq::WeightedStructure structure_with_input(const std::vector<mpq_class> &r) const;

	/// Reads back an encoding produced by the library.
	static Net from_structure(const wsq::WeightedStructure &s);
};

/// Layered random net with `depth` layers after the inputs, every layer of
/// width in [1, max_width], every non-output node feeding a later layer and
/// every layer-k node fed from layer k-1; extra skip edges at random.
Net random_layered(gen::Rng &rng, std::size_t depth, std::size_t max_width, std::size_t inputs,
                   std::size_t outputs_max, long max_num, long max_den);

/// Single input u, hidden layer of 1..max_hidden nodes, one output o; skip
/// edge u -> o with probability 1/2.
Net random_depth2(gen::Rng &rng, std::size_t max_hidden);

/// relu(x) - relu(x - 1) through two hidden units.
Net clamp();

mpq_class random_q(gen::Rng &rng, long max_num, long max_den);

} // namespace nets
