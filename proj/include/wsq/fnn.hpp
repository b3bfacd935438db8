/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/numerics.hpp"
#include "wsq/pwl.hpp"
#include "wsq/structures.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace wsq {

/// Symbol names of the FNN vocabulary and its input expansion.
namespace fnn_symbols {
inline constexpr const char *weight = "wt";
inline constexpr const char *bias = "bias";
inline constexpr const char *input_order = "le_in";
inline constexpr const char *output_order = "le_out";
inline constexpr const char *input = "inp";
} // namespace fnn_symbols

/// The vocabulary {wt/2, bias/1, le_in/2, le_out/2}.
Vocabulary fnn_vocabulary();

/// Checks acyclicity, bias(v) = bot iff v has in-degree 0, and that le_in and
/// le_out are linear orders on exactly the input and output nodes.
std::vector<Violation> validate_fnn(const WeightedStructure &s);

/// A validated FNN with its derived graph data.
///
/// Edges are the pairs with wt(u, v) != bot.  Node values follow the
/// convention that relu is applied when a value is fed forward, so outputs
/// carry no activation.
class FnnStructure {
public:
	/// Reduces `s` to the FNN vocabulary and validates it; throws StructureError.
	explicit FnnStructure(const WeightedStructure &s);

	const WeightedStructure &structure() const { return s_; }

	std::size_t input_dim() const { return inputs_.size(); }
	std::size_t output_dim() const { return outputs_.size(); }
	const std::vector<Element> &inputs() const { return inputs_; }
	const std::vector<Element> &outputs() const { return outputs_; }
	const std::vector<Element> &topological_order() const { return topo_; }

	/// (u, wt(u, v)) for every edge into v.
	const std::vector<std::pair<Element, Rational>> &in_edges(Element v) const { return in_[v]; }
	std::vector<std::pair<Element, Element>> edges() const;
	bool has_edge(Element u, Element v) const;

	/// bias(v); bot exactly on input nodes.
	ExtRational bias(Element v) const;
	bool is_input(Element v) const { return in_[v].empty(); }

	std::size_t depth(Element v) const { return depth_[v]; }
	/// Longest path from an input node.
	std::size_t depth() const;

private:
	WeightedStructure s_;
	std::vector<Element> inputs_;
	std::vector<Element> outputs_;
	std::vector<Element> topo_;
	std::vector<std::vector<std::pair<Element, Rational>>> in_;
	std::vector<std::size_t> depth_;
};

/// Expansion by a unary `inp` with inp(u_i) = r_i along the input order.
/// Throws UsageError on a length mismatch or an undefined input.
WeightedStructure with_input(const FnnStructure &n, std::span<const ExtRational> r);

/// Node values in topological order; the output vector follows le_out.
std::vector<ExtRational> forward(const FnnStructure &n, std::span<const ExtRational> r);

/// Replaces edge (u, v) by a chain u -> w_1 -> ... -> w_k -> v of fresh
/// bias-0 relay nodes.  The first k edges have weight 1, the last carries
/// wt(u, v).  Throws UsageError if (u, v) is not an edge or k == 0.
FnnStructure pad(const FnnStructure &n, Element u, Element v, std::size_t k);

inline constexpr std::size_t default_max_pwl_pieces = 1'000'000;

/// Exact function of a single-input single-output net.  Throws UsageError on
/// other dimensions and ResourceError when a node needs more than
/// `max_pieces` pieces.
Pwl to_pwl(const FnnStructure &n, std::size_t max_pieces = default_max_pwl_pieces);

/// Whether the function of a single-input single-output net is identically 0.
bool zero_query(const FnnStructure &n, std::size_t max_pieces = default_max_pwl_pieces);

/// FNN convenience file:
///
///   {"nodes": [{"name": "u"}, {"name": "v", "bias": "1"}],
///    "edges": [{"from": "u", "to": "v", "weight": "3"}],
///    "input_order": ["u"], "output_order": ["v"]}
///
/// le_in / le_out are materialized as reflexive linear orders.  Throws
/// StructureError on malformed input or an invalid FNN.
FnnStructure fnn_from_json(const nlohmann::json &j);
nlohmann::json fnn_to_json(const FnnStructure &n);
FnnStructure load_fnn(const std::filesystem::path &path);
void save_fnn(const FnnStructure &n, const std::filesystem::path &path);

/// Reads either a structure file or an FNN convenience file (detected by a
/// top-level "nodes" key) into a weighted structure.
WeightedStructure load_any_structure(const std::filesystem::path &path);

/// Programmatic construction of FNN structures from named nodes.
class FnnBuilder {
public:
	FnnBuilder &input(const std::string &name);
	FnnBuilder &node(const std::string &name, const Rational &bias);
	FnnBuilder &edge(const std::string &from, const std::string &to, const Rational &weight);
	/// Output order; defaults to the order in which out-degree-0 nodes were declared.
	FnnBuilder &outputs(std::vector<std::string> names);

	/// The raw structure, unvalidated.
	WeightedStructure structure() const;
	FnnStructure build() const { return FnnStructure(structure()); }

private:
	std::vector<std::string> names_;
	std::vector<std::string> inputs_;
	std::vector<std::pair<std::string, Rational>> biases_;
	std::vector<std::tuple<std::string, std::string, Rational>> edges_;
	std::vector<std::string> outputs_;
	bool explicit_outputs_ = false;
};

} // namespace wsq
