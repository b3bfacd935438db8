/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/fnn.hpp"

#include "wsq/errors.hpp"
#include "wsq/structure_io.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>

namespace wsq {

using nlohmann::json;
namespace sym = fnn_symbols;

Vocabulary fnn_vocabulary()
{
	Vocabulary v;
	v.add({sym::weight, SymbolKind::Weight, 2});
	v.add({sym::bias, SymbolKind::Weight, 1});
	v.add({sym::input_order, SymbolKind::Relation, 2});
	v.add({sym::output_order, SymbolKind::Relation, 2});
	return v;
}

namespace {

struct Graph {
	std::vector<std::vector<Element>> preds, succs;
	std::vector<Element> topo;  // partial if cyclic
	std::vector<std::string> self_loops;
};

Graph build_graph(const WeightedStructure &s)
{
	Graph g;
	g.preds.resize(s.size());
	g.succs.resize(s.size());
	if (const WeightTable *wt = s.weight(sym::weight))
		for (const auto &[t, v] : wt->values) {
			if (t.size() != 2 || t[0] >= s.size() || t[1] >= s.size())
				continue;
			if (t[0] == t[1])
				g.self_loops.push_back(s.name(t[0]));
			g.preds[t[1]].push_back(t[0]);
			g.succs[t[0]].push_back(t[1]);
		}
	std::vector<std::size_t> indeg(s.size());
	for (Element v = 0; v < s.size(); ++v)
		indeg[v] = g.preds[v].size();
	std::queue<Element> ready;
	for (Element v = 0; v < s.size(); ++v)
		if (indeg[v] == 0)
			ready.push(v);
	while (!ready.empty()) {
		Element v = ready.front();
		ready.pop();
		g.topo.push_back(v);
		for (Element w : g.succs[v])
			if (--indeg[w] == 0)
				ready.push(w);
	}
	return g;
}

void check_order(const WeightedStructure &s, const char *rel, const std::vector<bool> &member,
                 const char *role, std::vector<Violation> &out)
{
	const RelationTable *r = s.relation(rel);
	if (!r)
		return;
	auto holds = [&](Element a, Element b) { return r->tuples.contains(Tuple{a, b}); };
	for (const Tuple &t : r->tuples) {
		if (t.size() != 2 || t[0] >= s.size() || t[1] >= s.size())
			continue;
		if (!member[t[0]] || !member[t[1]])
			out.push_back({std::string("linear order: ") + rel + " relates a non-" + role + " node",
			               rel + ("(" + s.name(t[0]) + "," + s.name(t[1]) + ")")});
	}
	std::vector<Element> nodes;
	for (Element v = 0; v < s.size(); ++v)
		if (member[v])
			nodes.push_back(v);
	for (Element a : nodes)
		if (!holds(a, a))
			out.push_back({std::string("linear order: ") + rel + " is not reflexive", s.name(a)});
	for (std::size_t i = 0; i < nodes.size(); ++i)
		for (std::size_t j = i + 1; j < nodes.size(); ++j) {
			Element a = nodes[i], b = nodes[j];
			bool ab = holds(a, b), ba = holds(b, a);
			if (ab == ba)
				out.push_back({std::string("linear order: ") + rel +
				                   (ab ? " is not antisymmetric" : " is not total"),
				               s.name(a) + "," + s.name(b)});
		}
	for (Element a : nodes)
		for (Element b : nodes)
			for (Element c : nodes)
				if (holds(a, b) && holds(b, c) && !holds(a, c)) {
					out.push_back({std::string("linear order: ") + rel + " is not transitive",
					               s.name(a) + "," + s.name(b) + "," + s.name(c)});
					return;
				}
}

} // namespace

std::vector<Violation> validate_fnn(const WeightedStructure &s)
{
	std::vector<Violation> out = validate_structure(s);
	const Vocabulary voc = s.vocabulary();
	const Vocabulary fnn_voc = fnn_vocabulary();
	for (const auto &[name, want] : fnn_voc.symbols()) {
		const Symbol *have = voc.find(name);
		if (!have)
			out.push_back({"missing FNN symbol " + symbol_str(want), "vocabulary"});
		else if (*have != want)
			out.push_back({"FNN symbol has the wrong signature, expected " + symbol_str(want),
			               symbol_str(*have)});
	}
	if (!out.empty())
		return out;

	Graph g = build_graph(s);
	for (const std::string &v : g.self_loops)
		out.push_back({"acyclic: self-loop", "wt(" + v + "," + v + ")"});
	if (g.topo.size() != s.size()) {
		std::vector<bool> placed(s.size());
		for (Element v : g.topo)
			placed[v] = true;
		std::string nodes;
		for (Element v = 0; v < s.size(); ++v)
			if (!placed[v])
				nodes += (nodes.empty() ? "" : ",") + s.name(v);
		if (g.self_loops.empty())
			out.push_back({"acyclic: edges form a cycle", nodes});
	}

	std::vector<bool> input(s.size()), output(s.size());
	for (Element v = 0; v < s.size(); ++v) {
		input[v] = g.preds[v].empty();
		output[v] = g.succs[v].empty();
		bool has_bias = s.lookup_weight(sym::bias, {v}).defined();
		if (input[v] && has_bias)
			out.push_back({"bias iff input: input node has a bias", s.name(v)});
		else if (!input[v] && !has_bias)
			out.push_back({"bias iff input: non-input node has no bias", s.name(v)});
	}
	check_order(s, sym::input_order, input, "input", out);
	check_order(s, sym::output_order, output, "output", out);
	return out;
}

FnnStructure::FnnStructure(const WeightedStructure &s)
: s_(reduct(s, fnn_vocabulary()))
{
	auto violations = validate_fnn(s_);
	if (!violations.empty())
		throw StructureError("invalid FNN: " + violations_str(violations));
	Graph g = build_graph(s_);
	topo_ = std::move(g.topo);
	in_.resize(s_.size());
	depth_.assign(s_.size(), 0);
	for (const auto &[t, w] : s_.weight(sym::weight)->values)
		in_[t[1]].emplace_back(t[0], w.value());
	for (Element v : topo_)
		for (const auto &[u, _] : in_[v])
			depth_[v] = std::max(depth_[v], depth_[u] + 1);

	auto ordered = [&](const char *rel, const std::vector<std::vector<Element>> &adj) {
		std::vector<std::pair<std::size_t, Element>> ranked;
		const RelationTable *r = s_.relation(rel);
		for (Element v = 0; v < s_.size(); ++v) {
			if (!adj[v].empty())
				continue;
			std::size_t below = std::count_if(r->tuples.begin(), r->tuples.end(),
			                                  [v](const Tuple &t) { return t[1] == v; });
			ranked.emplace_back(below, v);
		}
		std::sort(ranked.begin(), ranked.end());
		std::vector<Element> out;
		for (const auto &[_, v] : ranked)
			out.push_back(v);
		return out;
	};
	inputs_ = ordered(sym::input_order, g.preds);
	outputs_ = ordered(sym::output_order, g.succs);
}

std::vector<std::pair<Element, Element>> FnnStructure::edges() const
{
	std::vector<std::pair<Element, Element>> out;
	for (const auto &[t, _] : s_.weight(sym::weight)->values)
		out.emplace_back(t[0], t[1]);
	return out;
}

bool FnnStructure::has_edge(Element u, Element v) const
{
	return v < in_.size() && std::any_of(in_[v].begin(), in_[v].end(),
	                                     [u](const auto &e) { return e.first == u; });
}

ExtRational FnnStructure::bias(Element v) const
{
	return s_.lookup_weight(sym::bias, {v});
}

std::size_t FnnStructure::depth() const
{
	return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

namespace {

void check_input(const FnnStructure &n, std::span<const ExtRational> r)
{
	if (r.size() != n.input_dim())
		throw UsageError("input has length " + std::to_string(r.size()) + ", network expects " +
		                 std::to_string(n.input_dim()));
	for (const ExtRational &x : r)
		if (x.is_bot())
			throw UsageError("network inputs must be defined");
}

} // namespace

WeightedStructure with_input(const FnnStructure &n, std::span<const ExtRational> r)
{
	check_input(n, r);
	Interpretation extra;
	WeightTable &inp = extra.weights[sym::input];
	inp.arity = 1;
	for (std::size_t i = 0; i < r.size(); ++i)
		inp.values.emplace(Tuple{n.inputs()[i]}, r[i]);
	return expand(n.structure(), extra);
}

std::vector<ExtRational> forward(const FnnStructure &n, std::span<const ExtRational> r)
{
	check_input(n, r);
	std::vector<ExtRational> value(n.structure().size());
	for (std::size_t i = 0; i < r.size(); ++i)
		value[n.inputs()[i]] = r[i];
	for (Element v : n.topological_order()) {
		if (n.is_input(v))
			continue;
		ExtRational acc = n.bias(v);
		for (const auto &[u, w] : n.in_edges(v))
			acc = acc + ExtRational(w) * relu(value[u]);
		value[v] = std::move(acc);
	}
	std::vector<ExtRational> out;
	for (Element v : n.outputs())
		out.push_back(value[v]);
	return out;
}

FnnStructure pad(const FnnStructure &n, Element u, Element v, std::size_t k)
{
	const WeightedStructure &s = n.structure();
	if (u >= s.size() || v >= s.size() || !n.has_edge(u, v))
		throw UsageError("pad: not an edge");
	if (k == 0)
		throw UsageError("pad: relay count must be positive");
	std::vector<std::string> names = s.universe();
	std::set<std::string> taken(names.begin(), names.end());
	std::vector<Element> relays;
	for (std::size_t i = 1; i <= k; ++i) {
		std::string name = "pad_" + s.name(u) + "_" + s.name(v) + "_" + std::to_string(i);
		while (taken.contains(name))
			name += "_";
		taken.insert(name);
		relays.push_back(names.size());
		names.push_back(name);
	}
	WeightedStructure out(names, s.interpretation());
	ExtRational w = s.lookup_weight(sym::weight, {u, v});
	out.set_weight(sym::weight, {u, v}, ExtRational::bot());
	Element prev = u;
	for (Element r : relays) {
		out.set_weight(sym::weight, {prev, r}, ExtRational(1L));
		out.set_weight(sym::bias, {r}, ExtRational(0L));
		prev = r;
	}
	out.set_weight(sym::weight, {prev, v}, w);
	return FnnStructure(out);
}

Pwl to_pwl(const FnnStructure &n, std::size_t max_pieces)
{
	if (n.input_dim() != 1 || n.output_dim() != 1)
		throw UsageError("to_pwl needs a single-input single-output network");
	std::vector<Pwl> f(n.structure().size());
	for (Element v : n.topological_order()) {
		if (n.is_input(v)) {
			f[v] = Pwl::identity();
			continue;
		}
		Pwl acc = Pwl::affine(0, n.bias(v).value());
		for (const auto &[u, w] : n.in_edges(v))
			acc = acc + f[u].relu().scaled(w);
		if (acc.piece_count() > max_pieces)
			throw ResourceError("pwl of node '" + n.structure().name(v) + "' exceeds " +
			                    std::to_string(max_pieces) + " pieces");
		f[v] = std::move(acc);
	}
	return f[n.outputs().front()];
}

bool zero_query(const FnnStructure &n, std::size_t max_pieces)
{
	return to_pwl(n, max_pieces).is_zero();
}

namespace {

const json &field(const json &obj, const char *key, const std::string &where)
{
	if (!obj.is_object() || !obj.contains(key))
		throw StructureError(where + ": missing \"" + key + "\"");
	return obj.at(key);
}

std::string name_of(const json &j, const std::string &where)
{
	if (!j.is_string())
		throw StructureError(where + ": node names must be strings");
	return j.get<std::string>();
}

} // namespace

FnnStructure fnn_from_json(const json &j)
{
	std::vector<std::string> names;
	const json &nodes = field(j, "nodes", "fnn");
	if (!nodes.is_array())
		throw StructureError("fnn: nodes must be an array");
	for (const json &nd : nodes)
		names.push_back(name_of(field(nd, "name", "fnn node"), "fnn node"));

	WeightedStructure s(names);
	s.declare_weight(sym::weight, 2);
	s.declare_weight(sym::bias, 1);
	s.declare_relation(sym::input_order, 2);
	s.declare_relation(sym::output_order, 2);
	auto element = [&](const json &nm, const std::string &where) {
		std::string name = name_of(nm, where);
		auto e = s.element(name);
		if (!e)
			throw StructureError(where + ": unknown node '" + name + "'");
		return *e;
	};
	for (const json &nd : nodes)
		if (nd.contains("bias")) {
			std::string where = "bias of '" + nd.at("name").get<std::string>() + "'";
			s.set_weight(sym::bias, {element(nd.at("name"), where)}, value_from_json(nd.at("bias"), where));
		}
	if (j.contains("edges")) {
		for (const json &e : j.at("edges")) {
			Element from = element(field(e, "from", "fnn edge"), "fnn edge");
			Element to = element(field(e, "to", "fnn edge"), "fnn edge");
			std::string where = "edge " + s.name(from) + "->" + s.name(to);
			if (s.lookup_weight(sym::weight, {from, to}).defined())
				throw StructureError(where + ": listed twice");
			s.set_weight(sym::weight, {from, to}, value_from_json(field(e, "weight", where), where));
		}
	}
	for (const char *key : {"input_order", "output_order"}) {
		const char *rel = std::string(key) == "input_order" ? sym::input_order : sym::output_order;
		const json &order = field(j, key, "fnn");
		if (!order.is_array())
			throw StructureError(std::string("fnn: ") + key + " must be an array");
		std::vector<Element> seq;
		for (const json &nm : order)
			seq.push_back(element(nm, key));
		for (std::size_t a = 0; a < seq.size(); ++a)
			for (std::size_t b = a; b < seq.size(); ++b)
				s.add_tuple(rel, {seq[a], seq[b]});
	}
	return FnnStructure(s);
}

json fnn_to_json(const FnnStructure &n)
{
	const WeightedStructure &s = n.structure();
	json nodes = json::array();
	for (Element v = 0; v < s.size(); ++v) {
		json nd = {{"name", s.name(v)}};
		if (ExtRational b = n.bias(v); b.defined())
			nd["bias"] = b.str();
		nodes.push_back(nd);
	}
	json edges = json::array();
	for (const auto &[t, w] : s.weight(sym::weight)->values)
		edges.push_back({{"from", s.name(t[0])}, {"to", s.name(t[1])}, {"weight", w.str()}});
	json in = json::array(), out = json::array();
	for (Element v : n.inputs())
		in.push_back(s.name(v));
	for (Element v : n.outputs())
		out.push_back(s.name(v));
	return {{"nodes", nodes}, {"edges", edges}, {"input_order", in}, {"output_order", out}};
}

FnnStructure load_fnn(const std::filesystem::path &path)
{
	std::string text = read_file(path);
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error &e) {
		throw StructureError(std::string("malformed JSON: ") + e.what());
	}
	if (j.is_object() && j.contains("nodes"))
		return fnn_from_json(j);
	return FnnStructure(structure_from_json(j));
}

void save_fnn(const FnnStructure &n, const std::filesystem::path &path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw StructureError("cannot write '" + path.string() + "'");
	out << fnn_to_json(n).dump(2) << "\n";
}

WeightedStructure load_any_structure(const std::filesystem::path &path)
{
	std::string text = read_file(path);
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error &e) {
		throw StructureError(std::string("malformed JSON: ") + e.what());
	}
	if (j.is_object() && j.contains("nodes"))
		return fnn_from_json(j).structure();
	return structure_from_json(j);
}

FnnBuilder &FnnBuilder::input(const std::string &name)
{
	names_.push_back(name);
	inputs_.push_back(name);
	return *this;
}

FnnBuilder &FnnBuilder::node(const std::string &name, const Rational &bias)
{
	names_.push_back(name);
	biases_.emplace_back(name, bias);
	return *this;
}

FnnBuilder &FnnBuilder::edge(const std::string &from, const std::string &to, const Rational &weight)
{
	edges_.emplace_back(from, to, weight);
	return *this;
}

FnnBuilder &FnnBuilder::outputs(std::vector<std::string> names)
{
	outputs_ = std::move(names);
	explicit_outputs_ = true;
	return *this;
}

WeightedStructure FnnBuilder::structure() const
{
	WeightedStructure s(names_);
	s.declare_weight(sym::weight, 2);
	s.declare_weight(sym::bias, 1);
	s.declare_relation(sym::input_order, 2);
	s.declare_relation(sym::output_order, 2);
	for (const auto &[name, b] : biases_)
		s.set_weight(sym::bias, {s.element_or_throw(name)}, ExtRational(b));
	std::set<std::string> has_out;
	for (const auto &[from, to, w] : edges_) {
		s.set_weight(sym::weight, {s.element_or_throw(from), s.element_or_throw(to)}, ExtRational(w));
		has_out.insert(from);
	}
	std::vector<std::string> outs = outputs_;
	if (!explicit_outputs_)
		for (const std::string &n : names_)
			if (!has_out.contains(n))
				outs.push_back(n);
	auto order = [&](const char *rel, const std::vector<std::string> &seq) {
		for (std::size_t a = 0; a < seq.size(); ++a)
			for (std::size_t b = a; b < seq.size(); ++b)
				s.add_tuple(rel, {s.element_or_throw(seq[a]), s.element_or_throw(seq[b])});
	};
	order(sym::input_order, inputs_);
	order(sym::output_order, outs);
	return s;
}

} // namespace wsq
