/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/structure_io.hpp"

#include "wsq/errors.hpp"

#include <fstream>
#include <sstream>

namespace wsq {

using nlohmann::json;

std::string read_file(const std::filesystem::path &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw StructureError("cannot read '" + path.string() + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

ExtRational value_from_json(const json &v, const std::string &where)
{
	if (v.is_number_integer())
		return ExtRational(v.get<long>());
	if (!v.is_string())
		throw StructureError(where + ": value must be a string or an integer");
	std::string text = v.get<std::string>();
	if (text == "bot")
		throw StructureError(where + ": bot is expressed by omission");
	try {
		return ExtRational::parse(text);
	} catch (const std::invalid_argument &e) {
		throw StructureError(where + ": " + e.what());
	}
}

namespace {

const json &member(const json &obj, const char *key, const std::string &where)
{
	if (!obj.is_object() || !obj.contains(key))
		throw StructureError(where + ": missing \"" + key + "\"");
	return obj.at(key);
}

std::size_t arity_of(const json &obj, const std::string &where)
{
	const json &a = member(obj, "arity", where);
	if (!a.is_number_unsigned())
		throw StructureError(where + ": arity must be a nonnegative integer");
	return a.get<std::size_t>();
}

Tuple tuple_of(const json &t, const WeightedStructure &s, std::size_t arity,
               const std::string &where)
{
	if (!t.is_array())
		throw StructureError(where + ": tuple must be an array");
	if (t.size() != arity)
		throw StructureError(where + ": arity mismatch: expected " + std::to_string(arity) +
		                     ", got " + std::to_string(t.size()));
	Tuple out;
	for (const json &e : t) {
		if (!e.is_string())
			throw StructureError(where + ": tuple components must be element names");
		auto el = s.element(e.get<std::string>());
		if (!el)
			throw StructureError(where + ": unknown element '" + e.get<std::string>() + "'");
		out.push_back(*el);
	}
	return out;
}

} // namespace

WeightedStructure structure_from_json(const json &j)
{
	if (!j.is_object())
		throw StructureError("structure file must contain a JSON object");
	const json &u = member(j, "universe", "structure");
	if (!u.is_array())
		throw StructureError("universe must be an array of names");
	std::vector<std::string> names;
	for (const json &n : u) {
		if (!n.is_string())
			throw StructureError("universe entries must be strings");
		names.push_back(n.get<std::string>());
	}
	WeightedStructure s(names);

	if (j.contains("relations")) {
		for (const auto &[name, body] : j.at("relations").items()) {
			std::string where = "relation '" + name + "'";
			std::size_t arity = arity_of(body, where);
			s.declare_relation(name, arity);
			const json empty = json::array();
			const json &tuples = body.contains("tuples") ? body.at("tuples") : empty;
			if (!tuples.is_array())
				throw StructureError(where + ": tuples must be an array");
			for (const json &t : tuples)
				s.add_tuple(name, tuple_of(t, s, arity, where));
		}
	}
	if (j.contains("weights")) {
		for (const auto &[name, body] : j.at("weights").items()) {
			std::string where = "weight '" + name + "'";
			if (s.relation(name))
				throw StructureError(where + ": name already used by a relation");
			std::size_t arity = arity_of(body, where);
			s.declare_weight(name, arity);
			const json empty = json::array();
			const json &values = body.contains("values") ? body.at("values") : empty;
			if (!values.is_array())
				throw StructureError(where + ": values must be an array");
			for (const json &entry : values) {
				Tuple t = tuple_of(member(entry, "tuple", where), s, arity, where);
				ExtRational v = value_from_json(member(entry, "value", where), where);
				ExtRational prev = s.lookup_weight(name, t);
				if (prev.defined() && prev != v)
					throw StructureError(where + ": tuple listed twice with different values");
				s.set_weight(name, std::move(t), std::move(v));
			}
		}
	}
	auto violations = validate_structure(s);
	if (!violations.empty())
		throw StructureError("invalid structure: " + violations_str(violations));
	return s;
}

json structure_to_json(const WeightedStructure &s)
{
	json j;
	j["universe"] = s.universe();
	auto names = [&](const Tuple &t) {
		json a = json::array();
		for (Element e : t)
			a.push_back(s.name(e));
		return a;
	};
	json rels = json::object();
	for (const auto &[name, r] : s.interpretation().relations) {
		json tuples = json::array();
		for (const Tuple &t : r.tuples)
			tuples.push_back(names(t));
		rels[name] = {{"arity", r.arity}, {"tuples", tuples}};
	}
	json weights = json::object();
	for (const auto &[name, w] : s.interpretation().weights) {
		json values = json::array();
		for (const auto &[t, v] : w.values)
			values.push_back({{"tuple", names(t)}, {"value", v.str()}});
		weights[name] = {{"arity", w.arity}, {"values", values}};
	}
	j["relations"] = rels;
	j["weights"] = weights;
	return j;
}

WeightedStructure parse_structure(std::string_view text)
{
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error &e) {
		throw StructureError(std::string("malformed JSON: ") + e.what());
	}
	return structure_from_json(j);
}

std::string serialize_structure(const WeightedStructure &s)
{
	return structure_to_json(s).dump(2) + "\n";
}

WeightedStructure load_structure(const std::filesystem::path &path)
{
	return parse_structure(read_file(path));
}

void save_structure(const WeightedStructure &s, const std::filesystem::path &path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw StructureError("cannot write '" + path.string() + "'");
	out << serialize_structure(s);
}

} // namespace wsq
