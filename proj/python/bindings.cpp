/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/analysis.hpp"
#include "wsq/desugar.hpp"
#include "wsq/errors.hpp"
#include "wsq/eval.hpp"
#include "wsq/fnn.hpp"
#include "wsq/parser.hpp"
#include "wsq/printer.hpp"
#include "wsq/pwl.hpp"
#include "wsq/stdlib.hpp"
#include "wsq/structure_io.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace wsq;

namespace {

// Python numbers cross the boundary as text: int, Fraction and str all
// render to something ExtRational::parse accepts.  None is bot.
ExtRational to_ext(const py::handle &v)
{
	if (v.is_none())
		return ExtRational::bot();
	try {
		return ExtRational::parse(py::str(v).cast<std::string>());
	} catch (const std::invalid_argument &) {
		throw py::value_error("not a rational: " + py::repr(v).cast<std::string>());
	}
}

py::object from_ext(const ExtRational &q)
{
	if (q.is_bot())
		return py::none();
	static py::object fraction = py::module_::import("fractions").attr("Fraction");
	return fraction(q.str());
}

py::object from_value(const Value &v)
{
	if (v.is_formula())
		return py::bool_(v.truth());
	return from_ext(v.number());
}

std::vector<ExtRational> to_vector(const py::iterable &xs)
{
	std::vector<ExtRational> out;
	for (const py::handle &x : xs)
		out.push_back(to_ext(x));
	return out;
}

py::list from_vector(const std::vector<ExtRational> &xs)
{
	py::list out;
	for (const auto &x : xs)
		out.append(from_ext(x));
	return out;
}

Assignment to_assignment(const WeightedStructure &s, const std::map<std::string, std::string> &env)
{
	Assignment out;
	for (const auto &[var, elem] : env)
		out[var] = s.element_or_throw(elem);
	return out;
}

ExprPtr query_of(const std::string &text, const WeightedStructure &s)
{
	return resolve_top_level(parse(text), s.vocabulary());
}

py::dict check_query(const std::string &text)
{
	ExprPtr e = parse(text);
	SymbolReport rep = vocabulary_of(*e);
	py::dict out;
	py::list free, ext, intens, violations;
	for (const auto &v : free_vars(*e))
		free.append(v);
	for (const auto &[name, sym] : rep.extensional.symbols())
		ext.append(py::make_tuple(name, sym.arity, sym.kind == SymbolKind::Weight ? "weight" : "relation"));
	for (const auto &[name, arity] : rep.intensional)
		intens.append(py::make_tuple(name, arity));
	for (const auto &v : check_scalar_fragment(*e))
		violations.append(py::make_tuple(v.message, v.pos.line, v.pos.column));
	out["free_variables"] = free;
	out["extensional"] = ext;
	out["intensional"] = intens;
	out["in_fragment"] = violations.empty();
	out["violations"] = violations;
	return out;
}

} // namespace

PYBIND11_MODULE(_wsq, m)
{
	m.doc() = "Weighted structure queries: exact evaluation over rationals with bot.";

	// Translators run newest first, so the base class goes in first.
	py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
	py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
	py::register_exception<UnboundVariableError>(m, "UnboundVariableError", PyExc_KeyError);
	py::register_exception<SymbolMismatchError>(m, "SymbolMismatchError", PyExc_TypeError);
	py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
	py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

	py::class_<WeightedStructure>(m, "Structure")
	    .def_static("load", &load_any_structure, py::arg("path"),
	                "Reads a structure file or an FNN convenience file.")
	    .def_static(
	        "parse", [](const std::string &text) { return parse_structure(text); }, py::arg("text"))
	    .def("dumps", &serialize_structure)
	    .def("save", &save_structure, py::arg("path"))
	    .def_property_readonly("universe", [](const WeightedStructure &s) {
		    std::vector<std::string> names;
		    for (Element e = 0; e < s.size(); ++e)
			    names.push_back(s.name(e));
		    return names;
	    })
	    .def("__len__", &WeightedStructure::size)
	    .def("validate", [](const WeightedStructure &s) {
		    std::vector<std::pair<std::string, std::string>> out;
		    for (const auto &v : validate_structure(s))
			    out.push_back({v.what, v.where});
		    return out;
	    });

	py::class_<Pwl>(m, "Pwl")
	    .def_property_readonly("breakpoints", [](const Pwl &p) {
		    std::vector<ExtRational> bs(p.breakpoints().begin(), p.breakpoints().end());
		    return from_vector(bs);
	    })
	    .def_property_readonly("pieces", [](const Pwl &p) {
		    py::list out;
		    for (const Affine &a : p.pieces())
			    out.append(py::make_tuple(from_ext(a.slope), from_ext(a.intercept)));
		    return out;
	    })
	    .def("__call__", [](const Pwl &p, const py::object &x) { return from_ext(p(to_ext(x).value())); })
	    .def(
	        "integral",
	        [](const Pwl &p, const py::object &lo, const py::object &hi) {
		        return from_ext(pwl_integral(p, to_ext(lo), to_ext(hi)));
	        },
	        py::arg("lo"), py::arg("hi"))
	    .def("is_zero", &Pwl::is_zero)
	    .def("__str__", &Pwl::str)
	    .def(py::self == py::self);

	py::class_<FnnStructure>(m, "Fnn")
	    .def(py::init<const WeightedStructure &>(), py::arg("structure"))
	    .def_static("load", &load_fnn, py::arg("path"))
	    .def("save", [](const FnnStructure &n, const std::filesystem::path &p) { save_fnn(n, p); })
	    .def_property_readonly("structure", &FnnStructure::structure)
	    .def_property_readonly("input_dim", &FnnStructure::input_dim)
	    .def_property_readonly("output_dim", &FnnStructure::output_dim)
	    .def_property_readonly("depth", py::overload_cast<>(&FnnStructure::depth, py::const_))
	    .def(
	        "forward",
	        [](const FnnStructure &n, const py::iterable &r) { return from_vector(forward(n, to_vector(r))); },
	        py::arg("inputs"))
	    .def(
	        "with_input",
	        [](const FnnStructure &n, const py::iterable &r) { return with_input(n, to_vector(r)); },
	        py::arg("inputs"))
	    .def(
	        "pad",
	        [](const FnnStructure &n, const std::string &u, const std::string &v, std::size_t k) {
		        const WeightedStructure &s = n.structure();
		        return pad(n, s.element_or_throw(u), s.element_or_throw(v), k);
	        },
	        py::arg("src"), py::arg("dst"), py::arg("k"))
	    .def("to_pwl", [](const FnnStructure &n) { return to_pwl(n); })
	    .def("is_zero", [](const FnnStructure &n) { return zero_query(n); });

	m.def(
	    "evaluate",
	    [](const std::string &query, const WeightedStructure &s, const std::map<std::string, std::string> &env) {
		    return from_value(evaluate(*query_of(query, s), s, to_assignment(s, env)));
	    },
	    py::arg("query"), py::arg("structure"), py::arg("env") = std::map<std::string, std::string>{},
	    "Value of a query: bool for formulas, Fraction for terms, None for bot.");

	m.def("check", &check_query, py::arg("query"),
	      "Free variables, vocabulary and scalar-fragment verdict of a query.");

	m.def(
	    "format", [](const std::string &query) { return print(*parse(query)); }, py::arg("query"));

	m.def(
	    "desugar",
	    [](const std::string &query, const std::string &cond) {
		    DesugarOptions o;
		    if (cond == "guarded")
			    o.cond = CondElimination::Guarded;
		    else if (cond == "blend")
			    o.cond = CondElimination::Blend;
		    else if (cond != "keep")
			    throw py::value_error("cond must be keep, guarded or blend");
		    return print(*desugar(parse(query), o));
	    },
	    py::arg("query"), py::arg("cond") = "keep");

	m.def(
	    "builtin",
	    [](const std::string &name, const py::kwargs &params) {
		    std::map<std::string, std::string> ps;
		    for (const auto &[k, v] : params)
			    ps[py::str(k).cast<std::string>()] = py::str(v).cast<std::string>();
		    return print(*stdlib::make_builtin(name, ps));
	    },
	    py::arg("name"), "Query text of a library query such as builtin('eval', d=3, i=1).");

	m.def("builtins", [] {
		std::vector<std::pair<std::string, std::string>> out;
		for (const auto &b : stdlib::builtins())
			out.push_back({b.name, b.summary});
		return out;
	});
}
