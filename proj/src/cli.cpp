/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/cli.hpp"

#include "wsq/analysis.hpp"
#include "wsq/errors.hpp"
#include "wsq/eval.hpp"
#include "wsq/fnn.hpp"
#include "wsq/parser.hpp"
#include "wsq/printer.hpp"
#include "wsq/stdlib.hpp"
#include "wsq/structure_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace wsq::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s)
{
	std::size_t b = s.find_first_not_of(" \t\r\n");
	if (b == std::string_view::npos)
		return {};
	std::size_t e = s.find_last_not_of(" \t\r\n");
	return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string &s, char sep)
{
	std::vector<std::string> out;
	std::string item;
	std::istringstream is(s);
	while (std::getline(is, item, sep))
		out.push_back(trim(item));
	return out;
}

std::vector<std::string> words(const std::string &s)
{
	std::vector<std::string> out;
	std::istringstream is(s);
	std::string w;
	while (is >> w)
		out.push_back(w);
	return out;
}

std::pair<std::string, std::string> key_value(const std::string &kv, const char *what)
{
	auto eq = kv.find('=');
	if (eq == std::string::npos || eq == 0)
		throw UsageError(std::string("expected ") + what + ", got '" + kv + "'");
	return {trim(kv.substr(0, eq)), trim(kv.substr(eq + 1))};
}

ExtRational number_arg(const std::string &text)
{
	try {
		return ExtRational::parse(trim(text));
	} catch (const std::invalid_argument &) {
		throw UsageError("not a number: '" + text + "'");
	}
}

std::vector<ExtRational> number_list(const std::string &csv)
{
	std::vector<ExtRational> out;
	if (trim(csv).empty())
		return out;
	for (const std::string &item : split(csv, ','))
		out.push_back(number_arg(item));
	return out;
}

struct Caps {
	std::size_t fixpoint_cells = default_max_fixpoint_cells;
	std::size_t summands = default_max_summands;
	std::size_t pwl_pieces = default_max_pwl_pieces;
};

/// What a query argument or REPL line denotes: builtin:<name> k=v ..., a
/// path to a query file, or query text.
ExprPtr query_expr(const std::string &arg)
{
	std::string q = trim(arg);
	if (q.rfind("builtin:", 0) == 0) {
		std::vector<std::string> ws = words(q.substr(8));
		if (ws.empty())
			throw UsageError("builtin: needs a name");
		std::map<std::string, std::string> params;
		for (std::size_t i = 1; i < ws.size(); ++i)
			params.insert(key_value(ws[i], "k=v"));
		return stdlib::make_builtin(ws[0], params);
	}
	std::error_code ec;
	if (!q.empty() && q.find('\n') == std::string::npos && std::filesystem::is_regular_file(q, ec))
		return parse(read_file(q));
	return parse(q);
}

struct Settings {
	std::optional<std::string> input;
	std::map<std::string, std::string> consts;
	std::map<std::string, std::string> binds;
	bool json = false;
	Caps caps;

	/// `s` expanded by inp (from the input list) and the weight constants.
	WeightedStructure effective(const WeightedStructure &s) const
	{
		WeightedStructure out = s;
		if (input) {
			FnnStructure n(s);
			std::vector<ExtRational> r = number_list(*input);
			if (r.size() != n.input_dim())
				throw UsageError("input has length " + std::to_string(r.size()) + ", network expects " +
				                 std::to_string(n.input_dim()));
			WeightTable t{1, {}};
			for (std::size_t i = 0; i < r.size(); ++i) {
				if (r[i].is_bot())
					throw UsageError("network inputs must be defined");
				t.values[{n.inputs()[i]}] = r[i];
			}
			Interpretation extra;
			extra.weights.emplace(fnn_symbols::input, std::move(t));
			out = expand(out, extra);
		}
		if (!consts.empty()) {
			Interpretation extra;
			for (const auto &[name, text] : consts) {
				WeightTable t{0, {}};
				ExtRational v = number_arg(text);
				if (v.defined())
					t.values[{}] = v;
				extra.weights.emplace(name, std::move(t));
			}
			out = expand(out, extra);
		}
		return out;
	}

	Assignment assignment(const WeightedStructure &s) const
	{
		Assignment env;
		for (const auto &[var, elem] : binds)
			env[var] = s.element_or_throw(elem);
		return env;
	}

	EvalOptions options() const
	{
		EvalOptions o;
		o.max_fixpoint_cells = caps.fixpoint_cells;
		o.max_summands = caps.summands;
		return o;
	}
};

void print_value(std::ostream &out, const Value &v, bool as_json)
{
	if (!as_json) {
		out << v.str() << "\n";
		return;
	}
	json j;
	j["kind"] = v.is_formula() ? "formula" : "term";
	if (v.is_formula())
		j["value"] = v.truth();
	else
		j["value"] = v.number().str();
	out << j.dump() << "\n";
}

void evaluate_and_print(const ExprPtr &e, const WeightedStructure &base, const Settings &st, std::ostream &out)
{
	WeightedStructure s = st.effective(base);
	ExprPtr q = resolve_top_level(e, s.vocabulary());
	print_value(out, evaluate(*q, s, st.assignment(s), st.options()), st.json);
}

std::string symbols_list(const std::vector<std::string> &items)
{
	if (items.empty())
		return "none";
	std::string out;
	for (std::size_t i = 0; i < items.size(); ++i)
		out += (i ? ", " : "") + items[i];
	return out;
}

void print_check(const ExprPtr &parsed, std::ostream &out, bool as_json)
{
	// Generated expressions carry no positions; their printed form does.
	ExprPtr e = parsed->pos.known() ? parsed : parse(print(*parsed));
	std::set<std::string> fv = free_vars(*e);
	SymbolReport rep = vocabulary_of(*e);
	std::vector<std::string> ext, intl;
	for (const auto &[name, sym] : rep.extensional.symbols())
		ext.push_back(symbol_str(sym));
	for (const auto &[name, arity] : rep.intensional)
		intl.push_back(name + "/" + std::to_string(arity));
	std::vector<FragmentViolation> vs = check_scalar_fragment(*e);
	if (as_json) {
		json j;
		j["free_variables"] = std::vector<std::string>(fv.begin(), fv.end());
		j["extensional"] = ext;
		j["intensional"] = intl;
		j["in_fragment"] = vs.empty();
		j["violations"] = json::array();
		for (const FragmentViolation &v : vs)
			j["violations"].push_back({{"message", v.message}, {"line", v.pos.line}, {"column", v.pos.column}});
		out << j.dump() << "\n";
		return;
	}
	out << "free variables: " << symbols_list({fv.begin(), fv.end()}) << "\n";
	out << "extensional vocabulary: " << symbols_list(ext) << "\n";
	out << "intensional symbols: " << symbols_list(intl) << "\n";
	if (vs.empty())
		out << "in sIFP(SUM)\n";
	for (const FragmentViolation &v : vs)
		out << "NOT in sIFP(SUM): " << v.message << " at " << v.pos.str() << "\n";
}

template <class F> int guarded(std::ostream &err, F &&f)
{
	try {
		return f();
	} catch (const ParseError &e) {
		err << "parse error: " << e.what() << "\n";
		return usage;
	} catch (const UnboundVariableError &e) {
		err << "error: " << e.what() << "\n";
		return unbound;
	} catch (const SymbolMismatchError &e) {
		err << "structure error: " << e.what() << "\n";
		return structure;
	} catch (const StructureError &e) {
		err << "structure error: " << e.what() << "\n";
		return structure;
	} catch (const ResourceError &e) {
		err << "resource limit: " << e.what() << "\n";
		return resource;
	} catch (const Error &e) {
		err << "error: " << e.what() << "\n";
		return usage;
	}
}

const char *repl_help = R"(commands:
  :load <path>            load a structure or FNN file
  :let <name> = <query>   name a query; entering the name evaluates it
  :check <name|query>     free variables, vocabulary and fragment verdict
  :set json on|off
  :set input r1,r2,...    evaluate on the loaded FNN with this input
  :set bind x=a ...       bind free variables to elements
  :set const c=q ...      add weight constants c() = q
  :set max-fixpoint-cells N | max-summands N | max-pwl-pieces N
  :unset input|bind|const
  :quit
anything else is a query (text, a query file, or builtin:<name> k=v ...)
)";

std::size_t count_arg(const std::string &text)
{
	std::size_t pos = 0;
	unsigned long long v = 0;
	try {
		v = std::stoull(text, &pos);
	} catch (const std::exception &) {
		pos = 0;
	}
	if (pos == 0 || pos != text.size())
		throw UsageError("expected a non-negative integer, got '" + text + "'");
	return static_cast<std::size_t>(v);
}

class Repl {
public:
	Repl(std::istream &in, std::ostream &out, bool interactive) : in_(in), out_(out), interactive_(interactive) {}

	void loop()
	{
		std::string line;
		for (;;) {
			if (interactive_)
				out_ << "wsq> " << std::flush;
			if (!std::getline(in_, line))
				break;
			line = trim(line);
			if (line.empty() || line[0] == '#')
				continue;
			if (line == ":quit" || line == ":q")
				break;
			guarded(out_, [&] {
				step(line);
				return 0;
			});
		}
	}

private:
	std::istream &in_;
	std::ostream &out_;
	bool interactive_;
	WeightedStructure structure_;
	Settings st_;
	std::map<std::string, ExprPtr> lets_;

	ExprPtr lookup(const std::string &text)
	{
		auto it = lets_.find(text);
		return it != lets_.end() ? it->second : query_expr(text);
	}

	void step(const std::string &line)
	{
		if (line[0] != ':') {
			evaluate_and_print(lookup(line), structure_, st_, out_);
			return;
		}
		std::size_t sp = line.find_first_of(" \t");
		std::string cmd = line.substr(0, sp);
		std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
		if (cmd == ":help") {
			out_ << repl_help;
		} else if (cmd == ":load") {
			structure_ = load_any_structure(rest);
			out_ << "loaded " << rest << " (" << structure_.size() << " elements)\n";
		} else if (cmd == ":let") {
			auto [name, query] = key_value(rest, ":let <name> = <query>");
			if (name.empty() || words(name).size() != 1)
				throw UsageError("bad name '" + name + "'");
			lets_[name] = lookup(query);
			out_ << name << " defined\n";
		} else if (cmd == ":check") {
			print_check(lookup(rest), out_, st_.json);
		} else if (cmd == ":set") {
			set(rest);
		} else if (cmd == ":unset") {
			if (rest == "input")
				st_.input.reset();
			else if (rest == "bind")
				st_.binds.clear();
			else if (rest == "const")
				st_.consts.clear();
			else
				throw UsageError("cannot unset '" + rest + "'");
		} else {
			throw UsageError("unknown command " + cmd + " (try :help)");
		}
	}

	void set(const std::string &rest)
	{
		std::vector<std::string> ws = words(rest);
		if (ws.empty())
			throw UsageError(":set needs an option");
		const std::string &opt = ws[0];
		auto single = [&]() -> const std::string & {
			if (ws.size() != 2)
				throw UsageError(":set " + opt + " takes one value");
			return ws[1];
		};
		if (opt == "json") {
			const std::string &v = single();
			if (v != "on" && v != "off")
				throw UsageError(":set json on|off");
			st_.json = v == "on";
		} else if (opt == "input") {
			number_list(single());
			st_.input = ws[1];
		} else if (opt == "bind" || opt == "const") {
			for (std::size_t i = 1; i < ws.size(); ++i) {
				auto [k, v] = key_value(ws[i], "name=value");
				if (opt == "const")
					number_arg(v);
				(opt == "bind" ? st_.binds : st_.consts)[k] = v;
			}
		} else if (opt == "max-fixpoint-cells") {
			st_.caps.fixpoint_cells = count_arg(single());
		} else if (opt == "max-summands") {
			st_.caps.summands = count_arg(single());
		} else if (opt == "max-pwl-pieces") {
			st_.caps.pwl_pieces = count_arg(single());
		} else {
			throw UsageError("unknown option '" + opt + "'");
		}
	}
};

void add_caps(CLI::App *cmd, Caps &caps)
{
	cmd->add_option("--max-fixpoint-cells", caps.fixpoint_cells, "Cap on cells of one fixed-point table")
	    ->capture_default_str();
	cmd->add_option("--max-summands", caps.summands, "Cap on tuples enumerated by one sum")->capture_default_str();
	cmd->add_option("--max-pwl-pieces", caps.pwl_pieces, "Cap on pieces per node in pwl construction")
	    ->capture_default_str();
}

std::string join_values(const std::vector<ExtRational> &vs)
{
	std::string out;
	for (std::size_t i = 0; i < vs.size(); ++i)
		out += (i ? " " : "") + vs[i].str();
	return out;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, std::istream &in,
        bool interactive)
{
	CLI::App app{"Query weighted structures and feedforward networks with FO(SUM)/IFP(SUM)", "wsq"};
	app.require_subcommand(1);
	app.set_help_all_flag("--help-all", "Help for every subcommand");

	std::string structure_path, query, fnn_path, input, edge, out_path;
	std::vector<std::string> binds, consts;
	std::string lo, hi;
	std::size_t relays = 0;
	Settings st;

	CLI::App *eval_cmd = app.add_subcommand("eval", "Evaluate a query on a structure");
	eval_cmd->add_option("structure", structure_path, "Structure or FNN file")->required();
	eval_cmd->add_option("query", query, "Query text, query file, or builtin:<name> k=v ...")->required();
	eval_cmd->add_option("--bind", binds, "Bind free variables: var=element[,var=element]")->allow_extra_args(false);
	eval_cmd->add_option("--input", input, "FNN input r1,r2,... (adds inp)");
	eval_cmd->add_option("--const", consts, "Weight constants: name=value[,name=value]")->allow_extra_args(false);
	eval_cmd->add_flag("--json", st.json, "JSON output");
	add_caps(eval_cmd, st.caps);

	CLI::App *check_cmd = app.add_subcommand("check", "Report variables, vocabulary and sIFP(SUM) membership");
	check_cmd->add_option("query", query, "Query text, query file, or builtin:<name> k=v ...")->required();
	check_cmd->add_flag("--json", st.json, "JSON output");

	CLI::App *fnn_cmd = app.add_subcommand("fnn", "Network utilities");
	fnn_cmd->require_subcommand(1);
	CLI::App *validate_cmd = fnn_cmd->add_subcommand("validate", "Check the FNN invariants");
	CLI::App *forward_cmd = fnn_cmd->add_subcommand("forward", "Exact forward pass");
	CLI::App *pwl_cmd = fnn_cmd->add_subcommand("pwl", "Piecewise-linear form of a 1-input 1-output net");
	CLI::App *integrate_cmd = fnn_cmd->add_subcommand("integrate", "Exact integral of a 1-input 1-output net");
	CLI::App *zero_cmd = fnn_cmd->add_subcommand("zero", "Whether a 1-input 1-output net computes 0");
	CLI::App *pad_cmd = fnn_cmd->add_subcommand("pad", "Replace an edge by a chain of relay nodes");
	for (CLI::App *c : {validate_cmd, forward_cmd, pwl_cmd, integrate_cmd, zero_cmd, pad_cmd})
		c->add_option("network", fnn_path, "Structure or FNN file")->required();
	forward_cmd->add_option("--input", input, "Input r1,r2,...")->required();
	for (CLI::App *c : {pwl_cmd, integrate_cmd, zero_cmd})
		c->add_option("--max-pwl-pieces", st.caps.pwl_pieces, "Cap on pieces per node")->capture_default_str();
	integrate_cmd->add_option("--lo", lo, "Lower bound")->required();
	integrate_cmd->add_option("--hi", hi, "Upper bound")->required();
	pad_cmd->add_option("--edge", edge, "Edge u,v")->required();
	pad_cmd->add_option("--k", relays, "Number of relay nodes")->required();
	pad_cmd->add_option("--out", out_path, "Output file (default: standard output)");

	CLI::App *repl_cmd = app.add_subcommand("repl", "Interactive session");

	std::vector<const char *> argv{"wsq"};
	for (const std::string &a : args)
		argv.push_back(a.c_str());
	try {
		app.parse(static_cast<int>(argv.size()), argv.data());
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e, out, err);
		return code == 0 ? ok : usage;
	}

	if (*repl_cmd) {
		Repl(in, out, interactive).loop();
		return ok;
	}
	return guarded(err, [&]() -> int {
		if (*eval_cmd) {
			for (const std::string &arg : binds)
				for (const std::string &b : split(arg, ','))
					st.binds.insert(key_value(b, "var=element"));
			for (const std::string &arg : consts)
				for (const std::string &c : split(arg, ',')) {
					auto kv = key_value(c, "name=value");
					number_arg(kv.second);
					st.consts.insert(kv);
				}
			if (!input.empty())
				st.input = input;
			ExprPtr e = query_expr(query);
			evaluate_and_print(e, load_any_structure(structure_path), st, out);
			return ok;
		}
		if (*check_cmd) {
			print_check(query_expr(query), out, st.json);
			return ok;
		}
		if (*validate_cmd) {
			WeightedStructure s = load_any_structure(fnn_path);
			std::vector<Violation> vs = validate_fnn(s);
			if (!vs.empty()) {
				for (const Violation &v : vs)
					out << "violation: " << v.what << (v.where.empty() ? "" : " at " + v.where) << "\n";
				return structure;
			}
			FnnStructure n(s);
			out << "valid FNN: " << n.input_dim() << " inputs, " << n.output_dim() << " outputs, "
			    << s.size() << " nodes, depth " << n.depth() << "\n";
			return ok;
		}
		FnnStructure n(load_any_structure(fnn_path));
		if (*forward_cmd) {
			std::vector<ExtRational> r = number_list(input);
			out << join_values(forward(n, r)) << "\n";
		} else if (*pwl_cmd) {
			out << to_pwl(n, st.caps.pwl_pieces).str();
		} else if (*integrate_cmd) {
			out << pwl_integral(to_pwl(n, st.caps.pwl_pieces), number_arg(lo), number_arg(hi)).str() << "\n";
		} else if (*zero_cmd) {
			out << (zero_query(n, st.caps.pwl_pieces) ? "true" : "false") << "\n";
		} else if (*pad_cmd) {
			std::vector<std::string> uv = split(edge, ',');
			if (uv.size() != 2)
				throw UsageError("--edge expects u,v");
			const WeightedStructure &s = n.structure();
			FnnStructure padded = pad(n, s.element_or_throw(uv[0]), s.element_or_throw(uv[1]), relays);
			if (out_path.empty())
				out << fnn_to_json(padded).dump(2) << "\n";
			else
				save_fnn(padded, out_path);
		}
		return ok;
	});
}

} // namespace wsq::cli
