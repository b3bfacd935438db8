/* SPDX-License-Identifier: Apache-2.0 */

#include "golden.hpp"

#include "wsq/cli.hpp"
#include "wsq/eval.hpp"
#include "wsq/parser.hpp"
#include "wsq/structure_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

namespace {

struct Run {
	int code;
	std::string out, err;
};

Run run(std::vector<std::string> args, const std::string &input = "")
{
	std::ostringstream out, err;
	std::istringstream in(input);
	int code = wsq::cli::run(args, out, err, in);
	return {code, out.str(), err.str()};
}

std::string data(const std::string &name) { return std::string(WSQ_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("exit codes")
{
	CHECK(run({"eval", data("g.json"), "count {x : x = x}"}).code == wsq::cli::ok);
	CHECK(run({"eval", data("g.json"), "1 +"}).code == wsq::cli::usage);
	CHECK(run({"eval", data("bad.json"), "1"}).code == wsq::cli::structure);
	CHECK(run({"eval", data("g.json"), "wt(x, y)"}).code == wsq::cli::unbound);
	CHECK(run({"eval", data("g.json"), "builtin:squaring", "--bind", "x=r", "--max-fixpoint-cells", "3"}).code ==
	      wsq::cli::resource);
	CHECK(run({}).code == wsq::cli::usage);
	CHECK(run({"--help"}).code == wsq::cli::ok);
}

TEST_CASE("plain output equals the library value")
{
	wsq::WeightedStructure g = wsq::load_structure(data("g.json"));
	for (const char *q : {"sum {x, y : edge(x, y)} wt(x, y)", "avg {x, y : edge(x, y)} wt(x, y)",
	                      "max {x, y : edge(x, y)} wt(x, y) / 7", "exists x forall y (edge(x, y) implies wt(x, y) <= 2)",
	                      "1/0", "count {x : x = x} - 1/3"}) {
		INFO(q);
		Run r = run({"eval", data("g.json"), q});
		CHECK(r.code == 0);
		CHECK(r.out == wsq::evaluate_text(q, g).str() + "\n");
	}
}

TEST_CASE("repl keeps going after errors")
{
	Run r = run({"repl"}, ":load " + data("g.json") + "\n1 +\nwt(x)\ncount {x : x = x}\n:let\n:set json maybe\n1/2\n");
	CHECK(r.code == 0);
	std::istringstream lines(r.out);
	std::vector<std::string> got;
	for (std::string l; std::getline(lines, l);)
		got.push_back(l);
	REQUIRE(got.size() == 7);
	CHECK(got[1].rfind("parse error: ", 0) == 0);
	CHECK(got[2].rfind("structure error: ", 0) == 0);
	CHECK(got[3] == "4");
	CHECK(got[6] == "1/2");
}

TEST_CASE("golden files")
{
	auto results = golden::run_all(WSQ_CLI_BINARY, WSQ_GOLDEN_DIR, WSQ_DATA_DIR);
	CHECK(results.size() >= 30);
	for (const auto &r : results) {
		INFO(r.name << ": " << r.detail);
		CHECK(r.passed);
	}
}
