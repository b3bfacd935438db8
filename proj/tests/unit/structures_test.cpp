/* SPDX-License-Identifier: Apache-2.0 */

#include "generators.hpp"

#include "wsq/errors.hpp"
#include "wsq/structure_io.hpp"
#include "wsq/structures.hpp"

#include <doctest.h>

#include <filesystem>

using namespace wsq;

namespace {

WeightedStructure graph()
{
	WeightedStructure s({"v1", "v2", "v3"});
	s.declare_relation("edge", 2);
	s.add_tuple("edge", {0, 1});
	s.declare_relation("flag", 0);
	s.add_tuple("flag", {});
	s.declare_weight("wt", 2);
	s.set_weight("wt", {0, 1}, ExtRational(Rational(3, 2)));
	s.declare_weight("lo", 0);
	s.set_weight("lo", {}, ExtRational(-1));
	return s;
}

bool mentions(const std::vector<Violation> &vs, const std::string &what)
{
	for (const Violation &v : vs)
		if (v.what.find(what) != std::string::npos)
			return true;
	return false;
}

} // namespace

TEST_CASE("lookups")
{
	WeightedStructure s = graph();
	CHECK(s.lookup_relation("edge", {0, 1}));
	CHECK_FALSE(s.lookup_relation("edge", {1, 0}));
	CHECK(s.lookup_relation("flag", {}));
	CHECK(s.lookup_weight("wt", {0, 1}) == ExtRational(Rational(3, 2)));
	CHECK(s.lookup_weight("wt", {1, 1}).is_bot());
	CHECK(s.lookup_weight("lo", {}) == ExtRational(-1));
	CHECK_THROWS_AS(s.lookup_relation("missing", {0}), UsageError);
	CHECK_THROWS_AS(s.lookup_relation("edge", {0}), UsageError);
	CHECK_THROWS_AS(s.lookup_weight("wt", {0, 1, 2}), UsageError);
	CHECK_THROWS_AS(s.lookup_weight("edge", {0, 1}), UsageError);
}

TEST_CASE("validation")
{
	CHECK(validate_structure(graph()).empty());
	CHECK(mentions(validate_structure(WeightedStructure(std::vector<std::string>{})), "universe nonempty"));

	Interpretation bad;
	bad.relations["edge"] = RelationTable{2, {{0, 1, 2}}};
	CHECK(mentions(validate_structure(WeightedStructure({"a", "b", "c"}, bad)), "arity mismatch"));

	Interpretation out_of_range;
	out_of_range.weights["wt"] = WeightTable{1, {{{7}, ExtRational(1)}}};
	CHECK_FALSE(validate_structure(WeightedStructure({"a"}, out_of_range)).empty());
}

TEST_CASE("expand and reduct")
{
	WeightedStructure s = graph();
	Interpretation extra;
	extra.weights["hi"] = WeightTable{0, {{{}, ExtRational(1)}}};
	WeightedStructure t = expand(s, extra);
	CHECK(t.lookup_weight("hi", {}) == ExtRational(1));
	CHECK(identical(reduct(t, s.vocabulary()), s));
	CHECK(identical(expand(s, {}), s));

	Interpretation clash;
	clash.relations["wt"] = RelationTable{2, {}};
	CHECK_THROWS_AS(expand(s, clash), UsageError);
}

TEST_CASE("file format round trip")
{
	gen::Rng rng(3);
	for (int i = 0; i < 100; ++i) {
		WeightedStructure s = gen::structure(rng, 4, 0.2);
		WeightedStructure back = parse_structure(serialize_structure(s));
		CHECK(identical(back, s));
		CHECK(validate_structure(back).empty());
	}
	auto path = std::filesystem::temp_directory_path() / "wsq_structure_roundtrip.json";
	save_structure(graph(), path);
	CHECK(identical(load_structure(path), graph()));
	std::filesystem::remove(path);
}

TEST_CASE("file format errors")
{
	CHECK_THROWS_AS(parse_structure("{"), StructureError);
	CHECK_THROWS_AS(parse_structure(R"({"universe": []})"), StructureError);
	CHECK_THROWS_AS(parse_structure(R"({"universe": ["a"], "relations": {"R": {"arity": 1, "tuples": [["b"]]}}})"),
	                StructureError);
	CHECK_THROWS_AS(parse_structure(R"({"universe": ["a"], "weights": {"f": {"arity": 1, "values": [
		{"tuple": ["a"], "value": "1"}, {"tuple": ["a"], "value": "2"}]}}})"),
	                StructureError);
	CHECK_THROWS_AS(parse_structure(R"({"universe": ["a"], "weights": {"f": {"arity": 1, "values": [
		{"tuple": ["a"], "value": "x"}]}}})"),
	                StructureError);
	WeightedStructure s = parse_structure(R"({"universe": ["a"], "weights": {"f": {"arity": 1, "values": [
		{"tuple": ["a"], "value": "0.25"}]}}})");
	CHECK(s.lookup_weight("f", {0}) == ExtRational(Rational(1, 4)));
}
