/* SPDX-License-Identifier: Apache-2.0 */

#include "nets.hpp"

#include "wsq/errors.hpp"
#include "wsq/fnn.hpp"
#include "wsq/pwl.hpp"

#include <doctest.h>

using namespace wsq;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

nets::Net relu_net()
{
	nets::Net n;
	std::size_t u = n.add_node("u");
	std::size_t o = n.add_node("o", mpq_class(0));
	n.add_edge(u, o, 1);
	n.inputs = {u};
	n.outputs = {o};
	return n;
}

nets::Net constant_net()
{
	nets::Net n;
	std::size_t u = n.add_node("u");
	std::size_t o = n.add_node("o", mpq_class(5));
	n.add_edge(u, o, 0);
	n.inputs = {u};
	n.outputs = {o};
	return n;
}

nets::Net cancel_net()
{
	nets::Net n;
	std::size_t u = n.add_node("u");
	std::size_t a = n.add_node("a", mpq_class(0));
	std::size_t o = n.add_node("o", mpq_class(0));
	n.add_edge(u, a, 1);
	n.add_edge(u, o, -1);
	n.add_edge(a, o, 1);
	n.inputs = {u};
	n.outputs = {o};
	return n;
}

// Samples, breakpoints and midpoints around every breakpoint.
std::vector<Rational> probes(const Pwl &p, gen::Rng &rng, int n)
{
	std::vector<Rational> xs;
	for (int i = 0; i < n; ++i) {
		Rational x(gen::uniform(rng, -4000, 4000), gen::uniform(rng, 1, 200));
		x.canonicalize();
		xs.push_back(x);
	}
	const auto &bs = p.breakpoints();
	for (std::size_t i = 0; i < bs.size(); ++i) {
		xs.push_back(bs[i]);
		xs.push_back(bs[i] - 1);
		xs.push_back(bs[i] + 1);
		if (i + 1 < bs.size())
			xs.push_back((bs[i] + bs[i + 1]) / 2);
	}
	return xs;
}

} // namespace

TEST_CASE("pwl of small nets")
{
	Pwl relu = to_pwl(FnnStructure(relu_net().structure()));
	CHECK(relu.breakpoints() == std::vector<Rational>{0});
	REQUIRE(relu.piece_count() == 2);
	CHECK(relu.pieces()[0] == Affine{0, 0});
	CHECK(relu.pieces()[1] == Affine{1, 0});

	Pwl clamp = to_pwl(FnnStructure(nets::clamp().structure()));
	CHECK(clamp.breakpoints() == std::vector<Rational>{0, 1});
	CHECK(clamp(r(-3)) == 0);
	CHECK(clamp(r(1, 2)) == r(1, 2));
	CHECK(clamp(r(7)) == 1);

	Pwl constant = to_pwl(FnnStructure(constant_net().structure()));
	CHECK(constant.breakpoints().empty());
	CHECK(constant.pieces()[0] == Affine{0, 5});
}

TEST_CASE("integrals")
{
	Pwl relu = to_pwl(FnnStructure(relu_net().structure()));
	CHECK(pwl_integral(relu, -1, 1) == ExtRational(r(1, 2)));
	Pwl clamp = to_pwl(FnnStructure(nets::clamp().structure()));
	CHECK(pwl_integral(clamp, 0, 2) == ExtRational(r(3, 2)));
	CHECK(pwl_integral(clamp, r(3, 4), r(3, 4)) == ExtRational(0));
	CHECK_THROWS_AS(pwl_integral(clamp, 2, 0), UsageError);
	CHECK_THROWS_AS(pwl_integral(clamp, ExtRational::bot(), 0), UsageError);

	gen::Rng rng(31);
	for (int i = 0; i < 200; ++i) {
		Pwl p = to_pwl(FnnStructure(nets::random_depth2(rng, 4).structure()));
		Rational a(gen::uniform(rng, -30, 30), 3), b = a + Rational(gen::uniform(rng, 0, 30), 4),
		    c = b + Rational(gen::uniform(rng, 0, 30), 5);
		CHECK(pwl_integral(p, a, b) + pwl_integral(p, b, c) == pwl_integral(p, a, c));
	}
}

TEST_CASE("zero query")
{
	CHECK(zero_query(FnnStructure(cancel_net().structure())));
	CHECK_FALSE(zero_query(FnnStructure(relu_net().structure())));
	nets::Net silent = relu_net();
	silent.edges[0].weight = 0;
	CHECK(zero_query(FnnStructure(silent.structure())));
}

TEST_CASE("pwl agrees with forward and is canonical")
{
	gen::Rng rng(32);
	for (int i = 0; i < 60; ++i) {
		std::size_t depth = static_cast<std::size_t>(gen::uniform(rng, 1, 5));
		nets::Net net = nets::random_layered(rng, depth, 3, 1, 1, 9, 4);
		FnnStructure n(net.structure());
		Pwl p = to_pwl(n);
		for (std::size_t k = 0; k + 1 < p.piece_count(); ++k) {
			CHECK(p.breakpoints()[k] < (k + 1 < p.breakpoints().size() ? p.breakpoints()[k + 1] : p.breakpoints()[k] + 1));
			CHECK(p.pieces()[k].slope != p.pieces()[k + 1].slope);
			CHECK(p.pieces()[k].at(p.breakpoints()[k]) == p.pieces()[k + 1].at(p.breakpoints()[k]));
		}
		for (const Rational &x : probes(p, rng, 200))
			CHECK(p(x) == net.forward({x})[0]);
		auto es = n.edges();
		auto [u, v] = es[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(es.size()) - 1))];
		CHECK(to_pwl(pad(n, u, v, 2)) == p);
	}
}

TEST_CASE("pwl guards")
{
	gen::Rng rng(5);
	nets::Net two = nets::random_layered(rng, 2, 2, 2, 1, 5, 2);
	CHECK_THROWS_AS(to_pwl(FnnStructure(two.structure())), UsageError);
	CHECK_THROWS_AS(to_pwl(FnnStructure(nets::clamp().structure()), 1), ResourceError);
}
