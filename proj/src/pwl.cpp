/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/pwl.hpp"

#include "wsq/errors.hpp"

#include <algorithm>
#include <iterator>

namespace wsq {

Pwl::Pwl(std::vector<Rational> breakpoints, std::vector<Affine> pieces)
: breakpoints_(std::move(breakpoints))
, pieces_(std::move(pieces))
{
	if (pieces_.size() != breakpoints_.size() + 1)
		throw UsageError("a pwl with k breakpoints needs k+1 pieces");
	for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
		if (!(breakpoints_[i] < breakpoints_[i + 1]))
			throw UsageError("pwl breakpoints must increase strictly");
	for (std::size_t i = 0; i < breakpoints_.size(); ++i)
		if (pieces_[i].at(breakpoints_[i]) != pieces_[i + 1].at(breakpoints_[i]))
			throw UsageError("pwl pieces disagree at breakpoint " + rational_str(breakpoints_[i]));
	canonicalize();
}

Pwl Pwl::affine(const Rational &slope, const Rational &intercept)
{
	return Pwl({}, {Affine{slope, intercept}});
}

void Pwl::canonicalize()
{
	std::vector<Rational> bps;
	std::vector<Affine> ps{pieces_.front()};
	for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
		if (pieces_[i + 1] == ps.back())
			continue;
		bps.push_back(breakpoints_[i]);
		ps.push_back(pieces_[i + 1]);
	}
	breakpoints_ = std::move(bps);
	pieces_ = std::move(ps);
}

Rational Pwl::operator()(const Rational &x) const
{
	auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
	return pieces_[std::distance(breakpoints_.begin(), it)].at(x);
}

namespace {

// A point strictly inside interval j of the partition given by `bps`.
Rational sample_point(const std::vector<Rational> &bps, std::size_t j)
{
	if (bps.empty())
		return 0;
	if (j == 0)
		return bps.front() - 1;
	if (j == bps.size())
		return bps.back() + 1;
	return (bps[j - 1] + bps[j]) / 2;
}

const Affine &piece_at(const Pwl &p, const Rational &x)
{
	const auto &bps = p.breakpoints();
	auto it = std::lower_bound(bps.begin(), bps.end(), x);
	return p.pieces()[std::distance(bps.begin(), it)];
}

} // namespace

Pwl operator+(const Pwl &a, const Pwl &b)
{
	std::vector<Rational> bps;
	std::set_union(a.breakpoints_.begin(), a.breakpoints_.end(), b.breakpoints_.begin(),
	               b.breakpoints_.end(), std::back_inserter(bps));
	std::vector<Affine> ps;
	ps.reserve(bps.size() + 1);
	for (std::size_t j = 0; j <= bps.size(); ++j) {
		Rational x = sample_point(bps, j);
		const Affine &pa = piece_at(a, x), &pb = piece_at(b, x);
		ps.push_back({pa.slope + pb.slope, pa.intercept + pb.intercept});
	}
	Pwl out;
	out.breakpoints_ = std::move(bps);
	out.pieces_ = std::move(ps);
	out.canonicalize();
	return out;
}

Pwl Pwl::scaled(const Rational &c) const
{
	if (sgn(c) == 0)
		return Pwl();
	Pwl out = *this;
	for (Affine &p : out.pieces_) {
		p.slope *= c;
		p.intercept *= c;
	}
	return out;
}

Pwl Pwl::shifted(const Rational &c) const
{
	Pwl out = *this;
	for (Affine &p : out.pieces_)
		p.intercept += c;
	return out;
}

Pwl Pwl::relu() const
{
	std::vector<Rational> bps;
	for (std::size_t i = 0; i < pieces_.size(); ++i) {
		const Affine &p = pieces_[i];
		if (sgn(p.slope) != 0) {
			Rational root = -p.intercept / p.slope;
			bool above_lo = i == 0 || breakpoints_[i - 1] < root;
			bool below_hi = i == breakpoints_.size() || root < breakpoints_[i];
			if (above_lo && below_hi)
				bps.push_back(root);
		}
		if (i < breakpoints_.size())
			bps.push_back(breakpoints_[i]);
	}
	std::vector<Affine> ps;
	ps.reserve(bps.size() + 1);
	for (std::size_t j = 0; j <= bps.size(); ++j) {
		Rational x = sample_point(bps, j);
		const Affine &p = piece_at(*this, x);
		ps.push_back(sgn(p.at(x)) > 0 ? p : Affine{0, 0});
	}
	Pwl out;
	out.breakpoints_ = std::move(bps);
	out.pieces_ = std::move(ps);
	out.canonicalize();
	return out;
}

bool Pwl::is_zero() const
{
	return breakpoints_.empty() && sgn(pieces_[0].slope) == 0 && sgn(pieces_[0].intercept) == 0;
}

std::string affine_str(const Affine &a)
{
	if (sgn(a.slope) == 0)
		return rational_str(a.intercept);
	std::string out;
	if (a.slope == 1)
		out = "x";
	else if (a.slope == -1)
		out = "-x";
	else
		out = rational_str(a.slope) + "*x";
	if (sgn(a.intercept) > 0)
		out += " + " + rational_str(a.intercept);
	else if (sgn(a.intercept) < 0)
		out += " - " + rational_str(Rational(-a.intercept));
	return out;
}

std::string Pwl::str() const
{
	std::string out;
	for (std::size_t i = 0; i < pieces_.size(); ++i) {
		std::string lo = i == 0 ? "(-inf" : "[" + rational_str(breakpoints_[i - 1]);
		std::string hi = i == breakpoints_.size() ? "+inf)" : rational_str(breakpoints_[i]) + "]";
		out += lo + ", " + hi + ": " + affine_str(pieces_[i]) + "\n";
	}
	return out;
}

namespace {

// Antiderivative of a at x.
Rational primitive(const Affine &a, const Rational &x)
{
	return a.slope * x * x / 2 + a.intercept * x;
}

} // namespace

ExtRational pwl_integral(const Pwl &p, const ExtRational &a, const ExtRational &b)
{
	if (a.is_bot() || b.is_bot())
		throw UsageError("integration bounds must be defined");
	if (b < a)
		throw UsageError("integration bounds must satisfy lo <= hi");
	const Rational &lo = a.value(), &hi = b.value();
	const auto &bps = p.breakpoints();
	Rational total = 0, left = lo;
	auto it = std::upper_bound(bps.begin(), bps.end(), lo);
	for (; it != bps.end() && *it < hi; ++it) {
		const Affine &piece = piece_at(p, (left + *it) / 2);
		total += primitive(piece, *it) - primitive(piece, left);
		left = *it;
	}
	if (left < hi) {
		const Affine &piece = piece_at(p, (left + hi) / 2);
		total += primitive(piece, hi) - primitive(piece, left);
	}
	return ExtRational(std::move(total));
}

} // namespace wsq
