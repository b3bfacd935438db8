/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/numerics.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace wsq {

struct Affine {
	Rational slope;
	Rational intercept;

	Rational at(const Rational &x) const { return slope * x + intercept; }
	friend bool operator==(const Affine &, const Affine &) = default;
};

/// Exact continuous piecewise-linear function R -> R.
///
/// Breakpoints b_1 < ... < b_k split the line into k+1 pieces; piece 0 covers
/// (-inf, b_1], piece k covers [b_k, +inf).  Adjacent pieces agree at their
/// shared breakpoint and always differ in slope, so two Pwl values denote
/// the same function iff they compare equal.
class Pwl {
public:
	/// The zero function.
	Pwl() : pieces_{Affine{0, 0}} {}

	/// Throws UsageError unless breakpoints increase strictly, there is
	/// exactly one more piece than breakpoints, and the pieces are continuous.
	/// Collinear neighbours are merged.
	Pwl(std::vector<Rational> breakpoints, std::vector<Affine> pieces);

	static Pwl affine(const Rational &slope, const Rational &intercept);
	static Pwl identity() { return affine(1, 0); }

	const std::vector<Rational> &breakpoints() const { return breakpoints_; }
	const std::vector<Affine> &pieces() const { return pieces_; }
	std::size_t piece_count() const { return pieces_.size(); }

	Rational operator()(const Rational &x) const;

	friend Pwl operator+(const Pwl &a, const Pwl &b);
	Pwl scaled(const Rational &c) const;
	Pwl shifted(const Rational &c) const;
	/// Pointwise max(0, f): pieces crossing zero are split at the crossing.
	Pwl relu() const;

	bool is_zero() const;

	/// One line per piece, e.g. "(-inf, 0]: 0" then "[0, +inf): x".
	std::string str() const;

	friend bool operator==(const Pwl &, const Pwl &) = default;

private:
	void canonicalize();

	std::vector<Rational> breakpoints_;
	std::vector<Affine> pieces_;
};

std::string affine_str(const Affine &a);

/// Exact integral of p over [a, b].  Throws UsageError if a or b is bot or a > b.
ExtRational pwl_integral(const Pwl &p, const ExtRational &a, const ExtRational &b);

} // namespace wsq
