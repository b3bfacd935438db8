/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace wsq {

/// Arbitrary-precision rational, always in canonical form.
using Rational = mpq_class;

/// An exact rational or the undefined element bot.
///
/// bot is strictly below every rational and absorbs every arithmetic
/// operation; division by zero yields bot.  Defined values keep their
/// numerator and denominator coprime with a positive denominator.
class ExtRational {
public:
	/// Constructs bot.
	ExtRational() = default;
	ExtRational(long v) : defined_(true), q_(v) {}
	ExtRational(const Rational &q);
	ExtRational(Rational &&q);

	static ExtRational bot() { return {}; }

	/// Accepts "bot", integers, "p/q" and decimals "d.ddd" (converted exactly).
	/// Throws std::invalid_argument on anything else.
	static ExtRational parse(std::string_view text);

	bool is_bot() const { return !defined_; }
	bool defined() const { return defined_; }

	/// Precondition: defined().
	const Rational &value() const { return q_; }

	/// "bot", "-12" or "p/q".
	std::string str() const;

	friend ExtRational operator+(const ExtRational &a, const ExtRational &b);
	friend ExtRational operator-(const ExtRational &a, const ExtRational &b);
	friend ExtRational operator*(const ExtRational &a, const ExtRational &b);
	friend ExtRational operator/(const ExtRational &a, const ExtRational &b);

	friend std::strong_ordering operator<=>(const ExtRational &a, const ExtRational &b);
	friend bool operator==(const ExtRational &a, const ExtRational &b)
	{
		return (a <=> b) == std::strong_ordering::equal;
	}

private:
	bool defined_ = false;
	Rational q_;
};

std::ostream &operator<<(std::ostream &os, const ExtRational &v);

enum class ArithOp { Add, Sub, Mul, Div };

char arith_symbol(ArithOp op);

ExtRational arith(ArithOp op, const ExtRational &a, const ExtRational &b);

/// Total order: bot < every rational, bot == bot.
std::strong_ordering compare(const ExtRational &a, const ExtRational &b);

/// 0 on the empty sequence, bot if any item is bot.
ExtRational sum_all(std::span<const ExtRational> items);

/// max(0, x) on rationals; bot stays bot.
ExtRational relu(const ExtRational &x);

/// Canonical text of a defined rational.
std::string rational_str(const Rational &q);

} // namespace wsq
