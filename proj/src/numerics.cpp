/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/numerics.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace wsq {

ExtRational::ExtRational(const Rational &q)
: defined_(true)
, q_(q)
{
	q_.canonicalize();
}

ExtRational::ExtRational(Rational &&q)
: defined_(true)
, q_(std::move(q))
{
	q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s)
{
	if (s.empty())
		return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			return false;
	return true;
}

mpz_class to_mpz(std::string_view digits)
{
	return mpz_class(std::string(digits), 10);
}

} // namespace

ExtRational ExtRational::parse(std::string_view text)
{
	if (text == "bot")
		return bot();
	std::string_view s = text;
	bool negative = false;
	if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
		negative = s.front() == '-';
		s.remove_prefix(1);
	}
	Rational q;
	if (auto slash = s.find('/'); slash != std::string_view::npos) {
		std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
		if (!all_digits(num) || !all_digits(den))
			throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
		mpz_class d = to_mpz(den);
		if (d == 0)
			throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
		q = Rational(to_mpz(num), d);
	} else if (auto dot = s.find('.'); dot != std::string_view::npos) {
		std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
		if (!all_digits(whole) || !all_digits(frac))
			throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
		mpz_class scale;
		mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
		q = Rational(to_mpz(whole) * scale + to_mpz(frac), scale);
	} else {
		if (!all_digits(s))
			throw std::invalid_argument("malformed number '" + std::string(text) + "'");
		q = Rational(to_mpz(s));
	}
	q.canonicalize();
	if (negative)
		q = -q;
	return ExtRational(std::move(q));
}

std::string rational_str(const Rational &q)
{
	if (q.get_den() == 1)
		return q.get_num().get_str();
	return q.get_str();
}

std::string ExtRational::str() const
{
	return defined_ ? rational_str(q_) : std::string("bot");
}

ExtRational operator+(const ExtRational &a, const ExtRational &b)
{
	if (a.is_bot() || b.is_bot())
		return ExtRational::bot();
	return ExtRational(Rational(a.q_ + b.q_));
}

ExtRational operator-(const ExtRational &a, const ExtRational &b)
{
	if (a.is_bot() || b.is_bot())
		return ExtRational::bot();
	return ExtRational(Rational(a.q_ - b.q_));
}

ExtRational operator*(const ExtRational &a, const ExtRational &b)
{
	if (a.is_bot() || b.is_bot())
		return ExtRational::bot();
	return ExtRational(Rational(a.q_ * b.q_));
}

ExtRational operator/(const ExtRational &a, const ExtRational &b)
{
	if (a.is_bot() || b.is_bot() || sgn(b.q_) == 0)
		return ExtRational::bot();
	return ExtRational(Rational(a.q_ / b.q_));
}

std::strong_ordering operator<=>(const ExtRational &a, const ExtRational &b)
{
	if (a.is_bot() || b.is_bot())
		return b.is_bot() <=> a.is_bot();
	int c = cmp(a.q_, b.q_);
	return c <=> 0;
}

std::ostream &operator<<(std::ostream &os, const ExtRational &v)
{
	return os << v.str();
}

char arith_symbol(ArithOp op)
{
	switch (op) {
	case ArithOp::Add: return '+';
	case ArithOp::Sub: return '-';
	case ArithOp::Mul: return '*';
	case ArithOp::Div: return '/';
	}
	return '?';
}

ExtRational arith(ArithOp op, const ExtRational &a, const ExtRational &b)
{
	switch (op) {
	case ArithOp::Add: return a + b;
	case ArithOp::Sub: return a - b;
	case ArithOp::Mul: return a * b;
	case ArithOp::Div: return a / b;
	}
	return ExtRational::bot();
}

std::strong_ordering compare(const ExtRational &a, const ExtRational &b)
{
	return a <=> b;
}

ExtRational sum_all(std::span<const ExtRational> items)
{
	Rational acc = 0;
	for (const ExtRational &x : items) {
		if (x.is_bot())
			return ExtRational::bot();
		acc += x.value();
	}
	return ExtRational(std::move(acc));
}

ExtRational relu(const ExtRational &x)
{
	if (x.is_bot() || sgn(x.value()) >= 0)
		return x;
	return ExtRational(0L);
}

} // namespace wsq
