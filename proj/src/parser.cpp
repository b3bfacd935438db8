/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/parser.hpp"

#include "wsq/analysis.hpp"
#include "wsq/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <unordered_map>

namespace wsq {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
	Tok type = Tok::End;
	std::string text;
	SourcePos pos;
};

constexpr std::array keywords{"not", "and", "or", "implies", "exists", "forall", "sum", "if", "then",
                              "else", "ifp", "bot", "count", "avg", "min", "max"};

bool is_keyword(std::string_view s)
{
	return std::find(keywords.begin(), keywords.end(), s) != keywords.end();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view src)
{
	std::vector<Token> out;
	std::size_t i = 0, line = 1, col = 1;
	auto advance = [&](std::size_t n) {
		for (std::size_t k = 0; k < n; ++k, ++i) {
			if (src[i] == '\n') {
				++line;
				col = 1;
			} else {
				++col;
			}
		}
	};
	while (i < src.size()) {
		char c = src[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance(1);
			continue;
		}
		if (c == '#') {
			while (i < src.size() && src[i] != '\n')
				advance(1);
			continue;
		}
		Token t;
		t.pos = {line, col};
		std::size_t j = i;
		if (ident_start(c)) {
			while (j < src.size() && ident_char(src[j]))
				++j;
			t.type = Tok::Ident;
		} else if (digit(c)) {
			while (j < src.size() && digit(src[j]))
				++j;
			if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
				++j;
				while (j < src.size() && digit(src[j]))
					++j;
			} else if (j + 1 < src.size() && src[j] == '/' && digit(src[j + 1])) {
				std::size_t k = j + 1;
				bool positive = false;
				while (k < src.size() && digit(src[k]))
					positive |= src[k++] != '0';
				if (positive)
					j = k;
			}
			t.type = Tok::Number;
		} else {
			static constexpr std::array two{"<-", "<=", ">=", "!="};
			t.type = Tok::Punct;
			j = i + 1;
			for (const char *p : two)
				if (src.substr(i, 2) == p)
					j = i + 2;
			if (j == i + 1 && std::string_view("(){},:<>=+-*/").find(c) == std::string_view::npos)
				throw ParseError(std::string("unexpected character '") + c + "'", line, col);
		}
		t.text = std::string(src.substr(i, j - i));
		advance(j - i);
		out.push_back(std::move(t));
	}
	Token end;
	end.pos = {line, col};
	out.push_back(end);
	return out;
}

struct Failure {
	std::size_t index; // token index, used to pick the alternative that got furthest
	std::string msg;
	SourcePos pos;
};

const Failure &further(const Failure &a, const Failure &b) { return b.index > a.index ? b : a; }

class Parser {
public:
	explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

	ExprPtr whole(bool want_formula)
	{
		i_ = 0;
		ExprPtr e = want_formula ? formula() : term();
		if (peek().type != Tok::End)
			fail(want_formula ? "expected end of input after formula" : "expected end of input after term");
		return e;
	}

	[[noreturn]] static void raise(const Failure &f) { throw ParseError(f.msg, f.pos.line, f.pos.column); }

private:
	std::vector<Token> toks_;
	std::size_t i_ = 0;
	std::unordered_map<std::size_t, std::pair<ExprPtr, std::size_t>> term_ok_;
	std::unordered_map<std::size_t, Failure> term_failed_;

	const Token &peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
	SourcePos pos() const { return peek().pos; }

	[[noreturn]] void fail(const std::string &what) const
	{
		const Token &t = peek();
		std::string msg = t.type == Tok::End ? what + " at end of input" : what + ", found '" + t.text + "'";
		throw Failure{i_, msg, t.pos};
	}

	bool at_punct(std::string_view p, std::size_t k = 0) const
	{
		return peek(k).type == Tok::Punct && peek(k).text == p;
	}
	bool at_kw(std::string_view kw) const { return peek().type == Tok::Ident && peek().text == kw; }
	bool at_var() const { return peek().type == Tok::Ident && !is_keyword(peek().text); }

	bool accept_punct(std::string_view p)
	{
		if (!at_punct(p))
			return false;
		++i_;
		return true;
	}
	bool accept_kw(std::string_view kw)
	{
		if (!at_kw(kw))
			return false;
		++i_;
		return true;
	}
	void expect_punct(std::string_view p)
	{
		if (!accept_punct(p))
			fail("expected '" + std::string(p) + "'");
	}
	void expect_kw(std::string_view kw)
	{
		if (!accept_kw(kw))
			fail("expected '" + std::string(kw) + "'");
	}
	std::string ident(const char *what)
	{
		if (!at_var())
			fail(std::string("expected ") + what);
		return toks_[i_++].text;
	}

	// Comma-separated variables up to (not including) `close`.
	ast::Vars var_list(std::string_view close, bool allow_empty, bool distinct)
	{
		ast::Vars vs;
		if (at_punct(close)) {
			if (!allow_empty)
				fail("expected a variable");
			return vs;
		}
		for (;;) {
			SourcePos p = pos();
			std::string v = ident("a variable");
			if (distinct && std::find(vs.begin(), vs.end(), v) != vs.end())
				throw Failure{i_ - 1, "variable '" + v + "' bound twice", p};
			vs.push_back(std::move(v));
			if (!accept_punct(","))
				return vs;
		}
	}

	// ---- formulas ----

	ExprPtr formula() { return implication(); }

	ExprPtr implication()
	{
		ExprPtr lhs = disjunction();
		if (!at_kw("implies"))
			return lhs;
		SourcePos p = pos();
		++i_;
		return at(ast::implies(lhs, implication()), p);
	}

	ExprPtr disjunction()
	{
		ExprPtr lhs = conjunction();
		while (at_kw("or")) {
			SourcePos p = pos();
			++i_;
			lhs = at(ast::or_(lhs, conjunction()), p);
		}
		return lhs;
	}

	ExprPtr conjunction()
	{
		ExprPtr lhs = unary_formula();
		while (at_kw("and")) {
			SourcePos p = pos();
			++i_;
			lhs = at(ast::and_(lhs, unary_formula()), p);
		}
		return lhs;
	}

	ExprPtr unary_formula()
	{
		SourcePos p = pos();
		if (accept_kw("not"))
			return at(ast::not_(unary_formula()), p);
		if (at_kw("exists") || at_kw("forall")) {
			bool ex = peek().text == "exists";
			++i_;
			std::string v = ident("a variable");
			ExprPtr body = formula();
			return at(ex ? ast::exists(v, body) : ast::forall(v, body), p);
		}
		return atomic_formula();
	}

	std::optional<Kind> comparison() const
	{
		if (peek().type != Tok::Punct)
			return std::nullopt;
		const std::string &t = peek().text;
		if (t == "<=") return Kind::Leq;
		if (t == "<") return Kind::Lt;
		if (t == ">=") return Kind::Geq;
		if (t == ">") return Kind::Gt;
		if (t == "=") return Kind::TermEq;
		if (t == "!=") return Kind::TermNeq;
		return std::nullopt;
	}

	ExprPtr atomic_formula()
	{
		SourcePos p = pos();
		if (at_var() && !at_punct("(", 1)) {
			std::string x = toks_[i_++].text;
			bool eq = at_punct("=");
			if (!eq && !at_punct("!="))
				fail("expected '=' or '!=' after variable '" + x + "'");
			SourcePos op = pos();
			++i_;
			std::string y = ident("a variable");
			return at(eq ? ast::elem_eq(x, y) : ast::elem_neq(x, y), op);
		}
		std::size_t start = i_;
		ExprPtr lhs;
		try {
			lhs = term();
		} catch (const Failure &as_term) {
			i_ = start;
			if (!at_punct("("))
				throw;
			try {
				++i_;
				ExprPtr f = formula();
				expect_punct(")");
				return f;
			} catch (const Failure &as_formula) {
				throw further(as_term, as_formula);
			}
		}
		if (auto k = comparison()) {
			SourcePos op = pos();
			++i_;
			ExprPtr rhs = term();
			auto e = std::make_shared<Expr>();
			e->kind = *k;
			e->kids = {lhs, rhs};
			e->pos = op;
			return e;
		}
		if (lhs->kind == Kind::WeightAtom) {
			if (lhs->symbol == "edge" && lhs->vars.size() == 2)
				return at(ast::edge(lhs->vars[0], lhs->vars[1]), lhs->pos);
			return at(ast::rel(lhs->symbol, lhs->vars), lhs->pos);
		}
		(void)p;
		fail("expected a comparison operator");
	}

	// ---- terms ----

	ExprPtr term()
	{
		std::size_t start = i_;
		if (auto it = term_ok_.find(start); it != term_ok_.end()) {
			i_ = it->second.second;
			return it->second.first;
		}
		if (auto it = term_failed_.find(start); it != term_failed_.end())
			throw it->second;
		try {
			ExprPtr t = additive();
			term_ok_.emplace(start, std::make_pair(t, i_));
			return t;
		} catch (const Failure &f) {
			term_failed_.emplace(start, f);
			throw;
		}
	}

	ExprPtr additive()
	{
		ExprPtr lhs = multiplicative();
		while (at_punct("+") || at_punct("-")) {
			SourcePos p = pos();
			ArithOp op = peek().text == "+" ? ArithOp::Add : ArithOp::Sub;
			++i_;
			lhs = at(ast::arith(op, lhs, multiplicative()), p);
		}
		return lhs;
	}

	ExprPtr multiplicative()
	{
		ExprPtr lhs = unary_term();
		while (at_punct("*") || at_punct("/")) {
			SourcePos p = pos();
			ArithOp op = peek().text == "*" ? ArithOp::Mul : ArithOp::Div;
			++i_;
			lhs = at(ast::arith(op, lhs, unary_term()), p);
		}
		return lhs;
	}

	ExprPtr number(bool negative)
	{
		SourcePos p = pos();
		ExtRational q;
		try {
			q = ExtRational::parse(peek().text);
		} catch (const std::invalid_argument &) {
			fail("malformed number");
		}
		++i_;
		if (negative)
			q = ExtRational(0) - q;
		return at(ast::lit(q), p);
	}

	ExprPtr unary_term()
	{
		SourcePos p = pos();
		if (accept_punct("-")) {
			if (peek().type == Tok::Number)
				return number(true);
			return at(ast::sub(ast::zero(), unary_term()), p);
		}
		return primary_term();
	}

	// "{" vars ":" formula "}"
	std::pair<ast::Vars, ExprPtr> comprehension()
	{
		expect_punct("{");
		ast::Vars vs = var_list(":", false, true);
		expect_punct(":");
		ExprPtr guard = formula();
		expect_punct("}");
		return {std::move(vs), std::move(guard)};
	}

	ExprPtr primary_term()
	{
		SourcePos p = pos();
		const Token &t = peek();
		if (t.type == Tok::Number)
			return number(false);
		if (t.type == Tok::Punct && t.text == "(") {
			++i_;
			ExprPtr inner = term();
			expect_punct(")");
			return inner;
		}
		if (t.type != Tok::Ident)
			fail("expected a term");
		const std::string word = t.text;
		if (word == "bot") {
			++i_;
			return at(ast::bot(), p);
		}
		if (word == "sum" || word == "avg" || word == "min" || word == "max") {
			++i_;
			auto [vs, guard] = comprehension();
			ExprPtr body = multiplicative();
			ExprPtr e = word == "sum"   ? ast::sum(vs, guard, body)
			          : word == "avg" ? ast::avg(vs, guard, body)
			          : word == "min" ? ast::min(vs, guard, body)
			                          : ast::max(vs, guard, body);
			return at(e, p);
		}
		if (word == "count") {
			++i_;
			auto [vs, guard] = comprehension();
			return at(ast::count(vs, guard), p);
		}
		if (word == "if") {
			++i_;
			ExprPtr c = formula();
			expect_kw("then");
			ExprPtr a = term();
			expect_kw("else");
			ExprPtr b = term();
			return at(ast::cond(c, a, b), p);
		}
		if (word == "ifp") {
			++i_;
			expect_punct("(");
			std::string fn = ident("a function symbol");
			expect_punct("(");
			ast::Vars bound = var_list(")", true, true);
			expect_punct(")");
			expect_punct("<-");
			ExprPtr body = term();
			expect_punct(")");
			expect_punct("(");
			SourcePos ap = pos();
			ast::Vars applied = var_list(")", true, false);
			expect_punct(")");
			if (applied.size() != bound.size())
				throw Failure{i_ - 1,
				              "ifp applied to " + std::to_string(applied.size()) + " variables, binds " +
				                  std::to_string(bound.size()),
				              ap};
			return at(ast::ifp(fn, bound, body, applied), p);
		}
		if (is_keyword(word))
			fail("expected a term");
		if (!at_punct("(", 1)) {
			++i_;
			throw Failure{i_ - 1,
			              "variable '" + word + "' used as a term (write " + word + "() for a constant)", p};
		}
		i_ += 2;
		ast::Vars args = var_list(")", true, false);
		expect_punct(")");
		return at(ast::weight(word, args), p);
	}
};

ExprPtr checked(ExprPtr e)
{
	try {
		vocabulary_of(*e);
	} catch (const VocabularyError &err) {
		throw ParseError(err.message(), err.pos().line, err.pos().column);
	}
	return e;
}

} // namespace

ExprPtr parse(std::string_view text)
{
	Parser p(lex(text));
	try {
		return checked(p.whole(false));
	} catch (const Failure &as_term) {
		try {
			return checked(p.whole(true));
		} catch (const Failure &as_formula) {
			Parser::raise(further(as_term, as_formula));
		}
	}
}

ExprPtr parse_formula(std::string_view text)
{
	Parser p(lex(text));
	try {
		return checked(p.whole(true));
	} catch (const Failure &f) {
		Parser::raise(f);
	}
}

ExprPtr parse_term(std::string_view text)
{
	Parser p(lex(text));
	try {
		return checked(p.whole(false));
	} catch (const Failure &f) {
		Parser::raise(f);
	}
}

} // namespace wsq
