/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/printer.hpp"

namespace wsq {

namespace {

std::string join(const std::vector<std::string> &vs)
{
	std::string out;
	for (std::size_t i = 0; i < vs.size(); ++i)
		out += (i ? ", " : "") + vs[i];
	return out;
}

const char *cmp_text(Kind k)
{
	switch (k) {
	case Kind::Leq: return "<=";
	case Kind::Lt: return "<";
	case Kind::Geq: return ">=";
	case Kind::Gt: return ">";
	case Kind::TermEq: return "=";
	case Kind::TermNeq: return "!=";
	default: return "?";
	}
}

void emit(const Expr &e, std::string &out)
{
	auto binary = [&](const char *op) {
		out += "(";
		emit(*e.kids[0], out);
		out += std::string(" ") + op + " ";
		emit(*e.kids[1], out);
		out += ")";
	};
	auto comprehension = [&](const char *word) {
		out += std::string("(") + word + " {" + join(e.vars) + " : ";
		emit(*e.kids[0], out);
		out += "}";
		if (e.kids.size() > 1) {
			out += " ";
			emit(*e.kids[1], out);
		}
		out += ")";
	};
	switch (e.kind) {
	case Kind::ElemEq:
		out += "(" + e.vars[0] + " = " + e.vars[1] + ")";
		break;
	case Kind::ElemNeq:
		out += "(" + e.vars[0] + " != " + e.vars[1] + ")";
		break;
	case Kind::EdgeTest:
		out += "edge(" + join(e.vars) + ")";
		break;
	case Kind::RelAtom:
	case Kind::WeightAtom:
		out += e.symbol + "(" + join(e.vars) + ")";
		break;
	case Kind::Leq: case Kind::Lt: case Kind::Geq: case Kind::Gt: case Kind::TermEq: case Kind::TermNeq:
		binary(cmp_text(e.kind));
		break;
	case Kind::Not:
		out += "(not ";
		emit(*e.kids[0], out);
		out += ")";
		break;
	case Kind::And: binary("and"); break;
	case Kind::Or: binary("or"); break;
	case Kind::Implies: binary("implies"); break;
	case Kind::Exists:
	case Kind::Forall:
		out += std::string("(") + (e.kind == Kind::Exists ? "exists " : "forall ") + e.vars[0] + " ";
		emit(*e.kids[0], out);
		out += ")";
		break;
	case Kind::Zero: out += "0"; break;
	case Kind::One: out += "1"; break;
	case Kind::Literal: out += e.literal.str(); break;
	case Kind::Arith: {
		char op[2] = {arith_symbol(e.op), 0};
		binary(op);
		break;
	}
	case Kind::Cond:
		out += "(if ";
		emit(*e.kids[0], out);
		out += " then ";
		emit(*e.kids[1], out);
		out += " else ";
		emit(*e.kids[2], out);
		out += ")";
		break;
	case Kind::Sum: comprehension("sum"); break;
	case Kind::Count: comprehension("count"); break;
	case Kind::Avg: comprehension("avg"); break;
	case Kind::Min: comprehension("min"); break;
	case Kind::Max: comprehension("max"); break;
	case Kind::Ifp:
		out += "ifp (" + e.symbol + "(" + join(e.vars) + ") <- ";
		emit(*e.kids[0], out);
		out += ")(" + join(e.applied) + ")";
		break;
	}
}

} // namespace

std::string print(const Expr &e)
{
	std::string out;
	emit(e, out);
	return out;
}

} // namespace wsq
