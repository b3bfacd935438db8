/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsq {

/// Base of every error raised by the library. Semantic undefinedness is
/// never an error: it is the value bot.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Caller broke a precondition: unknown symbol, arity clash, bad argument.
class UsageError : public Error {
public:
	using Error::Error;
};

/// A free variable of the evaluated expression has no binding.
class UnboundVariableError : public UsageError {
public:
	using UsageError::UsageError;
};

/// A symbol the structure interprets with another kind or arity than the
/// expression uses.
class SymbolMismatchError : public UsageError {
public:
	using UsageError::UsageError;
};

/// Malformed structure or FNN file, or a structure failing validation.
class StructureError : public Error {
public:
	using Error::Error;
};

/// A configured cap (fixpoint cells, summands, pwl pieces) was exceeded.
class ResourceError : public Error {
public:
	using Error::Error;
};

class ParseError : public Error {
public:
	ParseError(const std::string &msg, std::size_t line, std::size_t column)
	: Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg)
	, line_(line)
	, column_(column)
	{}

	std::size_t line() const { return line_; }
	std::size_t column() const { return column_; }

private:
	std::size_t line_;
	std::size_t column_;
};

} // namespace wsq
