/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/ast.hpp"

#include <string>

namespace wsq {

/// Concrete syntax with every compound subexpression parenthesized, so that
/// parse(print(e)) is structurally equal to e.
std::string print(const Expr &e);

} // namespace wsq
