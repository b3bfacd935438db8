/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsq::cli {

/// Process exit codes.
enum Exit : int {
	ok = 0,
	usage = 1,      // parse errors, bad arguments
	structure = 2,  // unreadable or invalid structure, symbol kind/arity clash
	unbound = 3,    // free variables without a binding
	resource = 4,   // a configured cap was exceeded
};

/// Runs the `wsq` command line; `args` excludes the program name.
/// `interactive` controls the REPL prompt.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, std::istream &in,
        bool interactive = false);

} // namespace wsq::cli
