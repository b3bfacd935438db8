/* SPDX-License-Identifier: Apache-2.0 */

// Golden cases live in tests/golden as <name>.cmd (a shell argument line for
// the wsq binary, run from tests/data), an optional <name>.stdin, and
// <name>.out whose first line is "exit: N" followed by the expected stdout.
// $WSQ names the binary inside the argument line.

#pragma once

#include <string>
#include <vector>

namespace golden {

struct Result {
	std::string name;
	bool passed = false;
	std::string detail;
};

std::vector<Result> run_all(const std::string &binary, const std::string &golden_dir, const std::string &data_dir);

/// Runs `command` through the shell; returns exit status and stdout.
std::pair<int, std::string> shell(const std::string &command);

} // namespace golden
