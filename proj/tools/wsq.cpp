/* SPDX-License-Identifier: Apache-2.0 */

#include "wsq/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

int main(int argc, char **argv)
{
	std::vector<std::string> args(argv + 1, argv + argc);
	return wsq::cli::run(args, std::cout, std::cerr, std::cin, isatty(STDIN_FILENO) != 0);
}
