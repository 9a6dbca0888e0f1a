// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CLI_COMMANDS_H
#define MINICHAIN_CLI_COMMANDS_H

#include <iosfwd>
#include <string>
#include <vector>

namespace minichain::cli {

// Every command maps each error class to exactly one code.
enum ExitStatus : int {
    exit_ok = 0,
    exit_user_error = 1,
    exit_not_found = 2,
    exit_io_error = 3,
};

/// Full command dispatch; argv without the program name. Never throws:
/// every failure maps to an ExitStatus and a line on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minichain::cli

#endif  // MINICHAIN_CLI_COMMANDS_H
