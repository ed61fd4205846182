#ifndef TFCOP_CLI_HPP
#define TFCOP_CLI_HPP

namespace tfcop::cli {

// Parses argv, dispatches to a subcommand, and returns the process exit code:
//   0 success, 1 config/usage error, 2 validation or property failure,
//   3 acceptance-suite failure.
int run(int argc, char** argv);

} // namespace tfcop::cli

#endif
