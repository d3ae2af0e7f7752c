#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmr {

// In-process entry point for the command-line surface. `args` holds the
// arguments without the program name, in natural order. Human-readable
// output goes to `out`; usage text and one-line machine-greppable errors
// (`error[{code}]: message`) go to `err`. Returns the process exit code:
// 0 on success (including --help and non-converged solves, which are data,
// not failures), nonzero on bad flags or I/O and validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmr
