#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cheigen {

// Runs one CLI invocation. `args` excludes the program name. Results go to
// `out`, diagnostics to `err`; `in` serves `--input -`. Returns the process
// exit code: 0 success, 1 domain errors (complex or irrational spectrum,
// failed verification, failed bench gate), 2 usage and parse errors.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

} // namespace cheigen
