#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isocomm::cli {

// Exit codes shared by every subcommand. Decision subcommands map their
// three-valued answers onto the first three; constructive subcommands
// (enum, abel, f --eval, torus mul/inv, tietze) use 0 for success.
inline constexpr int kExitYes = 0;       // Yes / trivial / success
inline constexpr int kExitNo = 1;        // No / nontrivial
inline constexpr int kExitUnknown = 2;   // Unknown within the given budget
inline constexpr int kExitUsage = 64;    // bad flags, bad argument combinations
inline constexpr int kExitParse = 65;    // malformed word, element, file, or table spec
inline constexpr int kExitInternal = 70; // unexpected failure (defensive; not part of
                                         // the documented verdict mapping)

// Runs one invocation. `args` is the argument list in natural order,
// without the program name. Results go to `out` (one verdict line, then
// optional `key: value` certificate lines); diagnostics go to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace isocomm::cli
