#pragma once

#include <iosfwd>

namespace enwsn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRefused = 1;  // computation refused, e.g. every sweep cell infeasible
inline constexpr int kInputError = 2;

// Entry point of the `enwsn` tool: subcommands dbp, sweep, sustain, synth,
// topo and catalog. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace enwsn::cli
