#pragma once

// Command-line front-end. run() is the whole program minus process setup so
// tests can drive it in-process.

#include <iosfwd>
#include <span>
#include <string>

namespace carpetdim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitUnknownSubcommand = 3;

/// args excludes the program name. JSON results and error objects go to out;
/// human-readable diagnostics go to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace carpetdim::cli
