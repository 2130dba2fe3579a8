#pragma once

/// @file
/// Command-line front end.
///
///   verify <file> [--refine N] [--json]
///   oracle <file> --property mid|mim --direction isotone|antitone [--all-pairs] [--json]
///   signs  <file> [--json]
///   gadget <file> --evidence E=e --p R -o <out>
///   random --nodes N --seed S [--polytree] [...] -o <out>
///   infer  <file> --evidence "X1=v,..." --target C [--json]
///
/// `-o -` writes to standard output. Diagnostics go to the error stream.

#include <ostream>
#include <string>
#include <vector>

namespace monobn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidNetwork = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitZeroEvidence = 4;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monobn
