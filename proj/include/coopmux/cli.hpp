// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coopmux {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitNumeric = 4;

/// Default output directory for `figure` (and for `sweep` without an output path).
inline constexpr const char* kOutDirEnv = "COOPMUX_OUT_DIR";

/// Runs one command line (without the program name) and returns the exit code.
///
///   figure <2..8> [--out DIR] [--r X] [--phi-db A,B] [--eta-start/--eta-stop/--eta-step DB]
///   sweep <config> [--out FILE]
///   dmt mimo <tx> <rx> | dmt stc <K> <M_t> <N> | dmt direct_hd <K> <N>   [--out FILE]
///   effectiveness fixed|stc <K> <M> <N> <M_t> | effectiveness dblast <M> <N> <M_t>
///
/// Counts may also be given as name=value (K, M, N, Mt, Mr, tx, rx). Common
/// flags: --seed, --trials, --workers.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coopmux
