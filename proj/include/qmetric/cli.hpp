#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmetric::cli {

enum class Format { json, csv };

struct RunConfig {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  double tol_lp = 1e-8;
  double tol_iter = 1e-6;
  int probes_pure = 2;
  int probes_mixed = 2;
  Format format = Format::json;
  bool timestamp = true;
  bool verbose = false;
  // dist
  int first = 0;
  int second = 1;
  std::string method = "auto";
  // verify
  int count = 10;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

/// Parses arguments (without the program name) and runs one command, writing the
/// report to `out` (or the --output file) and diagnostics to `err`. Returns 0 when every
/// check passes, 1 on a verification failure and 2 on an input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmetric::cli
