#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdist/homspace.hpp"

namespace fdist {

/// One expected-vs-computed check of the paper-value suite.
struct PaperRow {
  std::string section;   // module the check exercises
  std::string claim;
  std::string relation;  // "=", "<=" or ">="
  double expected = 0;
  double computed = 0;
  double tolerance = 0;
  bool pass = false;
};

struct PaperOptions {
  Effort effort;
  std::uint64_t seed = 0;
  Execution exec = Execution::Parallel;
  /// Applied to every irrep table used by the Fourier rows (fault injection).
  std::function<IrrepTable(const IrrepTable&)> fourier_table_hook;
};

struct PaperReport {
  std::vector<PaperRow> rows;
  bool all_pass() const;
};

PaperReport reproduce_paper(const PaperOptions& opts);

/// Exit codes of `run_cli`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a check or verdict failed
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSizeLimit = 3;
inline constexpr int kExitNumeric = 4;

/// Runs the `fdist` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdist
