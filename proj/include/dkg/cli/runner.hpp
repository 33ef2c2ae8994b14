#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dkg/cli/run_config.hpp"

namespace dkg::cli {

/// Empty cells print as blank CSV fields and JSON null.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// 17 significant digits; blank for NaN.
std::string format_number(double x);
void write_csv(const Table& t, std::ostream& os);
void write_json(const RunConfig& cfg, const Table& t, std::ostream& os);

struct RunOutcome {
  Table table;
  /// 0 success, 2 when a trusted verify check failed.
  int status = 0;
};

/// Computes the records of one run. Throws the library's error types.
RunOutcome execute(const RunConfig& cfg);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolver = 2;

/// execute + output, mapping exceptions to exit codes with a diagnostic on err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, char** argv);

} // namespace dkg::cli
