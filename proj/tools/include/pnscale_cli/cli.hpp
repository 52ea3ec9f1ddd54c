#pragma once

#include <iosfwd>
#include <string>

namespace pnscale_cli {

// One batch run: read an instance file, execute one command, emit one JSON
// report. Exit-code contract: 0 feasible/bounded/converged, 1 input error,
// 2 certified infeasible/unbounded, 3 indeterminate.
struct RunConfig {
  std::string command;     // sinkhorn | opscale | certify | recession |
                           // busemann | polytope-check
  std::string input_path;
  double eps = 1e-8;
  double delta = 1e-3;
  int budget = 10000;
  unsigned long long seed = 0;
  std::string output;      // empty = stdout
  std::string format = "json";
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCertified = 2;
inline constexpr int kExitIndeterminate = 3;

// Executes one run; the report goes to the configured output (or `out`).
// Reports are byte-identical across runs with the same config except for
// the trailing wall_time_ms field.
int run(const RunConfig& config, std::ostream& out);

// argv front end: parses flags into a RunConfig and calls run().
int main_entry(int argc, const char* const* argv);

}  // namespace pnscale_cli
