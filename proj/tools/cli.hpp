#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qhorn::cli {

inline constexpr std::uint64_t DEFAULT_SEED = 20240611;

enum ExitCode : int {
  EXIT_OK = 0,
  EXIT_REFUTED = 1,
  EXIT_FAILED = 2,
  EXIT_ERROR = 3,
  EXIT_USAGE = 64,
  EXIT_NOINPUT = 66,
};

struct RunConfig {
  std::string subcommand;  // prove, walk, slh-compose, simulate, fock-check, selftest
  std::vector<std::string> inputs;
  std::string output;  // empty: stdout
  std::string goal;
  std::string model = "jc-cascade";
  std::string initial = "ee";
  std::string fixture_dir;
  std::size_t steps = 0;
  double t_max = 10.0;
  double dt = 0.001;
  double alpha = 1.0;
  std::optional<std::size_t> cutoff;
  std::uint64_t seed = DEFAULT_SEED;
  bool trace = false;
  bool rho = false;
  bool matrices = false;
  double kappa = 10.0;
  double gamma = 0.1;
  double g = 1.0;
};

// Exit code per the documented contract.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (QHORN_SEED overrides the default seed) and runs; bad flags give 64.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "x,prob" rows; probabilities always carry a decimal point.
std::string walk_csv(std::size_t steps);
std::string format_csv_number(double x);

}  // namespace qhorn::cli
