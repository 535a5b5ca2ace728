#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qhorn::acceptance {

inline constexpr int CRITERION_COUNT = 10;

struct Options {
  std::string fixture_dir;
  std::uint64_t seed = 20240611;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;  // wall-clock limit in seconds, part of pass
};

// Criteria 1..9 run in process; 10 needs the command-line tool and is handled by the caller.
CriterionResult run_criterion(int id, const Options& opts);
std::string criterion_name(int id);
double criterion_budget(int id);

// "[PASS] 3 hadamard walk oracle (0.41 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace qhorn::acceptance
