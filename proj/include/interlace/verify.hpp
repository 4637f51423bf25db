#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace interlace {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;   // randomized instances checked
  std::size_t checks = 0;  // individual inequalities / identities
  double worst = 0.0;      // largest observed violation measure (<= 0 is clean)
  std::string detail;      // first failure, or a short summary
  double seconds = 0.0;
};

/// exact, oracle, kls, mu2, mixed-bound, lyapunov, partition, hermitian,
/// structural, barrier, exhaustive.
const std::vector<std::string>& suite_names();

/// Runs one named suite with instances drawn from `seed`. `cases` = 0 picks
/// the suite's default count. Throws InvalidArgument for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t cases = 0);

/// "all" or a comma-separated list of suite names.
std::vector<SuiteResult> run_suites(const std::string& selector, std::uint64_t seed,
                                    std::size_t cases = 0);

}  // namespace interlace
