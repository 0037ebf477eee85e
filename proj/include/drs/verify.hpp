#pragma once

// Acceptance suite: one function per numbered criterion.

#include <string>

namespace drs {

inline constexpr int kCriterionCount = 11;

/// Lower bound on P(S_primes ∈ B_N), fixed after calibration runs over
/// seeds 1..3 at N ∈ {10^4, 10^5, 10^6} (observed 0.2917 .. 0.3053).
inline constexpr double kSingularityProbFloor = 0.25;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  int threads = 0;
  std::string work_dir;  // scratch files for the determinism check; temp dir if empty
};

std::string criterion_name(int id);

CriterionResult run_criterion(int id, const VerifyOptions& options);

}  // namespace drs
