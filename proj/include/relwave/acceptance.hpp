#pragma once

// Quantitative acceptance checks, shared by the acceptance test binary and
// `relwave verify`. Each check recomputes its quantities from the library
// and compares against pinned thresholds; nothing is cached between checks.

#include <functional>
#include <string>
#include <vector>

namespace relwave::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  int threads = 1;
};

std::vector<int> criterion_ids();
CriterionResult evaluate(int id, const Options& options = {});

// Runs every criterion, invoking `report` after each one.
std::vector<CriterionResult> run_all(const Options& options,
                                     const std::function<void(const CriterionResult&)>& report);

// "PASS  3  <title>: <detail>"
std::string format(const CriterionResult& r);

}  // namespace relwave::acceptance
