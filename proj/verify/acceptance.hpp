#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace confspace::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool math_ok = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
  bool passed() const { return math_ok && seconds <= budget_seconds; }
};

struct Options {
  std::set<int> only;          // empty runs all 15
  int workers = 1;
  std::ostream* log = nullptr;  // progress and per-criterion lines as they finish
};

int criterion_count();
std::vector<CriterionResult> run(const Options& opts);
std::string format_line(const CriterionResult& r);

}  // namespace confspace::acceptance
