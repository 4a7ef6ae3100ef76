#pragma once

#include <string>
#include <vector>

#include "qhe/fiber.hpp"
#include "qhe/verify.hpp"

namespace qhe::report {

// Numerical knobs applied to every model built by the suite.
struct SuiteOptions {
  GridOptions grid;
  SolverOptions solver;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Verdict> verdicts;

  bool pass() const;
};

// Criteria 1..13; determinism (14) needs two separate program runs.
std::vector<int> suite_criteria();
std::string criterion_name(int id);
CriterionResult run_criterion(int id, const SuiteOptions& options = {});

}  // namespace qhe::report
