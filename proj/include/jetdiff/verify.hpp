#pragma once

#include <string>
#include <vector>

namespace jetdiff {

struct SuiteCase {
  std::string name;
  bool passed;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCase> cases;

  std::vector<std::string> failures() const;
};

/// relationR: the quadratic relation for every pair i < j in n = 2, 3.
/// invariance: every generator in n = 3 has the weight it claims.
/// unipotent: f2 ↦ λf1 + f2 fixes w12 and w12^1 and shifts w12^2 by λ·w12^1.
/// group-law: at k = 3, reparametrizing by b then c equals one
/// reparametrization by the composed series.
SuiteResult run_suite(const std::string& suite);

std::vector<std::string> suite_names();

}  // namespace jetdiff
