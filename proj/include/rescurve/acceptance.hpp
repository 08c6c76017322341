#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rescurve {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionInfo {
  int id = 0;
  std::string name;   // stable short name, also accepted as a suite id
  std::string title;  // one-line description
};

/// The twelve acceptance criteria in order.
const std::vector<CriterionInfo>& criteria();

/// Runs one criterion. Numerical exceptions are caught and reported as a
/// failure with the message in `detail`.
CriterionResult run_criterion(int id);

/// Criteria selected by a suite id: a criterion name, its number, or "all".
/// Throws std::invalid_argument for an unknown suite.
std::vector<int> suite_criteria(std::string_view suite);

/// "PASS  4 disk-usinu       <detail>" style line.
std::string format_result(const CriterionResult& result);

}  // namespace rescurve
