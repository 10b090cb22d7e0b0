#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ginv {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limitSeconds = 0;
};

/// Runs the numbered acceptance checks (all of them when `only` is empty).
/// `onResult` is called as each check finishes.
std::vector<CriterionResult> runAcceptance(const std::vector<int>& only = {},
                                           const std::function<void(const CriterionResult&)>& onResult = {});

/// `PASS  3  title: detail (1.2 s)`.
std::string formatResult(const CriterionResult& r);

}  // namespace ginv
