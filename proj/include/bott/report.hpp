#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bott {

// Outcome of an exhaustive or sampled verification suite.
struct VerifyReport {
  std::string suite;
  int n = 0;
  std::size_t classes_checked = 0;
  std::size_t cases_checked = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
  void merge(const VerifyReport& other);
};

}  // namespace bott
