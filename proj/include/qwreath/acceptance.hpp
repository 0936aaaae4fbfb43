#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qw {

struct CriterionCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CriterionCheck> checks;
  double seconds = 0;

  bool passed() const;
  // "criterion 3: PASS  z_{2,2} coefficients (0.4 s)"
  std::string line() const;
  nlohmann::json toJson() const;
};

constexpr int kCriterionCount = 11;
std::string criterionTitle(int id);
// Throws std::out_of_range for ids outside 1..kCriterionCount.
CriterionResult runCriterion(int id, std::uint64_t seed = 1);

}  // namespace qw
