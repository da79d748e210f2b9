#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace test_util {

// Per-label row counts of the shared-task training file (614 rows).
inline const std::vector<std::pair<std::string, std::size_t>>& train_label_counts() {
  static const std::vector<std::pair<std::string, std::size_t>> counts{
      {"Forward", 9},     {"Funds", 22},         {"Future", 19},        {"MMIs", 17},
      {"Option", 24},     {"Stocks", 17},        {"Swap", 36},          {"Equity Index", 286},
      {"Credit Index", 129}, {"Bonds", 55},
  };
  return counts;
}

/// A term,label CSV with those counts; terms are placeholders.
inline std::string synthetic_train_csv() {
  std::ostringstream out;
  out << "term,label\n";
  for (const auto& [label, n] : train_label_counts()) {
    for (std::size_t i = 0; i < n; ++i) out << "\"" << label << " item " << i << "\"," << label << "\n";
  }
  return out.str();
}

}  // namespace test_util
