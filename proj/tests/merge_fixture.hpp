#pragma once

#include <string>
#include <vector>

namespace test_util {

struct MergeCase {
  std::string forest;  // ranking as a string of one-letter labels
  std::string ontology;
  std::string gold;
  std::size_t merged_rank;  // worked out by hand
};

// Labels A-D. Sum of merged ranks is 52, so the merged average is 2.6.
inline const std::vector<MergeCase>& merge_cases() {
  static const std::vector<MergeCase> cases{
      {"ABCD", "A", "A", 1}, {"ABCD", "B", "A", 2}, {"ABCD", "C", "C", 1},
      {"ABCD", "D", "B", 3}, {"BACD", "A", "D", 4}, {"BACD", "D", "D", 1},
      {"CDAB", "C", "B", 4}, {"CDAB", "B", "A", 4}, {"DCBA", "A", "C", 3},
      {"DCBA", "D", "A", 4}, {"ABDC", "C", "D", 4}, {"ABDC", "B", "B", 1},
      {"BADC", "C", "A", 3}, {"BADC", "A", "B", 2}, {"CABD", "D", "C", 2},
      {"CABD", "A", "A", 1}, {"DABC", "B", "C", 4}, {"DABC", "C", "D", 2},
      {"ACBD", "D", "C", 3}, {"ACBD", "A", "B", 3},
  };
  return cases;
}

inline constexpr double kMergeCasesAverage = 2.6;

inline std::vector<std::string> letters(const std::string& s) {
  std::vector<std::string> out;
  for (const char c : s) out.emplace_back(1, c);
  return out;
}

}  // namespace test_util
