#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontorank {

/// A full permutation of the class list, most likely first.
struct RankedPrediction {
  std::string term;
  std::vector<std::string> ranked_labels;
  /// Aligned with ranked_labels; non-increasing.
  std::vector<double> scores;
};

/// Sorts classes by descending score, ties broken by label order.
RankedPrediction rank_by_score(std::span<const std::string> classes,
                               std::span<const double> scores,
                               std::string term = {});

/// 1-based position of `label` in `ranked`. Throws Error{UnknownLabel}.
std::size_t rank_of(std::span<const std::string> ranked, std::string_view label);

/// Whether a defaulted ontology prediction is moved to the front.
enum class MergeMode { Always, SkipDefaulted };

std::string_view to_string(MergeMode mode) noexcept;

struct MergedPrediction {
  std::string term;
  std::vector<std::string> ranked_labels;
  std::string ontology_label;
  bool ontology_defaulted = false;
  /// 1-based rank of ontology_label in the forest list before merging.
  std::size_t pre_merge_rank = 1;
};

/// Moves `ontology_label` to the front, keeping the order of the rest.
/// With MergeMode::SkipDefaulted and `defaulted`, the list is left as is.
MergedPrediction merge(const RankedPrediction& ranked,
                       std::string_view ontology_label, bool defaulted = false,
                       MergeMode mode = MergeMode::Always);

using RankHistogram = std::map<std::size_t, std::size_t>;

/// Histogram of where each ontology label sat in its forest list.
RankHistogram rank_histogram(
    std::span<const std::pair<RankedPrediction, std::string>> pairs);

/// `rank,count` lines with a header.
std::string histogram_csv(const RankHistogram& histogram);

}  // namespace ontorank
