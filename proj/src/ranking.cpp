#include "ontorank/ranking.hpp"

#include <algorithm>
#include <numeric>

#include "ontorank/errors.hpp"

namespace ontorank {

RankedPrediction rank_by_score(std::span<const std::string> classes,
                               std::span<const double> scores,
                               std::string term) {
  if (classes.size() != scores.size()) {
    throw Error(Errc::DimensionMismatch,
                std::to_string(classes.size()) + " classes but " +
                    std::to_string(scores.size()) + " scores");
  }
  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return classes[a] < classes[b];
  });
  RankedPrediction out;
  out.term = std::move(term);
  out.ranked_labels.reserve(order.size());
  out.scores.reserve(order.size());
  for (const auto i : order) {
    out.ranked_labels.push_back(classes[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

std::size_t rank_of(std::span<const std::string> ranked, std::string_view label) {
  const auto it = std::find(ranked.begin(), ranked.end(), label);
  if (it == ranked.end()) {
    throw Error(Errc::UnknownLabel,
                "'" + std::string(label) + "' is not in the ranked list");
  }
  return static_cast<std::size_t>(it - ranked.begin()) + 1;
}

std::string_view to_string(MergeMode mode) noexcept {
  return mode == MergeMode::Always ? "always" : "skip-defaulted";
}

MergedPrediction merge(const RankedPrediction& ranked,
                       std::string_view ontology_label, bool defaulted,
                       MergeMode mode) {
  MergedPrediction out;
  out.term = ranked.term;
  out.ontology_label = std::string(ontology_label);
  out.ontology_defaulted = defaulted;
  out.pre_merge_rank = rank_of(ranked.ranked_labels, ontology_label);
  out.ranked_labels = ranked.ranked_labels;
  if (defaulted && mode == MergeMode::SkipDefaulted) return out;
  const auto first = out.ranked_labels.begin();
  std::rotate(first, first + static_cast<std::ptrdiff_t>(out.pre_merge_rank - 1),
              first + static_cast<std::ptrdiff_t>(out.pre_merge_rank));
  return out;
}

RankHistogram rank_histogram(
    std::span<const std::pair<RankedPrediction, std::string>> pairs) {
  RankHistogram histogram;
  for (const auto& [ranked, label] : pairs) {
    ++histogram[rank_of(ranked.ranked_labels, label)];
  }
  return histogram;
}

std::string histogram_csv(const RankHistogram& histogram) {
  std::string out = "rank,count\n";
  for (const auto& [rank, count] : histogram) {
    out += std::to_string(rank) + "," + std::to_string(count) + "\n";
  }
  return out;
}

}  // namespace ontorank
