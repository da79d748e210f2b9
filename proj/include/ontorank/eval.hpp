#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontorank/baselines.hpp"
#include "ontorank/embeddings.hpp"
#include "ontorank/forest.hpp"
#include "ontorank/ontology_classifier.hpp"
#include "ontorank/ranking.hpp"

namespace ontorank {

struct Record {
  std::string term;
  /// Canonical spelling from the LabelSet.
  std::string gold;
  friend bool operator==(const Record&, const Record&) = default;
};

struct Dataset {
  std::vector<Record> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  std::vector<std::string> terms() const;
  std::vector<std::string> golds() const;
};

/// Splits one CSV line into fields (RFC 4180 quoting, no embedded newlines).
/// Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

/// Quotes a CSV field when needed.
std::string csv_escape(std::string_view field);

/// CSV with header `term,label`; labels are validated against `labels`.
Dataset parse_dataset(std::istream& in, const LabelSet& labels);
Dataset load_dataset(const std::filesystem::path& path, const LabelSet& labels);

/// Seeded shuffle; the first floor(train_fraction * n) records train, the rest
/// test. With `stratify`, each gold label is shuffled and cut separately.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed, bool stratify = false);

/// 1-based position of `gold`; throws Error{GoldMissingFromRanking}.
std::size_t gold_rank(std::span<const std::string> ranked, std::string_view gold);

/// Fraction of lists whose first label is the gold label.
double accuracy(std::span<const std::vector<std::string>> predictions,
                std::span<const std::string> golds);

/// Mean 1-based rank of the gold label.
double average_label_rank(std::span<const std::vector<std::string>> predictions,
                          std::span<const std::string> golds);

struct EvalReport {
  std::string method;
  bool approximate = false;
  std::size_t n = 0;
  double accuracy = 0.0;
  /// Absent for single-label predictors.
  std::optional<double> average_label_rank;
  std::map<std::string, double> per_label_accuracy;
  /// Histogram of gold ranks; only for ranked predictors.
  RankHistogram gold_rank_histogram;
};

EvalReport make_report(std::string method,
                       std::span<const std::vector<std::string>> predictions,
                       std::span<const std::string> golds, bool ranked = true);

struct PipelineOptions {
  ForestConfig forest;
  ClassifierOptions classifier;
  MergeMode merge = MergeMode::Always;
  bool baselines = true;
  DistanceMetric centroid_metric = DistanceMetric::Cosine;
  LogisticConfig logistic;
};

struct InstanceOutcome {
  std::string term;
  std::string gold;
  RankedPrediction forest;
  std::string ontology_label;
  bool ontology_defaulted = false;
  MergedPrediction merged;
};

struct PipelineResult {
  EvalReport forest;
  EvalReport ontology;
  EvalReport merged;
  std::vector<EvalReport> baselines;
  /// Where the ontology label sat in the forest list, before merging.
  RankHistogram ontology_rank_histogram;
  std::vector<InstanceOutcome> instances;
};

/// Trains the forest on `train` (class list = every label), classifies `test`
/// with the forest, the ontology and their merge, and scores all three.
PipelineResult evaluate_pipeline(const Dataset& train, const Dataset& test,
                                 const HypernymGraph& graph, const LabelSet& labels,
                                 const SynonymLexicon& lexicon,
                                 const Embeddings& embeddings,
                                 const PipelineOptions& options = {});

}  // namespace ontorank
