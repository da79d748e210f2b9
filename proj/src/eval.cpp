#include "ontorank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>

#include "ontorank/errors.hpp"
#include "ontorank/io.hpp"
#include "ontorank/random.hpp"

namespace ontorank {

std::vector<std::string> Dataset::terms() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.term);
  return out;
}

std::vector<std::string> Dataset::golds() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.gold);
  return out;
}

std::optional<std::vector<std::string>> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  return fields;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Dataset parse_dataset(std::istream& in, const LabelSet& labels) {
  Dataset dataset;
  bool header_seen = false;
  for_each_line(in, [&](std::size_t number, std::string_view line) {
    if (!header_seen) {
      const auto fields = split_csv_line(line);
      if (!fields || fields->size() != 2 || trim((*fields)[0]) != "term" ||
          trim((*fields)[1]) != "label") {
        throw Error(Errc::MalformedRow, "header must be 'term,label'", number);
      }
      header_seen = true;
      return;
    }
    if (trim(line).empty()) return;
    const auto fields = split_csv_line(line);
    if (!fields || fields->size() != 2) {
      throw Error(Errc::MalformedRow, "expected 2 fields", number);
    }
    const auto term = trim((*fields)[0]);
    if (term.empty()) throw Error(Errc::MalformedRow, "empty term", number);
    const auto* gold = labels.find((*fields)[1]);
    if (gold == nullptr) {
      throw Error(Errc::UnknownGoldLabel, "'" + (*fields)[1] + "'", number);
    }
    dataset.records.push_back({std::string(term), *gold});
  });
  if (!header_seen) throw Error(Errc::MalformedRow, "missing header 'term,label'", 1);
  return dataset;
}

Dataset load_dataset(const std::filesystem::path& path, const LabelSet& labels) {
  auto in = open_input(path);
  return parse_dataset(in, labels);
}

namespace {

std::size_t train_size(std::size_t n, double fraction) {
  // The epsilon keeps products such as 0.29 * 100 from flooring one short.
  return std::min(n, static_cast<std::size_t>(
                         std::floor(fraction * static_cast<double>(n) + 1e-9)));
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed, bool stratify) {
  if (dataset.empty()) throw Error(Errc::DegenerateData, "cannot split an empty dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(Errc::InvalidArgument, "train fraction must lie strictly in (0, 1)");
  }

  std::vector<std::vector<std::size_t>> groups;
  if (stratify) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      by_label[dataset.records[i].gold].push_back(i);
    }
    for (auto& [label, members] : by_label) groups.push_back(std::move(members));
  } else {
    groups.emplace_back(dataset.size());
    std::iota(groups.front().begin(), groups.front().end(), std::size_t{0});
  }

  Rng rng(seed);
  std::pair<Dataset, Dataset> out;
  for (auto& group : groups) {
    rng.shuffle(std::span(group));
    const auto cut = train_size(group.size(), train_fraction);
    for (std::size_t i = 0; i < group.size(); ++i) {
      (i < cut ? out.first : out.second).records.push_back(dataset.records[group[i]]);
    }
  }
  return out;
}

std::size_t gold_rank(std::span<const std::string> ranked, std::string_view gold) {
  const auto it = std::find(ranked.begin(), ranked.end(), gold);
  if (it == ranked.end()) {
    throw Error(Errc::GoldMissingFromRanking,
                "gold label '" + std::string(gold) + "' is not ranked");
  }
  return static_cast<std::size_t>(it - ranked.begin()) + 1;
}

namespace {

void check_lengths(std::size_t predictions, std::size_t golds) {
  if (predictions != golds) {
    throw Error(Errc::LengthMismatch, std::to_string(predictions) +
                                          " predictions but " +
                                          std::to_string(golds) + " gold labels");
  }
  if (predictions == 0) throw Error(Errc::LengthMismatch, "no instances to score");
}

}  // namespace

double accuracy(std::span<const std::vector<std::string>> predictions,
                std::span<const std::string> golds) {
  check_lengths(predictions.size(), golds.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (!predictions[i].empty() && predictions[i].front() == golds[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(golds.size());
}

double average_label_rank(std::span<const std::vector<std::string>> predictions,
                          std::span<const std::string> golds) {
  check_lengths(predictions.size(), golds.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) total += gold_rank(predictions[i], golds[i]);
  return static_cast<double>(total) / static_cast<double>(golds.size());
}

EvalReport make_report(std::string method,
                       std::span<const std::vector<std::string>> predictions,
                       std::span<const std::string> golds, bool ranked) {
  EvalReport report;
  report.method = std::move(method);
  report.n = golds.size();
  report.accuracy = accuracy(predictions, golds);
  if (ranked) {
    report.average_label_rank = average_label_rank(predictions, golds);
    for (std::size_t i = 0; i < golds.size(); ++i) {
      ++report.gold_rank_histogram[gold_rank(predictions[i], golds[i])];
    }
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    auto& [correct, total] = tally[golds[i]];
    ++total;
    if (!predictions[i].empty() && predictions[i].front() == golds[i]) ++correct;
  }
  for (const auto& [label, counts] : tally) {
    report.per_label_accuracy[label] =
        static_cast<double>(counts.first) / static_cast<double>(counts.second);
  }
  return report;
}

namespace {

// Labels a baseline never saw are appended in label order.
std::vector<std::string> complete(std::vector<std::string> ranked,
                                  const LabelSet& labels) {
  std::vector<std::string> missing;
  for (const auto& label : labels.labels()) {
    if (std::find(ranked.begin(), ranked.end(), label) == ranked.end()) {
      missing.push_back(label);
    }
  }
  std::sort(missing.begin(), missing.end());
  ranked.insert(ranked.end(), missing.begin(), missing.end());
  return ranked;
}

}  // namespace

PipelineResult evaluate_pipeline(const Dataset& train, const Dataset& test,
                                 const HypernymGraph& graph, const LabelSet& labels,
                                 const SynonymLexicon& lexicon,
                                 const Embeddings& embeddings,
                                 const PipelineOptions& options) {
  if (test.empty()) throw Error(Errc::DegenerateData, "test set is empty");

  const auto train_terms = train.terms();
  const auto train_golds = train.golds();
  const Eigen::MatrixXd train_features = vectorize_all<double>(train_terms, embeddings);
  const auto forest =
      train_forest(train_features, train_golds, options.forest, labels.labels());

  const auto test_terms = test.terms();
  const auto golds = test.golds();
  const Eigen::MatrixXd test_features = vectorize_all<double>(test_terms, embeddings);
  const OntologyClassifier classifier(graph, labels, lexicon, options.classifier);

  PipelineResult result;
  std::vector<std::vector<std::string>> forest_lists, ontology_lists, merged_lists;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    InstanceOutcome outcome;
    outcome.term = test_terms[i];
    outcome.gold = golds[i];
    outcome.forest = rank_labels(forest, test_features.row(row).transpose(), test_terms[i]);
    const auto trace = classifier.explain(test_terms[i]);
    outcome.ontology_label = trace.final_label;
    outcome.ontology_defaulted = trace.defaulted;
    outcome.merged =
        merge(outcome.forest, trace.final_label, trace.defaulted, options.merge);
    ++result.ontology_rank_histogram[outcome.merged.pre_merge_rank];

    forest_lists.push_back(outcome.forest.ranked_labels);
    ontology_lists.push_back({outcome.ontology_label});
    merged_lists.push_back(outcome.merged.ranked_labels);
    result.instances.push_back(std::move(outcome));
  }
  result.forest = make_report("random_forest", forest_lists, golds);
  result.ontology = make_report("ontology", ontology_lists, golds, false);
  result.merged = make_report("merged", merged_lists, golds);

  if (options.baselines) {
    const auto centroid = centroid_train(train_features, train_golds);
    const auto logistic =
        logistic_train(train_features, train_golds, options.logistic, labels.labels());
    std::vector<std::vector<std::string>> centroid_lists, logistic_lists;
    for (Eigen::Index i = 0; i < test_features.rows(); ++i) {
      const Eigen::VectorXd x = test_features.row(i).transpose();
      centroid_lists.push_back(complete(
          centroid_rank(centroid, x, options.centroid_metric).ranked_labels, labels));
      logistic_lists.push_back(logistic_rank(logistic, x).ranked_labels);
    }
    auto centroid_report = make_report(
        std::string("baseline_centroid_") + std::string(to_string(options.centroid_metric)),
        centroid_lists, golds);
    centroid_report.approximate = true;
    auto logistic_report = make_report("baseline_logistic", logistic_lists, golds);
    logistic_report.approximate = true;
    result.baselines.push_back(std::move(centroid_report));
    result.baselines.push_back(std::move(logistic_report));
  }
  return result;
}

}  // namespace ontorank
