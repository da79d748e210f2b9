// ontorank: command-line entry point.
//
//   ontorank ingest   --ontology edges.tsv --patches patches.txt
//   ontorank train    --dataset train.csv --embeddings vectors.txt --model model.json
//   ontorank classify --ontology ... --model model.json "Agency Bonds"
//   ontorank explain  --ontology ... "Option on Future"
//   ontorank evaluate --dataset train.csv --split 0.9 --seed 7 --report report.json
//
// Exit codes: 0 success, 1 user or input error, 2 internal error.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ontorank/baselines.hpp"
#include "ontorank/embeddings.hpp"
#include "ontorank/errors.hpp"
#include "ontorank/eval.hpp"
#include "ontorank/forest.hpp"
#include "ontorank/io.hpp"
#include "ontorank/json_io.hpp"
#include "ontorank/lexicon.hpp"
#include "ontorank/ontology_classifier.hpp"
#include "ontorank/ontology_graph.hpp"
#include "ontorank/ranking.hpp"

namespace {

using namespace ontorank;
using nlohmann::json;

struct RunConfig {
  std::string ontology;
  std::string patches_file;
  std::vector<std::string> patches;
  std::string synonyms;
  std::string embeddings;
  std::string dataset;
  std::string test_dataset;
  std::string model;
  std::vector<std::string> labels = LabelSet::financial().labels();
  std::string default_label = LabelSet::financial().default_label();

  double split = 0.9;
  std::uint64_t seed = 42;
  bool stratify = false;
  MergeMode merge = MergeMode::Always;
  SynonymStage synonym_stage = SynonymStage::SecondPass;
  WordOrder word_order = WordOrder::Reverse;
  std::size_t generalization_depth = kDefaultMaxDepth;
  bool ontology_only = false;

  std::size_t trees = 100;
  std::size_t tree_depth = 0;  // 0 = unbounded
  std::size_t min_samples_split = 2;
  bool no_bootstrap = false;
  std::size_t threads = 1;

  DistanceMetric metric = DistanceMetric::Cosine;
  LogisticConfig logistic;

  std::string input;
  std::vector<std::string> terms;
  std::string output;
  std::string report;
  std::string histogram;
  std::string predictions;

  LabelSet label_set() const { return LabelSet(labels, default_label); }

  ForestConfig forest() const {
    ForestConfig config;
    config.n_trees = trees;
    if (tree_depth > 0) config.max_depth = tree_depth;
    config.min_samples_split = min_samples_split;
    config.bootstrap = !no_bootstrap;
    config.seed = seed;
    config.n_threads = threads;
    return config;
  }

  ClassifierOptions classifier() const {
    return {synonym_stage, word_order, generalization_depth};
  }
};

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw Error(Errc::InvalidArgument, flag + " is required");
}

std::vector<Patch> gather_patches(const RunConfig& config) {
  std::vector<Patch> patches;
  if (!config.patches_file.empty()) patches = load_patches(config.patches_file);
  for (const auto& spec : config.patches) patches.push_back(parse_patch(spec));
  return patches;
}

HypernymGraph load_graph(const RunConfig& config) {
  require(config.ontology, "--ontology");
  const auto patches = gather_patches(config);
  return load_edges(config.ontology, patches);
}

SynonymLexicon load_lexicon(const RunConfig& config) {
  if (config.synonyms.empty()) return {};
  return load_synonyms(config.synonyms);
}

Embeddings load_vectors(const RunConfig& config) {
  require(config.embeddings, "--embeddings");
  return load_embeddings<double>(config.embeddings);
}

std::vector<std::string> gather_terms(const RunConfig& config) {
  std::vector<std::string> terms = config.terms;
  if (!config.input.empty()) {
    auto in = open_input(config.input);
    for_each_line(in, [&](std::size_t, std::string_view line) {
      if (!trim(line).empty()) terms.emplace_back(trim(line));
    });
  }
  return terms;
}

// Writes to --output atomically, or to stdout when no path is given.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_atomically(path, text);
  }
}

int cmd_ingest(const RunConfig& config) {
  const auto patches = gather_patches(config);
  require(config.ontology, "--ontology");
  const auto before = load_edges(config.ontology);
  auto graph = before;
  std::size_t applied = 0;
  for (const auto& patch : patches) {
    if (graph.apply(patch)) ++applied;
  }
  std::size_t roots = 0;
  for (std::uint32_t i = 0; i < graph.size(); ++i) {
    if (graph.parents(NodeId{i}).empty()) ++roots;
  }
  std::cout << "nodes: " << graph.size() << "\n"
            << "edges: " << graph.edge_count() << "\n"
            << "roots: " << roots << "\n"
            << "patches applied: " << applied << "\n";
  for (const auto& patch : patches) {
    std::cout << "  " << patch.child << " => " << patch.parent << "\n";
  }
  const auto labels = config.label_set();
  for (const auto& label : labels.labels()) {
    if (!graph.find(label)) {
      std::cout << "label without node: " << label << "\n";
    }
  }
  if (has_cycle(graph)) {
    std::cerr << "warning: graph contains a cycle; generalization will still "
                 "terminate\n";
    std::cout << "cycles: yes\n";
  } else {
    std::cout << "cycles: no\n";
  }
  return 0;
}

void print_label_counts(const Dataset& dataset, const LabelSet& labels) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : dataset.records) ++counts[r.gold];
  std::cout << std::left << std::setw(16) << "Label" << "Train\n";
  for (const auto& label : labels.labels()) {
    std::cout << std::setw(16) << label << counts[label] << "\n";
  }
  std::cout << std::setw(16) << "Together" << dataset.size() << "\n";
}

int cmd_train(const RunConfig& config) {
  require(config.dataset, "--dataset");
  require(config.model, "--model");
  const auto labels = config.label_set();
  const auto dataset = load_dataset(config.dataset, labels);
  const auto vectors = load_vectors(config);
  const auto terms = dataset.terms();
  const auto golds = dataset.golds();
  const Eigen::MatrixXd features = vectorize_all<double>(terms, vectors);
  const auto model = train_forest(features, golds, config.forest(), labels.labels());
  save_model(model, config.model);
  print_label_counts(dataset, labels);
  std::cout << "trained " << model.trees.size() << " trees on " << dataset.size()
            << " concepts (dim " << model.dim << ", seed " << model.config.seed
            << ") -> " << config.model << "\n";
  return 0;
}

int cmd_classify(const RunConfig& config) {
  const auto labels = config.label_set();
  const auto graph = load_graph(config);
  const auto lexicon = load_lexicon(config);
  const OntologyClassifier classifier(graph, labels, lexicon, config.classifier());

  std::optional<ForestModel> model;
  std::optional<Embeddings> vectors;
  if (!config.ontology_only) {
    require(config.model, "--model (or --ontology-only)");
    model = load_model(config.model);
    vectors = load_vectors(config);
    if (vectors->dim() != model->dim) {
      throw Error(Errc::DimensionMismatch, "embeddings have dimension " +
                                               std::to_string(vectors->dim()) +
                                               " but the model expects " +
                                               std::to_string(model->dim));
    }
  }

  std::string out;
  for (const auto& term : gather_terms(config)) {
    const auto trace = classifier.explain(term);
    json line;
    if (config.ontology_only) {
      line = {{"term", term},
              {"ontology_label", trace.final_label},
              {"defaulted", trace.defaulted}};
    } else {
      const auto x = vectorize(term, *vectors).values;
      const auto ranked = rank_labels(*model, x, term);
      line = to_json(merge(ranked, trace.final_label, trace.defaulted, config.merge));
    }
    out += line.dump() + "\n";
  }
  emit(config.output, out);
  return 0;
}

int cmd_explain(const RunConfig& config) {
  const auto labels = config.label_set();
  const auto graph = load_graph(config);
  const auto lexicon = load_lexicon(config);
  const OntologyClassifier classifier(graph, labels, lexicon, config.classifier());
  std::string out;
  for (const auto& term : gather_terms(config)) {
    out += to_json(classifier.explain(term), graph).dump() + "\n";
  }
  emit(config.output, out);
  return 0;
}

std::string format_rank(const std::optional<double>& rank) {
  if (!rank) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << *rank;
  return s.str();
}

void print_report_table(const PipelineResult& result) {
  std::vector<const EvalReport*> rows{&result.forest, &result.ontology, &result.merged};
  for (const auto& b : result.baselines) rows.push_back(&b);
  std::cout << std::left << std::setw(28) << "Method" << std::setw(10) << "Accuracy"
            << "Average label rank\n";
  for (const auto* r : rows) {
    std::ostringstream acc;
    acc << std::fixed << std::setprecision(3) << r->accuracy;
    std::cout << std::setw(28) << (r->method + (r->approximate ? " (approx.)" : ""))
              << std::setw(10) << acc.str() << format_rank(r->average_label_rank) << "\n";
  }
  std::cout << "\nOntology label rank in forest list (rank,count):\n"
            << histogram_csv(result.ontology_rank_histogram);
}

int cmd_evaluate(const RunConfig& config) {
  require(config.dataset, "--dataset");
  const auto labels = config.label_set();
  const auto graph = load_graph(config);
  const auto lexicon = load_lexicon(config);
  const auto vectors = load_vectors(config);
  const auto dataset = load_dataset(config.dataset, labels);

  Dataset train, test;
  if (!config.test_dataset.empty()) {
    train = dataset;
    test = load_dataset(config.test_dataset, labels);
  } else {
    std::tie(train, test) = split(dataset, config.split, config.seed, config.stratify);
  }

  PipelineOptions options;
  options.forest = config.forest();
  options.classifier = config.classifier();
  options.merge = config.merge;
  options.centroid_metric = config.metric;
  options.logistic = config.logistic;
  options.logistic.seed = config.seed;
  const auto result = evaluate_pipeline(train, test, graph, labels, lexicon, vectors, options);

  json report = to_json(result);
  report["train_size"] = train.size();
  report["test_size"] = test.size();
  report["config"] = {
      {"split", config.test_dataset.empty() ? json(config.split) : json(nullptr)},
      {"seed", config.seed},
      {"stratify", config.stratify},
      {"merge", to_string(config.merge)},
      {"synonym_stage", to_string(config.synonym_stage)},
      {"word_order", to_string(config.word_order)},
      {"generalization_depth", config.generalization_depth},
      {"trees", config.trees},
      {"tree_depth", config.tree_depth > 0 ? json(config.tree_depth) : json(nullptr)},
      {"min_samples_split", config.min_samples_split},
      {"bootstrap", !config.no_bootstrap},
      {"metric", to_string(config.metric)},
  };

  std::cout << "train " << train.size() << ", test " << test.size() << "\n\n";
  print_report_table(result);

  if (!config.report.empty()) write_atomically(config.report, report.dump(2) + "\n");
  if (!config.histogram.empty()) {
    write_atomically(config.histogram, histogram_csv(result.ontology_rank_histogram));
  }
  if (!config.predictions.empty()) {
    std::string lines;
    for (const auto& instance : result.instances) {
      lines += json{{"term", instance.term},
                    {"predicted_labels", instance.merged.ranked_labels}}
                   .dump() +
               "\n";
    }
    write_atomically(config.predictions, lines);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  std::string merge_mode = "always";
  std::string synonym_stage = "second-pass";
  std::string word_order = "reverse";
  std::string metric = "cosine";
  CLI::App app{"Ontology-backed concept classification with forest label ranking"};
  app.set_config("--config", "", "INI/TOML file of option=value pairs; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--ontology", config.ontology, "Edge file, child<TAB>parent per line");
  app.add_option("--patches", config.patches_file, "File of child=>parent patches");
  app.add_option("--patch", config.patches, "Inline child=>parent patch (repeatable)");
  app.add_option("--synonyms", config.synonyms, "Synonym lexicon, word<TAB>syn1,syn2");
  app.add_option("--embeddings", config.embeddings, "word2vec text-format vectors");
  app.add_option("--dataset", config.dataset, "CSV with header term,label");
  app.add_option("--test-dataset", config.test_dataset,
                 "Evaluate on this CSV instead of a split of --dataset");
  app.add_option("--model", config.model, "Forest model JSON");
  app.add_option("--labels", config.labels, "Comma-separated target labels")
      ->delimiter(',');
  app.add_option("--default-label", config.default_label, "Label for unmapped concepts");
  app.add_option("--split", config.split, "Train fraction for evaluate")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", config.seed, "Seed for splitting and the forest");
  app.add_flag("--stratify", config.stratify, "Split each label separately");
  app.add_option("--merge", merge_mode, "always|skip-defaulted")
      ->check(CLI::IsMember({"always", "skip-defaulted"}));
  app.add_option("--synonym-stage", synonym_stage, "second-pass|per-word")
      ->check(CLI::IsMember({"second-pass", "per-word"}));
  app.add_option("--word-order", word_order, "reverse|forward")
      ->check(CLI::IsMember({"reverse", "forward"}));
  app.add_option("--generalization-depth", config.generalization_depth,
                 "Maximum ancestor levels searched")
      ->check(CLI::PositiveNumber);
  app.add_flag("--ontology-only", config.ontology_only, "classify without the forest");
  app.add_option("--trees", config.trees, "Number of trees")->check(CLI::PositiveNumber);
  app.add_option("--tree-depth", config.tree_depth, "Maximum tree depth (0 = unbounded)");
  app.add_option("--min-samples-split", config.min_samples_split)
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-bootstrap", config.no_bootstrap, "Grow trees on the full sample");
  app.add_option("--threads", config.threads, "Tree-growing threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--metric", metric, "Centroid baseline metric: cosine|euclidean")
      ->check(CLI::IsMember({"cosine", "euclidean"}));
  app.add_option("--lr-epochs", config.logistic.epochs, "Logistic baseline epochs");
  app.add_option("--lr-rate", config.logistic.learning_rate, "Logistic baseline step size");
  app.add_option("--lr-l2", config.logistic.l2, "Logistic baseline L2 penalty");
  app.add_option("--input", config.input, "File with one term per line");
  app.add_option("--output", config.output, "Write JSON lines here instead of stdout");
  app.add_option("--report", config.report, "Evaluation report JSON path");
  app.add_option("--histogram", config.histogram, "rank,count CSV path");
  app.add_option("--predictions", config.predictions, "Merged predictions JSONL path");

  auto* ingest = app.add_subcommand("ingest", "Load the ontology and summarize it");
  auto* train = app.add_subcommand("train", "Train and save the forest ranker");
  auto* classify = app.add_subcommand("classify", "Classify terms (JSON lines)");
  classify->add_option("terms", config.terms, "Terms to classify");
  auto* explain = app.add_subcommand("explain", "Show the mapping trace of terms");
  explain->add_option("terms", config.terms, "Terms to explain");
  auto* evaluate = app.add_subcommand("evaluate", "Score forest, ontology and merge");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    config.merge = merge_mode == "always" ? MergeMode::Always : MergeMode::SkipDefaulted;
    config.synonym_stage =
        synonym_stage == "per-word" ? SynonymStage::PerWord : SynonymStage::SecondPass;
    config.word_order = word_order == "forward" ? WordOrder::Forward : WordOrder::Reverse;
    config.metric = metric == "euclidean" ? DistanceMetric::Euclidean : DistanceMetric::Cosine;
    (void)config.label_set();
    if (!(config.split > 0.0 && config.split < 1.0)) {
      throw Error(Errc::InvalidArgument, "--split must lie strictly between 0 and 1");
    }
    if (ingest->parsed()) return cmd_ingest(config);
    if (train->parsed()) return cmd_train(config);
    if (classify->parsed()) return cmd_classify(config);
    if (explain->parsed()) return cmd_explain(config);
    if (evaluate->parsed()) return cmd_evaluate(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
