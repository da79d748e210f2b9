#include "ontorank/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ontorank/errors.hpp"
#include "ontorank/io.hpp"
#include "ontorank/numeric.hpp"
#include "ontorank/random.hpp"

namespace ontorank {

std::size_t max_features(std::size_t dim) noexcept {
  const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(dim))));
  return std::max<std::size_t>(1, root);
}

const TreeNode& DecisionTree::leaf_for(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  std::size_t index = 0;
  while (!nodes[index].is_leaf()) {
    const auto& node = nodes[index];
    index = static_cast<std::size_t>(x[node.feature] <= node.threshold ? node.left
                                                                       : node.right);
  }
  return nodes[index];
}

namespace {

struct Split {
  Eigen::Index feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::Ref<const Eigen::MatrixXd>& features,
              std::span<const std::size_t> targets, std::size_t n_classes,
              const ForestConfig& config, std::uint64_t seed)
      : features_(features),
        targets_(targets),
        n_classes_(n_classes),
        config_(config),
        mtry_(max_features(static_cast<std::size_t>(features.cols()))),
        rng_(seed) {}

  DecisionTree build() {
    const auto n = static_cast<std::size_t>(features_.rows());
    std::vector<std::size_t> samples(n);
    if (config_.bootstrap) {
      for (auto& s : samples) s = static_cast<std::size_t>(rng_.below(n));
    } else {
      std::iota(samples.begin(), samples.end(), std::size_t{0});
    }
    DecisionTree tree;
    grow(tree, samples, 0);
    return tree;
  }

 private:
  std::vector<std::uint32_t> class_counts(std::span<const std::size_t> samples) const {
    std::vector<std::uint32_t> counts(n_classes_, 0);
    for (const auto s : samples) ++counts[targets_[s]];
    return counts;
  }

  std::int32_t grow(DecisionTree& tree, std::vector<std::size_t>& samples,
                    std::size_t depth) {
    const auto index = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();

    auto counts = class_counts(samples);
    const bool pure =
        std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    const bool depth_reached = config_.max_depth && depth >= *config_.max_depth;
    std::optional<Split> split;
    if (!pure && !depth_reached && samples.size() >= config_.min_samples_split) {
      split = best_split(samples);
    }
    if (!split) {
      tree.nodes[static_cast<std::size_t>(index)].counts = std::move(counts);
      return index;
    }

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (const auto s : samples) {
      (features_(static_cast<Eigen::Index>(s), split->feature) <= split->threshold ? left
                                                                                  : right)
          .push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();

    const auto left_index = grow(tree, left, depth + 1);
    const auto right_index = grow(tree, right, depth + 1);
    auto& node = tree.nodes[static_cast<std::size_t>(index)];
    node.feature = static_cast<std::int32_t>(split->feature);
    node.threshold = split->threshold;
    node.left = left_index;
    node.right = right_index;
    return index;
  }

  // Visits features in a fresh random order and stops after mtry features
  // that admit a split; constant features do not count toward mtry.
  std::optional<Split> best_split(std::span<const std::size_t> samples) {
    const auto dim = static_cast<std::size_t>(features_.cols());
    std::vector<Eigen::Index> order(dim);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    rng_.shuffle(std::span(order));

    std::optional<Split> best;
    std::size_t usable = 0;
    std::vector<std::pair<double, std::size_t>> column(samples.size());
    Eigen::VectorXd left(static_cast<Eigen::Index>(n_classes_));
    Eigen::VectorXd right(static_cast<Eigen::Index>(n_classes_));
    const auto n = static_cast<double>(samples.size());

    for (const auto feature : order) {
      if (usable == mtry_) break;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        column[i] = {features_(static_cast<Eigen::Index>(samples[i]), feature),
                     targets_[samples[i]]};
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;
      ++usable;

      left.setZero();
      right.setZero();
      for (const auto& [value, target] : column) right[static_cast<Eigen::Index>(target)] += 1;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        const auto target = static_cast<Eigen::Index>(column[i].second);
        left[target] += 1;
        right[target] -= 1;
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (lo == hi) continue;
        const auto n_left = static_cast<double>(i + 1);
        const double impurity =
            (n_left * gini_impurity(left) + (n - n_left) * gini_impurity(right)) / n;
        if (!best || impurity < best->impurity) {
          double threshold = (lo + hi) / 2.0;
          if (!std::isfinite(threshold)) threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = Split{feature, threshold, impurity};
        }
      }
    }
    return best;
  }

  const Eigen::Ref<const Eigen::MatrixXd>& features_;
  std::span<const std::size_t> targets_;
  std::size_t n_classes_;
  const ForestConfig& config_;
  std::size_t mtry_;
  Rng rng_;
};

}  // namespace

ForestModel train_forest(const Eigen::Ref<const Eigen::MatrixXd>& features,
                         std::span<const std::string> labels,
                         const ForestConfig& config,
                         std::span<const std::string> classes) {
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw Error(Errc::LengthMismatch,
                std::to_string(features.rows()) + " feature rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  if (labels.size() < 2) {
    throw Error(Errc::DegenerateData, "need at least 2 training examples");
  }
  if (features.cols() == 0) {
    throw Error(Errc::DegenerateData, "feature dimension is 0");
  }
  if (!all_finite(features)) {
    throw Error(Errc::NonFiniteValue, "training features contain NaN or inf");
  }
  if (config.n_trees == 0 || config.min_samples_split == 0 ||
      (config.max_depth && *config.max_depth == 0)) {
    throw Error(Errc::InvalidArgument,
                "n_trees, min_samples_split and max_depth must be positive");
  }

  ForestModel model;
  model.config = config;
  model.dim = features.cols();
  model.classes = classes.empty()
                      ? std::vector<std::string>(labels.begin(), labels.end())
                      : std::vector<std::string>(classes.begin(), classes.end());
  std::sort(model.classes.begin(), model.classes.end());
  model.classes.erase(std::unique(model.classes.begin(), model.classes.end()),
                      model.classes.end());

  std::vector<std::size_t> targets(labels.size());
  std::vector<bool> seen(model.classes.size(), false);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = std::lower_bound(model.classes.begin(), model.classes.end(), labels[i]);
    if (it == model.classes.end() || *it != labels[i]) {
      throw Error(Errc::UnknownLabel,
                  "training label '" + labels[i] + "' is not a class");
    }
    targets[i] = static_cast<std::size_t>(it - model.classes.begin());
    seen[targets[i]] = true;
  }
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    throw Error(Errc::DegenerateData, "training labels contain a single class");
  }

  model.trees.resize(config.n_trees);
  const auto grow = [&](std::size_t t) {
    TreeBuilder builder(features, targets, model.classes.size(), config,
                        stream_seed(config.seed, t));
    model.trees[t] = builder.build();
  };

  const auto workers = std::min(std::max<std::size_t>(1, config.n_threads), config.n_trees);
  if (workers == 1) {
    for (std::size_t t = 0; t < config.n_trees; ++t) grow(t);
    return model;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto t = next++; t < config.n_trees; t = next++) {
          try {
            grow(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return model;
}

Eigen::VectorXd predict_proba(const ForestModel& model,
                              const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.dim) {
    throw Error(Errc::DimensionMismatch,
                "model expects " + std::to_string(model.dim) + " features, got " +
                    std::to_string(x.size()));
  }
  const auto k = static_cast<Eigen::Index>(model.classes.size());
  Eigen::VectorXd proba = Eigen::VectorXd::Zero(k);
  for (const auto& tree : model.trees) {
    const auto& counts = tree.leaf_for(x).counts;
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    for (Eigen::Index c = 0; c < k; ++c) {
      proba[c] += counts[static_cast<std::size_t>(c)] / total;
    }
  }
  proba /= static_cast<double>(model.trees.size());
  return proba;
}

RankedPrediction rank_labels(const ForestModel& model,
                             const Eigen::Ref<const Eigen::VectorXd>& x,
                             std::string term) {
  const Eigen::VectorXd proba = predict_proba(model, x);
  return rank_by_score(model.classes,
                       std::span<const double>(proba.data(), static_cast<std::size_t>(proba.size())),
                       std::move(term));
}

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "ontorank-forest";

[[noreturn]] void corrupt(const std::string& why) {
  throw Error(Errc::CorruptModel, why);
}

void validate_tree(const DecisionTree& tree, std::size_t n_classes, Eigen::Index dim) {
  const auto n = tree.nodes.size();
  if (n == 0) corrupt("empty tree");
  std::vector<int> references(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = tree.nodes[i];
    if (node.is_leaf()) {
      if (node.counts.size() != n_classes) corrupt("leaf count vector has wrong length");
      if (std::accumulate(node.counts.begin(), node.counts.end(), std::uint64_t{0}) == 0) {
        corrupt("leaf has no samples");
      }
      continue;
    }
    if (node.feature >= dim) corrupt("split feature out of range");
    if (!std::isfinite(node.threshold)) corrupt("non-finite threshold");
    for (const auto child : {node.left, node.right}) {
      if (child <= static_cast<std::int32_t>(i) || static_cast<std::size_t>(child) >= n) {
        corrupt("child index out of range");
      }
      ++references[static_cast<std::size_t>(child)];
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (references[i] != 1) corrupt("unreachable or shared node");
  }
}

}  // namespace

std::string serialize_model(const ForestModel& model) {
  json config = {
      {"n_trees", model.config.n_trees},
      {"max_depth", model.config.max_depth ? json(*model.config.max_depth) : json(nullptr)},
      {"min_samples_split", model.config.min_samples_split},
      {"bootstrap", model.config.bootstrap},
      {"seed", model.config.seed},
      {"max_features", "sqrt"},
  };
  json trees = json::array();
  for (const auto& tree : model.trees) {
    json feature = json::array(), threshold = json::array(), left = json::array(),
         right = json::array(), counts = json::array();
    for (const auto& node : tree.nodes) {
      feature.push_back(node.feature);
      threshold.push_back(node.threshold);
      left.push_back(node.left);
      right.push_back(node.right);
      counts.push_back(node.counts);
    }
    trees.push_back({{"feature", std::move(feature)},
                     {"threshold", std::move(threshold)},
                     {"left", std::move(left)},
                     {"right", std::move(right)},
                     {"counts", std::move(counts)}});
  }
  const json doc = {{"format", kFormat},
                    {"version", kForestSchemaVersion},
                    {"config", std::move(config)},
                    {"classes", model.classes},
                    {"dim", model.dim},
                    {"trees", std::move(trees)}};
  return doc.dump() + "\n";
}

ForestModel deserialize_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    corrupt(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc["version"].is_number_integer()) {
    corrupt("missing schema version");
  }
  if (doc["version"].get<int>() != kForestSchemaVersion) {
    throw Error(Errc::SchemaVersionMismatch,
                "model schema version " + doc["version"].dump() + ", expected " +
                    std::to_string(kForestSchemaVersion));
  }
  if (doc.value("format", "") != kFormat) corrupt("not a forest model");

  ForestModel model;
  try {
    const auto& config = doc.at("config");
    model.config.n_trees = config.at("n_trees").get<std::size_t>();
    if (!config.at("max_depth").is_null()) {
      model.config.max_depth = config.at("max_depth").get<std::size_t>();
    }
    model.config.min_samples_split = config.at("min_samples_split").get<std::size_t>();
    model.config.bootstrap = config.at("bootstrap").get<bool>();
    model.config.seed = config.at("seed").get<std::uint64_t>();
    model.classes = doc.at("classes").get<std::vector<std::string>>();
    model.dim = doc.at("dim").get<Eigen::Index>();
    for (const auto& t : doc.at("trees")) {
      const auto feature = t.at("feature").get<std::vector<std::int32_t>>();
      const auto threshold = t.at("threshold").get<std::vector<double>>();
      const auto left = t.at("left").get<std::vector<std::int32_t>>();
      const auto right = t.at("right").get<std::vector<std::int32_t>>();
      auto counts = t.at("counts").get<std::vector<std::vector<std::uint32_t>>>();
      const auto n = feature.size();
      if (threshold.size() != n || left.size() != n || right.size() != n ||
          counts.size() != n) {
        corrupt("tree arrays differ in length");
      }
      DecisionTree tree;
      tree.nodes.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        tree.nodes[i] = {feature[i], threshold[i], left[i], right[i], std::move(counts[i])};
      }
      model.trees.push_back(std::move(tree));
    }
  } catch (const json::exception& e) {
    corrupt(std::string("bad model field: ") + e.what());
  }

  if (model.dim <= 0) corrupt("non-positive dimension");
  if (model.classes.size() < 2 || !std::is_sorted(model.classes.begin(), model.classes.end())) {
    corrupt("class list must be sorted with at least 2 entries");
  }
  if (model.trees.empty() || model.trees.size() != model.config.n_trees) {
    corrupt("tree count does not match configuration");
  }
  for (const auto& tree : model.trees) validate_tree(tree, model.classes.size(), model.dim);
  return model;
}

void save_model(const ForestModel& model, const std::filesystem::path& path) {
  write_atomically(path, serialize_model(model));
}

ForestModel load_model(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_model(buffer.str());
}

}  // namespace ontorank
