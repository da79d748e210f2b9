#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ontorank/ranking.hpp"

namespace ontorank {

struct ForestConfig {
  std::size_t n_trees = 100;
  /// Unbounded when empty.
  std::optional<std::size_t> max_depth;
  std::size_t min_samples_split = 2;
  bool bootstrap = true;
  std::uint64_t seed = 0;
  /// Worker threads for tree growth. Does not affect the trained model and is
  /// not persisted.
  std::size_t n_threads = 1;
};

/// Features examined per split: floor(sqrt(dim)), at least 1.
std::size_t max_features(std::size_t dim) noexcept;

struct TreeNode {
  /// -1 for leaves.
  std::int32_t feature = -1;
  /// Samples with x[feature] <= threshold go left.
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  /// Per-class training counts; leaves only.
  std::vector<std::uint32_t> counts;

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Nodes in pre-order; index 0 is the root and children follow their parent.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  const TreeNode& leaf_for(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct ForestModel {
  ForestConfig config;
  /// Sorted class labels; probability vectors are aligned with this list.
  std::vector<std::string> classes;
  Eigen::Index dim = 0;
  std::vector<DecisionTree> trees;
};

/// Grows `config.n_trees` CART trees with Gini splits. Tree t draws all of
/// its randomness (bootstrap sample, feature order at every node) from its
/// own stream seeded by (config.seed, t), so results do not depend on
/// n_threads. `classes` fixes the class list; by default it is the sorted set
/// of training labels.
ForestModel train_forest(const Eigen::Ref<const Eigen::MatrixXd>& features,
                         std::span<const std::string> labels,
                         const ForestConfig& config,
                         std::span<const std::string> classes = {});

/// Mean over trees of the normalized leaf class counts.
Eigen::VectorXd predict_proba(const ForestModel& model,
                              const Eigen::Ref<const Eigen::VectorXd>& x);

RankedPrediction rank_labels(const ForestModel& model,
                             const Eigen::Ref<const Eigen::VectorXd>& x,
                             std::string term = {});

inline constexpr int kForestSchemaVersion = 1;

std::string serialize_model(const ForestModel& model);
ForestModel deserialize_model(std::string_view text);
void save_model(const ForestModel& model, const std::filesystem::path& path);
ForestModel load_model(const std::filesystem::path& path);

}  // namespace ontorank
