#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ontorank/ranking.hpp"

namespace ontorank {

// Reconstructions of the two reference baselines (a distance classifier and
// multinomial logistic regression). Their original settings are unknown, so
// reports mark them approximate.

enum class DistanceMetric { Cosine, Euclidean };

std::string_view to_string(DistanceMetric metric) noexcept;

struct CentroidModel {
  /// Sorted labels seen in training; row i of `centroids` belongs to classes[i].
  std::vector<std::string> classes;
  Eigen::MatrixXd centroids;

  Eigen::Index dim() const noexcept { return centroids.cols(); }
};

CentroidModel centroid_train(const Eigen::Ref<const Eigen::MatrixXd>& features,
                             std::span<const std::string> labels);

/// Cosine: descending similarity, zero vectors score 0. Euclidean: ascending
/// distance. Ties resolve in label order.
RankedPrediction centroid_rank(const CentroidModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x,
                               DistanceMetric metric = DistanceMetric::Cosine,
                               std::string term = {});

struct LogisticConfig {
  std::size_t epochs = 500;
  double learning_rate = 0.5;
  double l2 = 1e-3;
  /// Weights start at zero, so the seed never changes the fit; it is kept
  /// for the record.
  std::uint64_t seed = 0;
};

struct LogisticModel {
  std::vector<std::string> classes;
  /// |classes| x (dim + 1); the last column is the bias.
  Eigen::MatrixXd weights;
  LogisticConfig config;

  Eigen::Index dim() const noexcept { return weights.cols() - 1; }
};

/// Mean cross-entropy plus (l2 / 2) * ||W||^2 over the non-bias columns.
double logistic_loss(const Eigen::Ref<const Eigen::MatrixXd>& weights,
                     const Eigen::Ref<const Eigen::MatrixXd>& features,
                     std::span<const std::size_t> targets, double l2);

/// Analytic gradient of logistic_loss with respect to `weights`.
Eigen::MatrixXd logistic_gradient(const Eigen::Ref<const Eigen::MatrixXd>& weights,
                                  const Eigen::Ref<const Eigen::MatrixXd>& features,
                                  std::span<const std::size_t> targets, double l2);

/// Full-batch gradient descent from zero weights. `classes` defaults to the
/// sorted training labels.
LogisticModel logistic_train(const Eigen::Ref<const Eigen::MatrixXd>& features,
                             std::span<const std::string> labels,
                             const LogisticConfig& config,
                             std::span<const std::string> classes = {});

Eigen::VectorXd logistic_proba(const LogisticModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x);

RankedPrediction logistic_rank(const LogisticModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x,
                               std::string term = {});

std::string serialize_centroid(const CentroidModel& model);
CentroidModel deserialize_centroid(std::string_view text);
std::string serialize_logistic(const LogisticModel& model);
LogisticModel deserialize_logistic(std::string_view text);

}  // namespace ontorank
