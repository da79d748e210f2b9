#include "ontorank/baselines.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ontorank/errors.hpp"
#include "ontorank/numeric.hpp"

namespace ontorank {

std::string_view to_string(DistanceMetric metric) noexcept {
  return metric == DistanceMetric::Cosine ? "cosine" : "euclidean";
}

namespace {

void check_training_input(const Eigen::Ref<const Eigen::MatrixXd>& features,
                          std::span<const std::string> labels) {
  if (labels.empty()) throw Error(Errc::DegenerateData, "no training examples");
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(features.rows()) +
                                          " feature rows but " +
                                          std::to_string(labels.size()) + " labels");
  }
  if (!all_finite(features)) {
    throw Error(Errc::NonFiniteValue, "training features contain NaN or inf");
  }
}

std::vector<std::string> sorted_unique(std::span<const std::string> items) {
  std::vector<std::string> out(items.begin(), items.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t index_of(const std::vector<std::string>& sorted, const std::string& label) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), label);
  if (it == sorted.end() || *it != label) {
    throw Error(Errc::UnknownLabel, "'" + label + "' is not a class");
  }
  return static_cast<std::size_t>(it - sorted.begin());
}

void check_dim(Eigen::Index expected, Eigen::Index got) {
  if (expected != got) {
    throw Error(Errc::DimensionMismatch, "model expects " + std::to_string(expected) +
                                             " features, got " + std::to_string(got));
  }
}

RankedPrediction rank_vector(const std::vector<std::string>& classes,
                             const Eigen::VectorXd& scores, std::string term) {
  return rank_by_score(
      classes, std::span<const double>(scores.data(), static_cast<std::size_t>(scores.size())),
      std::move(term));
}

Eigen::MatrixXd with_bias(const Eigen::Ref<const Eigen::MatrixXd>& features) {
  Eigen::MatrixXd out(features.rows(), features.cols() + 1);
  out.leftCols(features.cols()) = features;
  out.col(features.cols()).setOnes();
  return out;
}

// Row-wise softmax of X~ W^T.
Eigen::MatrixXd class_probabilities(const Eigen::Ref<const Eigen::MatrixXd>& weights,
                                    const Eigen::MatrixXd& augmented) {
  Eigen::MatrixXd logits = augmented * weights.transpose();
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    logits.row(i) = softmax(logits.row(i).transpose()).transpose();
  }
  return logits;
}

using nlohmann::json;

json parse_tagged(std::string_view text, std::string_view format) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::CorruptModel, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || !doc["version"].is_number_integer()) {
    throw Error(Errc::CorruptModel, "missing schema version");
  }
  if (doc["version"].get<int>() != 1) {
    throw Error(Errc::SchemaVersionMismatch, "version " + doc["version"].dump());
  }
  if (doc.value("format", "") != format) {
    throw Error(Errc::CorruptModel, "expected format '" + std::string(format) + "'");
  }
  return doc;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows) {
  const auto data = rows.get<std::vector<std::vector<double>>>();
  const auto cols = data.empty() ? 0 : data.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].size() != cols) throw Error(Errc::CorruptModel, "ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i][j];
    }
  }
  return m;
}

}  // namespace

CentroidModel centroid_train(const Eigen::Ref<const Eigen::MatrixXd>& features,
                             std::span<const std::string> labels) {
  check_training_input(features, labels);
  CentroidModel model;
  model.classes = sorted_unique(labels);
  const auto k = static_cast<Eigen::Index>(model.classes.size());
  model.centroids = Eigen::MatrixXd::Zero(k, features.cols());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(index_of(model.classes, labels[i]));
    model.centroids.row(c) += features.row(static_cast<Eigen::Index>(i));
    counts[c] += 1.0;
  }
  model.centroids.array().colwise() /= counts.array();
  return model;
}

RankedPrediction centroid_rank(const CentroidModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x,
                               DistanceMetric metric, std::string term) {
  check_dim(model.dim(), x.size());
  Eigen::VectorXd scores(model.centroids.rows());
  for (Eigen::Index c = 0; c < scores.size(); ++c) {
    const auto centroid = model.centroids.row(c).transpose();
    scores[c] = metric == DistanceMetric::Cosine ? cosine_similarity(x, centroid)
                                                 : -(x - centroid).norm();
  }
  return rank_vector(model.classes, scores, std::move(term));
}

double logistic_loss(const Eigen::Ref<const Eigen::MatrixXd>& weights,
                     const Eigen::Ref<const Eigen::MatrixXd>& features,
                     std::span<const std::size_t> targets, double l2) {
  const Eigen::MatrixXd augmented = with_bias(features);
  const Eigen::MatrixXd logits = augmented * weights.transpose();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    const double shift = row.maxCoeff();
    const double log_norm = shift + std::log((row.array() - shift).exp().sum());
    loss += log_norm - row[static_cast<Eigen::Index>(targets[static_cast<std::size_t>(i)])];
  }
  loss /= static_cast<double>(logits.rows());
  return loss + 0.5 * l2 * weights.leftCols(weights.cols() - 1).squaredNorm();
}

Eigen::MatrixXd logistic_gradient(const Eigen::Ref<const Eigen::MatrixXd>& weights,
                                  const Eigen::Ref<const Eigen::MatrixXd>& features,
                                  std::span<const std::size_t> targets, double l2) {
  const Eigen::MatrixXd augmented = with_bias(features);
  Eigen::MatrixXd residual = class_probabilities(weights, augmented);
  for (Eigen::Index i = 0; i < residual.rows(); ++i) {
    residual(i, static_cast<Eigen::Index>(targets[static_cast<std::size_t>(i)])) -= 1.0;
  }
  Eigen::MatrixXd gradient =
      residual.transpose() * augmented / static_cast<double>(augmented.rows());
  gradient.leftCols(weights.cols() - 1) += l2 * weights.leftCols(weights.cols() - 1);
  return gradient;
}

LogisticModel logistic_train(const Eigen::Ref<const Eigen::MatrixXd>& features,
                             std::span<const std::string> labels,
                             const LogisticConfig& config,
                             std::span<const std::string> classes) {
  check_training_input(features, labels);
  LogisticModel model;
  model.config = config;
  model.classes = sorted_unique(classes.empty() ? labels : classes);
  std::vector<std::size_t> targets(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    targets[i] = index_of(model.classes, labels[i]);
  }
  if (sorted_unique(labels).size() < 2) {
    throw Error(Errc::DegenerateData, "training labels contain a single class");
  }
  model.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(model.classes.size()),
                                        features.cols() + 1);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    model.weights -=
        config.learning_rate * logistic_gradient(model.weights, features, targets, config.l2);
  }
  if (!all_finite(model.weights)) {
    throw Error(Errc::NonFiniteValue, "gradient descent diverged; lower the learning rate");
  }
  return model;
}

Eigen::VectorXd logistic_proba(const LogisticModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_dim(model.dim(), x.size());
  const Eigen::VectorXd logits =
      model.weights.leftCols(model.dim()) * x + model.weights.col(model.dim());
  return softmax(logits);
}

RankedPrediction logistic_rank(const LogisticModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x,
                               std::string term) {
  return rank_vector(model.classes, logistic_proba(model, x), std::move(term));
}

std::string serialize_centroid(const CentroidModel& model) {
  const json doc = {{"format", "ontorank-centroid"},
                    {"version", 1},
                    {"classes", model.classes},
                    {"centroids", matrix_to_json(model.centroids)}};
  return doc.dump() + "\n";
}

CentroidModel deserialize_centroid(std::string_view text) {
  const auto doc = parse_tagged(text, "ontorank-centroid");
  CentroidModel model;
  try {
    model.classes = doc.at("classes").get<std::vector<std::string>>();
    model.centroids = matrix_from_json(doc.at("centroids"));
  } catch (const json::exception& e) {
    throw Error(Errc::CorruptModel, e.what());
  }
  if (static_cast<std::size_t>(model.centroids.rows()) != model.classes.size()) {
    throw Error(Errc::CorruptModel, "one centroid per class expected");
  }
  return model;
}

std::string serialize_logistic(const LogisticModel& model) {
  const json doc = {{"format", "ontorank-logistic"},
                    {"version", 1},
                    {"config",
                     {{"epochs", model.config.epochs},
                      {"learning_rate", model.config.learning_rate},
                      {"l2", model.config.l2},
                      {"seed", model.config.seed}}},
                    {"classes", model.classes},
                    {"weights", matrix_to_json(model.weights)}};
  return doc.dump() + "\n";
}

LogisticModel deserialize_logistic(std::string_view text) {
  const auto doc = parse_tagged(text, "ontorank-logistic");
  LogisticModel model;
  try {
    const auto& config = doc.at("config");
    model.config.epochs = config.at("epochs").get<std::size_t>();
    model.config.learning_rate = config.at("learning_rate").get<double>();
    model.config.l2 = config.at("l2").get<double>();
    model.config.seed = config.at("seed").get<std::uint64_t>();
    model.classes = doc.at("classes").get<std::vector<std::string>>();
    model.weights = matrix_from_json(doc.at("weights"));
  } catch (const json::exception& e) {
    throw Error(Errc::CorruptModel, e.what());
  }
  if (static_cast<std::size_t>(model.weights.rows()) != model.classes.size() ||
      model.weights.cols() < 2 || !all_finite(model.weights)) {
    throw Error(Errc::CorruptModel, "weight matrix does not match classes");
  }
  return model;
}

}  // namespace ontorank
