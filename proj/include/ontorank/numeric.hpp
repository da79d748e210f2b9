#pragma once

#include <cmath>

#include <Eigen/Core>

namespace ontorank {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Cosine similarity; 0 when either side is the zero vector.
template <typename A, typename B>
typename A::Scalar cosine_similarity(const Eigen::MatrixBase<A>& a,
                                     const Eigen::MatrixBase<B>& b) {
  using Scalar = typename A::Scalar;
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) return Scalar(0);
  return a.dot(b) / (na * nb);
}

/// Numerically stable softmax of a logit vector.
template <typename Derived>
Vector<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  const Scalar shift = logits.maxCoeff();
  Vector<Scalar> out = (logits.array() - shift).exp().matrix();
  out /= out.sum();
  return out;
}

/// Gini impurity 1 - sum p_k^2 of a class-count vector (0 for empty counts).
template <typename Derived>
typename Derived::Scalar gini_impurity(const Eigen::DenseBase<Derived>& counts) {
  using Scalar = typename Derived::Scalar;
  const Scalar total = counts.sum();
  if (total <= Scalar(0)) return Scalar(0);
  return Scalar(1) - (counts.derived().array() / total).square().sum();
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& values) {
  return values.derived().array().isFinite().all();
}

}  // namespace ontorank
