#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "ontorank/random.hpp"

namespace test_util {

struct Blobs {
  Eigen::MatrixXd x;
  std::vector<std::string> y;
  Eigen::MatrixXd centers;
};

/// Isotropic Gaussian clusters (unit variance) around centers drawn from
/// [-5, 5]^dim. Labels are "c0", "c1", ... assigned round-robin.
inline Blobs make_blobs(std::size_t n, std::size_t dim, std::size_t k, std::uint64_t seed) {
  ontorank::Rng rng(seed);
  Blobs b;
  b.centers.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(dim));
  for (Eigen::Index c = 0; c < b.centers.rows(); ++c) {
    for (Eigen::Index d = 0; d < b.centers.cols(); ++d) {
      b.centers(c, d) = -5.0 + 10.0 * rng.uniform();
    }
  }
  b.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<Eigen::Index>(i % k);
    for (Eigen::Index d = 0; d < b.x.cols(); ++d) {
      b.x(static_cast<Eigen::Index>(i), d) = b.centers(c, d) + rng.normal();
    }
    b.y.push_back("c" + std::to_string(c));
  }
  return b;
}

}  // namespace test_util
