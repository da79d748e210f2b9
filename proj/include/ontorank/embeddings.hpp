#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "ontorank/errors.hpp"
#include "ontorank/io.hpp"
#include "ontorank/lexicon.hpp"
#include "ontorank/numeric.hpp"

namespace ontorank {

/// Normalized word -> dense vector of fixed dimensionality.
template <typename Scalar>
class EmbeddingTable {
 public:
  using VectorType = Vector<Scalar>;

  explicit EmbeddingTable(Eigen::Index dim) : dim_(dim) {
    if (dim <= 0) throw Error(Errc::MalformedHeader, "dimension must be positive");
  }

  Eigen::Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  /// Stores `values` under normalize(word). Returns false when an existing
  /// entry was replaced.
  bool insert(std::string_view word, VectorType values) {
    if (values.size() != dim_) {
      throw Error(Errc::DimensionMismatch,
                  "expected " + std::to_string(dim_) + " components, got " +
                      std::to_string(values.size()));
    }
    if (!all_finite(values)) {
      throw Error(Errc::NonFiniteValue, "vector for '" + std::string(word) + "'");
    }
    auto [it, inserted] = vectors_.insert_or_assign(normalize(word), std::move(values));
    return inserted;
  }

  /// Looks up an already-normalized word.
  const VectorType* find(std::string_view word) const {
    const auto it = vectors_.find(std::string(word));
    return it == vectors_.end() ? nullptr : &it->second;
  }

 private:
  Eigen::Index dim_;
  std::unordered_map<std::string, VectorType> vectors_;
};

template <typename Scalar>
struct ConceptVector {
  Vector<Scalar> values;
  /// Fraction of the term's tokens found in the vocabulary.
  double coverage = 0.0;
};

/// Mean of the in-vocabulary token vectors of normalize(term); the zero
/// vector with coverage 0 when no token is known.
template <typename Scalar>
ConceptVector<Scalar> vectorize(std::string_view term,
                                const EmbeddingTable<Scalar>& table) {
  ConceptVector<Scalar> out{Vector<Scalar>::Zero(table.dim()), 0.0};
  const auto tokens = tokenize(normalize(term));
  std::size_t found = 0;
  for (const auto& token : tokens) {
    if (const auto* v = table.find(token)) {
      out.values += *v;
      ++found;
    }
  }
  if (found > 0) {
    out.values /= static_cast<Scalar>(found);
    out.coverage = static_cast<double>(found) / static_cast<double>(tokens.size());
  }
  return out;
}

/// Row i is vectorize(terms[i]).values.
template <typename Scalar>
Matrix<Scalar> vectorize_all(std::span<const std::string> terms,
                             const EmbeddingTable<Scalar>& table) {
  Matrix<Scalar> features(static_cast<Eigen::Index>(terms.size()), table.dim());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    features.row(static_cast<Eigen::Index>(i)) =
        vectorize(terms[i], table).values.transpose();
  }
  return features;
}

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    auto end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace detail

/// word2vec text format: a `<count> <dim>` header, then `word v1 ... v_dim`
/// per line. A count mismatch and duplicate words (last one wins) only warn.
template <typename Scalar>
EmbeddingTable<Scalar> parse_embeddings(std::istream& in,
                                        const WarningSink& warn = warn_to_stderr) {
  std::optional<EmbeddingTable<Scalar>> table;
  long long declared = 0;
  std::size_t rows = 0;
  for_each_line(in, [&](std::size_t number, std::string_view line) {
    const auto fields = detail::split_spaces(line);
    if (!table) {
      long long dim = 0;
      if (fields.size() != 2 || !detail::parse_number(fields[0], declared) ||
          !detail::parse_number(fields[1], dim) || declared < 0 || dim <= 0) {
        throw Error(Errc::MalformedHeader, "expected '<count> <dim>'", number);
      }
      table.emplace(static_cast<Eigen::Index>(dim));
      return;
    }
    if (fields.empty()) return;
    const auto dim = table->dim();
    if (static_cast<Eigen::Index>(fields.size()) - 1 != dim) {
      throw Error(Errc::DimensionMismatch,
                  "expected " + std::to_string(dim) + " values, got " +
                      std::to_string(fields.size() - 1),
                  number);
    }
    Vector<Scalar> values(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      Scalar v{};
      if (!detail::parse_number(fields[static_cast<std::size_t>(k) + 1], v) ||
          !std::isfinite(v)) {
        throw Error(Errc::NonFiniteValue,
                    "bad value '" +
                        std::string(fields[static_cast<std::size_t>(k) + 1]) + "'",
                    number);
      }
      values[k] = v;
    }
    ++rows;
    if (normalize(fields[0]).empty()) {
      warn("line " + std::to_string(number) + ": word '" + std::string(fields[0]) +
           "' normalizes to nothing; skipped");
      return;
    }
    if (!table->insert(fields[0], std::move(values))) {
      warn("line " + std::to_string(number) + ": duplicate word '" +
           std::string(fields[0]) + "', keeping the later vector");
    }
  });
  if (!table) throw Error(Errc::MalformedHeader, "missing header", 1);
  if (static_cast<long long>(rows) != declared) {
    warn("header declares " + std::to_string(declared) + " vectors, found " +
         std::to_string(rows));
  }
  return std::move(*table);
}

template <typename Scalar>
EmbeddingTable<Scalar> load_embeddings(const std::filesystem::path& path,
                                       const WarningSink& warn = warn_to_stderr) {
  auto in = open_input(path);
  return parse_embeddings<Scalar>(in, warn);
}

using Embeddings = EmbeddingTable<double>;

}  // namespace ontorank
