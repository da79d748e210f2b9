#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ontorank {

/// Failure categories raised by loaders, models and metrics. Anything that is
/// not an `Error` escaping the library is an internal invariant violation.
enum class Errc {
  FileNotFound,
  MalformedLine,
  DuplicateNormalizedName,
  UnknownNode,
  UnknownLabel,
  InvalidLabelSet,
  MalformedHeader,
  DimensionMismatch,
  NonFiniteValue,
  DegenerateData,
  SchemaVersionMismatch,
  CorruptModel,
  UnknownGoldLabel,
  MalformedRow,
  LengthMismatch,
  GoldMissingFromRanking,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  Errc code() const noexcept { return code_; }
  /// 1-based line number for parse errors.
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace ontorank
