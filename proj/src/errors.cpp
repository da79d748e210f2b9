#include "ontorank/errors.hpp"

namespace ontorank {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::DuplicateNormalizedName: return "DuplicateNormalizedName";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::InvalidLabelSet: return "InvalidLabelSet";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case Errc::CorruptModel: return "CorruptModel";
    case Errc::UnknownGoldLabel: return "UnknownGoldLabel";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::GoldMissingFromRanking: return "GoldMissingFromRanking";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string format_message(Errc code, const std::string& message,
                           std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " (line " + std::to_string(*line) + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(format_message(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace ontorank
