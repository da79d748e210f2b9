#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontorank {

/// Canonical form used for every name comparison: lowercased (Unicode-aware),
/// whitespace collapsed and trimmed, ASCII punctuation removed except hyphens
/// inside a word.
std::string normalize(std::string_view raw);

/// Splits a normalized term on single spaces.
std::vector<std::string> tokenize(std::string_view normalized);

std::string pluralize(std::string_view word);
std::string singularize(std::string_view word);

struct WordForms {
  std::string surface;
  std::string singular;
  std::string plural;
};

/// Singular and plural variants of one normalized token. A token that
/// singularizes to something else is treated as a plural.
WordForms word_forms(std::string_view word);

class SynonymLexicon {
 public:
  /// Normalizes `word` and `synonyms`, appending new ones after any existing
  /// entries. Self-synonyms, empties and duplicates are skipped.
  void add(std::string_view word, const std::vector<std::string>& synonyms);

  /// File-order synonyms of `word`, or an empty list. Lookup normalizes.
  const std::vector<std::string>& synonyms_of(std::string_view word) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

/// Lines `word<TAB>syn1,syn2,...`; blank lines and `#` comments are skipped.
SynonymLexicon parse_synonyms(std::istream& in);
SynonymLexicon load_synonyms(const std::filesystem::path& path);

}  // namespace ontorank
