#include "ontorank/lexicon.hpp"

#include <algorithm>
#include <istream>
#include <locale>

#include "ontorank/errors.hpp"
#include "ontorank/io.hpp"

namespace ontorank {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at s[i] and advances i. Malformed bytes
// decode to kInvalid; the caller substitutes U+FFFD.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    ++i;
    return kInvalid;
  }
  if (i + extra >= s.size()) {
    ++i;
    return kInvalid;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += extra + 1;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

const std::ctype<wchar_t>* unicode_ctype() {
  static const std::ctype<wchar_t>* facet = []() -> const std::ctype<wchar_t>* {
    for (const char* name : {"C.UTF-8", "en_US.UTF-8", "C.utf8"}) {
      try {
        static const std::locale loc(name);
        return &std::use_facet<std::ctype<wchar_t>>(loc);
      } catch (const std::runtime_error&) {
      }
    }
    return nullptr;
  }();
  return facet;
}

char32_t to_lower(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
  }
  if (const auto* facet = unicode_ctype()) {
    return static_cast<char32_t>(facet->tolower(static_cast<wchar_t>(cp)));
  }
  return cp;
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v';
}

bool is_ascii_punct(char32_t cp) {
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
         (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

bool is_consonant(char c) {
  return c >= 'a' && c <= 'z' && std::string_view("aeiou").find(c) ==
                                     std::string_view::npos;
}

bool ends_with_sibilant(std::string_view w) {
  return w.ends_with('s') || w.ends_with('x') || w.ends_with('z') ||
         w.ends_with("ch") || w.ends_with("sh");
}

}  // namespace

std::string normalize(std::string_view raw) {
  // Lowercase and drop punctuation (hyphens survive this pass); whitespace
  // becomes a single separator.
  std::string folded;
  folded.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    const char32_t cp = decode_utf8(raw, i);
    if (cp == kInvalid) {
      // Keeping stray bytes could let a later pass decode them differently.
      encode_utf8(0xFFFD, folded);
    } else if (is_space(cp)) {
      folded.push_back(' ');
    } else if (cp == '-' || !is_ascii_punct(cp)) {
      encode_utf8(to_lower(cp), folded);
    }
  }

  // Rejoin words, trimming hyphens that are not internal to a word.
  std::string out;
  out.reserve(folded.size());
  std::size_t pos = 0;
  while (pos < folded.size()) {
    const auto end = std::min(folded.find(' ', pos), folded.size());
    std::string_view word(folded.data() + pos, end - pos);
    const auto first = word.find_first_not_of('-');
    if (first != std::string_view::npos) {
      word = word.substr(first, word.find_last_not_of('-') - first + 1);
      if (!out.empty()) out.push_back(' ');
      out.append(word);
    }
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    const auto end = std::min(normalized.find(' ', pos), normalized.size());
    if (end > pos) tokens.emplace_back(normalized.substr(pos, end - pos));
    pos = end + 1;
  }
  return tokens;
}

std::string pluralize(std::string_view word) {
  std::string w(word);
  if (w.empty()) return w;
  if (w.size() >= 2 && w.back() == 'y' && is_consonant(w[w.size() - 2])) {
    w.pop_back();
    return w + "ies";
  }
  if (ends_with_sibilant(w)) return w + "es";
  return w + "s";
}

std::string singularize(std::string_view word) {
  std::string w(word);
  if (w.size() > 3 && w.ends_with("ies")) {
    w.resize(w.size() - 3);
    return w + "y";
  }
  if (w.size() > 2 && w.ends_with("es") &&
      ends_with_sibilant(std::string_view(w).substr(0, w.size() - 2))) {
    w.resize(w.size() - 2);
    return w;
  }
  if (w.size() > 1 && w.ends_with('s') && !w.ends_with("ss")) {
    w.pop_back();
  }
  return w;
}

WordForms word_forms(std::string_view word) {
  std::string singular = singularize(word);
  if (singular != word) {
    return {std::string(word), std::move(singular), std::string(word)};
  }
  return {std::string(word), std::string(word), pluralize(word)};
}

void SynonymLexicon::add(std::string_view word,
                         const std::vector<std::string>& synonyms) {
  auto key = normalize(word);
  auto& list = entries_[key];
  for (const auto& raw : synonyms) {
    auto syn = normalize(raw);
    if (syn.empty() || syn == key) continue;
    if (std::find(list.begin(), list.end(), syn) != list.end()) continue;
    list.push_back(std::move(syn));
  }
}

const std::vector<std::string>& SynonymLexicon::synonyms_of(
    std::string_view word) const {
  static const std::vector<std::string> kEmpty;
  const auto it = entries_.find(normalize(word));
  return it == entries_.end() ? kEmpty : it->second;
}

SynonymLexicon parse_synonyms(std::istream& in) {
  SynonymLexicon lexicon;
  for_each_line(in, [&](std::size_t number, std::string_view line) {
    if (trim(line).empty() || trim(line).starts_with('#')) return;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(Errc::MalformedLine, "expected word<TAB>synonyms", number);
    }
    const auto word = line.substr(0, tab);
    if (normalize(word).empty()) {
      throw Error(Errc::MalformedLine, "empty headword", number);
    }
    std::vector<std::string> synonyms;
    auto rest = line.substr(tab + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      synonyms.emplace_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    lexicon.add(word, synonyms);
  });
  return lexicon;
}

SynonymLexicon load_synonyms(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_synonyms(in);
}

}  // namespace ontorank
