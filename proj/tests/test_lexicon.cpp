#include <doctest.h>

#include <random>
#include <sstream>

#include "ontorank/lexicon.hpp"
#include "test_util.hpp"

using namespace ontorank;
using test_util::error_of;

TEST_CASE("normalize") {
  CHECK(normalize("Equity  Index ") == "equity index");
  CHECK(normalize("") == "");
  CHECK(normalize("Euro-bond,") == "euro-bond");
  CHECK(normalize("  S&P\t500\n") == "sp 500");
  CHECK(normalize("-leading and trailing- -") == "leading and trailing");
  CHECK(normalize("Moody's") == "moodys");
  CHECK(normalize("ÉMISSION Über") == "émission über");
}

TEST_CASE("normalize is idempotent on random strings") {
  std::mt19937 gen(1234);
  const std::string alphabet = "aZ -_,.;'\t\"-Éü09(x)&";
  for (int i = 0; i < 2000; ++i) {
    std::string raw;
    const int len = static_cast<int>(gen() % 24);
    for (int k = 0; k < len; ++k) raw += alphabet[gen() % alphabet.size()];
    // Multi-byte characters may be cut, producing invalid UTF-8; that must
    // also be stable.
    const auto once = normalize(raw);
    CHECK(normalize(once) == once);
  }
}

TEST_CASE("tokenize") {
  CHECK(tokenize("option on future") == std::vector<std::string>{"option", "on", "future"});
  CHECK(tokenize("eurobond") == std::vector<std::string>{"eurobond"});
  CHECK(tokenize("").empty());
}

TEST_CASE("tokenize inverts joining") {
  std::mt19937 gen(99);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> tokens;
    const int n = static_cast<int>(gen() % 6);
    for (int k = 0; k < n; ++k) {
      std::string t;
      const int len = 1 + static_cast<int>(gen() % 7);
      for (int c = 0; c < len; ++c) t += static_cast<char>('a' + gen() % 26);
      tokens.push_back(t);
    }
    std::string joined;
    for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t;
    CHECK(tokenize(joined) == tokens);
  }
}

TEST_CASE("word forms follow the rule table") {
  auto forms = word_forms("bonds");
  CHECK(forms.singular == "bond");
  CHECK(forms.plural == "bonds");
  forms = word_forms("agency");
  CHECK(forms.singular == "agency");
  CHECK(forms.plural == "agencies");
  forms = word_forms("glass");
  CHECK(forms.singular == "glass");
  CHECK(forms.plural == "glasses");

  CHECK(pluralize("box") == "boxes");
  CHECK(pluralize("church") == "churches");
  CHECK(pluralize("day") == "days");
  CHECK(singularize("agencies") == "agency");
  CHECK(singularize("boxes") == "box");
  CHECK(singularize("futures") == "future");
  CHECK(singularize("stocks") == "stock");
  CHECK(singularize("mmis") == "mmi");
  CHECK(singularize("s") == "s");
  CHECK(word_forms("").plural.empty());
}

TEST_CASE("surface form is always the singular or the plural") {
  for (const char* w : {"bond", "bonds", "swap", "index", "indexes", "glass", "is", "y"}) {
    const auto f = word_forms(w);
    CHECK((f.surface == f.singular || f.surface == f.plural));
  }
}

TEST_CASE("singularize inverts pluralize on regular nouns") {
  std::mt19937 gen(7);
  const std::string letters = "abcdefghijklmnopqrtuvwxyz";  // no 's'
  int checked = 0;
  while (checked < 3000) {
    std::string w;
    const int len = 1 + static_cast<int>(gen() % 8);
    for (int k = 0; k < len; ++k) w += letters[gen() % letters.size()];
    // The closed rule table cannot tell "sizes" from "boxes" or "ties" from
    // "cities"; words ending in a sibilant + "e" or in "ie" are irregular here.
    const bool irregular = w.ends_with("xe") || w.ends_with("ze") || w.ends_with("che") ||
                           w.ends_with("she") || w.ends_with("ie");
    if (irregular) continue;
    CHECK_MESSAGE(singularize(pluralize(w)) == w, w);
    ++checked;
  }
  // Documented counterexamples of the rule table.
  CHECK(singularize(pluralize("size")) == "siz");
  CHECK(singularize(pluralize("tie")) == "ty");
}

TEST_CASE("synonym lexicon parsing") {
  std::istringstream in(
      "# comment\n"
      "stock\tshare,equity\n"
      "swap\tswap\n"
      "Stock\tEquity, inventory\n"
      "\n");
  const auto lex = parse_synonyms(in);
  CHECK(lex.synonyms_of("stock") == std::vector<std::string>{"share", "equity", "inventory"});
  CHECK(lex.synonyms_of("Stock") == lex.synonyms_of("stock"));
  CHECK(lex.synonyms_of("swap").empty());
  CHECK(lex.synonyms_of("unknown").empty());
}

TEST_CASE("synonym lexicon errors") {
  std::istringstream no_tab("stock share\n");
  CHECK(error_of([&] { parse_synonyms(no_tab); }) == Errc::MalformedLine);
  std::istringstream two_tabs("ok\tfine\nstock\tshare\tequity\n");
  try {
    parse_synonyms(two_tabs);
    FAIL("expected MalformedLine");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedLine);
    CHECK(e.line() == 2);
  }
  CHECK(error_of([] { load_synonyms("/nonexistent/synonyms.tsv"); }) == Errc::FileNotFound);
}

TEST_CASE("bundled synonym fixture loads") {
  const auto lex = load_synonyms(test_util::fixture("synonyms.tsv"));
  CHECK(lex.synonyms_of("share").front() == "stock");
  CHECK(lex.synonyms_of("eurobond").empty());
}
