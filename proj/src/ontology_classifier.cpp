#include "ontorank/ontology_classifier.hpp"

#include <algorithm>
#include <array>

namespace ontorank {

std::string_view to_string(CandidateSource source) noexcept {
  switch (source) {
    case CandidateSource::Direct: return "direct";
    case CandidateSource::Word: return "word";
    case CandidateSource::Synonym: return "synonym";
  }
  return "";
}

std::string_view to_string(WordForm form) noexcept {
  switch (form) {
    case WordForm::Surface: return "surface";
    case WordForm::Singular: return "singular";
    case WordForm::Plural: return "plural";
  }
  return "";
}

std::string_view to_string(SynonymStage stage) noexcept {
  return stage == SynonymStage::SecondPass ? "second-pass" : "per-word";
}

std::string_view to_string(WordOrder order) noexcept {
  return order == WordOrder::Reverse ? "reverse" : "forward";
}

namespace {

class Cascade {
 public:
  Cascade(const HypernymGraph& graph, const LabelSet& labels,
          const ClassifierOptions& options, MappingTrace& trace)
      : graph_(graph), labels_(labels), options_(options), trace_(trace) {}

  // Tries every distinct inflection of `text`; true once one generalizes.
  bool try_forms(std::string_view text, CandidateSource source,
                 std::optional<std::size_t> word_index) {
    // Inflection applies to the last token of multi-word candidates.
    const auto split = text.rfind(' ');
    const auto head = split == std::string_view::npos
                          ? std::string_view{}
                          : text.substr(0, split + 1);
    const auto forms = word_forms(text.substr(head.size()));
    const std::array<std::pair<WordForm, const std::string*>, 3> variants{{
        {WordForm::Surface, &forms.surface},
        {WordForm::Singular, &forms.singular},
        {WordForm::Plural, &forms.plural},
    }};
    std::vector<std::string> seen;
    for (const auto& [form, word] : variants) {
      std::string candidate = std::string(head) + *word;
      if (std::find(seen.begin(), seen.end(), candidate) != seen.end()) continue;
      seen.push_back(candidate);
      if (attempt(std::move(candidate), source, word_index, form)) return true;
    }
    return false;
  }

 private:
  bool attempt(std::string candidate, CandidateSource source,
               std::optional<std::size_t> word_index, WordForm form) {
    MappingAttempt record{std::move(candidate), source, word_index, form, {}, {}};
    if (const auto node = graph_.find_normalized(record.candidate)) {
      record.matched_node = node;
      record.generalization =
          generalize(graph_, *node, labels_, options_.max_depth);
    }
    const bool success = record.succeeded();
    if (success) {
      trace_.final_label = record.generalization->hit->label;
      trace_.defaulted = false;
    }
    trace_.attempts.push_back(std::move(record));
    return success;
  }

  const HypernymGraph& graph_;
  const LabelSet& labels_;
  const ClassifierOptions& options_;
  MappingTrace& trace_;
};

}  // namespace

MappingTrace map_and_classify(std::string_view term, const HypernymGraph& graph,
                              const LabelSet& labels,
                              const SynonymLexicon& lexicon,
                              const ClassifierOptions& options) {
  MappingTrace trace;
  trace.term = std::string(term);
  trace.final_label = labels.default_label();
  trace.defaulted = true;

  const auto normalized = normalize(term);
  if (normalized.empty()) return trace;

  Cascade cascade(graph, labels, options, trace);
  if (cascade.try_forms(normalized, CandidateSource::Direct, std::nullopt)) {
    return trace;
  }

  const auto words = tokenize(normalized);
  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = options.word_order == WordOrder::Reverse ? order.size() - 1 - i : i;
  }

  // Synonyms of the surface word, then of its singular if that differs.
  const auto try_synonyms = [&](std::size_t index) {
    std::vector<std::string> synonyms = lexicon.synonyms_of(words[index]);
    const auto singular = singularize(words[index]);
    if (singular != words[index]) {
      for (const auto& s : lexicon.synonyms_of(singular)) {
        if (std::find(synonyms.begin(), synonyms.end(), s) == synonyms.end()) {
          synonyms.push_back(s);
        }
      }
    }
    for (const auto& synonym : synonyms) {
      if (cascade.try_forms(synonym, CandidateSource::Synonym, index)) return true;
    }
    return false;
  };

  for (const auto index : order) {
    if (cascade.try_forms(words[index], CandidateSource::Word, index)) return trace;
    if (options.synonym_stage == SynonymStage::PerWord && try_synonyms(index)) {
      return trace;
    }
  }
  if (options.synonym_stage == SynonymStage::SecondPass) {
    for (const auto index : order) {
      if (try_synonyms(index)) return trace;
    }
  }
  return trace;
}

}  // namespace ontorank
