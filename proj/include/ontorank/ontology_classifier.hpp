#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontorank/lexicon.hpp"
#include "ontorank/ontology_graph.hpp"

namespace ontorank {

enum class CandidateSource { Direct, Word, Synonym };
enum class WordForm { Surface, Singular, Plural };

/// When synonyms are tried: after every word has failed (SecondPass) or right
/// after the word they belong to (PerWord).
enum class SynonymStage { SecondPass, PerWord };

/// Order in which the words of a multi-word term are visited.
enum class WordOrder { Reverse, Forward };

std::string_view to_string(CandidateSource source) noexcept;
std::string_view to_string(WordForm form) noexcept;
std::string_view to_string(SynonymStage stage) noexcept;
std::string_view to_string(WordOrder order) noexcept;

struct ClassifierOptions {
  SynonymStage synonym_stage = SynonymStage::SecondPass;
  WordOrder word_order = WordOrder::Reverse;
  std::size_t max_depth = kDefaultMaxDepth;
};

/// One lookup in the mapping cascade.
struct MappingAttempt {
  std::string candidate;
  CandidateSource source = CandidateSource::Direct;
  /// Index of the originating token; absent for whole-term lookups.
  std::optional<std::size_t> word_index;
  WordForm form = WordForm::Surface;
  std::optional<NodeId> matched_node;
  /// Present iff matched_node is.
  std::optional<GeneralizationResult> generalization;

  bool succeeded() const noexcept {
    return generalization && generalization->found();
  }
};

struct MappingTrace {
  std::string term;
  std::vector<MappingAttempt> attempts;
  std::string final_label;
  bool defaulted = true;
};

/// Maps a free-text term onto the ontology and generalizes it to a label.
///
/// Candidates, in order, until one generalizes to a label:
///   1. the whole normalized term (surface, singular, plural);
///   2. each word, last word first by default (surface, singular, plural);
///   3. each word's synonyms in lexicon order, in the same word order.
/// A candidate that hits a node but cannot be generalized does not stop the
/// cascade. When nothing succeeds the default label is assigned.
///
/// Identical forms of one candidate (e.g. singular == surface) are tried once.
MappingTrace map_and_classify(std::string_view term, const HypernymGraph& graph,
                              const LabelSet& labels,
                              const SynonymLexicon& lexicon,
                              const ClassifierOptions& options = {});

/// Bundles the immutable inputs of map_and_classify. Safe to share across
/// threads.
class OntologyClassifier {
 public:
  OntologyClassifier(const HypernymGraph& graph, const LabelSet& labels,
                     const SynonymLexicon& lexicon,
                     ClassifierOptions options = {})
      : graph_(graph), labels_(labels), lexicon_(lexicon), options_(options) {}

  MappingTrace explain(std::string_view term) const {
    return map_and_classify(term, graph_, labels_, lexicon_, options_);
  }

  std::string classify(std::string_view term) const {
    return explain(term).final_label;
  }

  const HypernymGraph& graph() const noexcept { return graph_; }
  const LabelSet& labels() const noexcept { return labels_; }
  const ClassifierOptions& options() const noexcept { return options_; }

 private:
  const HypernymGraph& graph_;
  const LabelSet& labels_;
  const SynonymLexicon& lexicon_;
  ClassifierOptions options_;
};

}  // namespace ontorank
