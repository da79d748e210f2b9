#include "ontorank/json_io.hpp"

namespace ontorank {

using nlohmann::json;

namespace {

json node_json(NodeId node, const HypernymGraph& graph) {
  return {{"id", node.value}, {"name", graph.display(node)}};
}

}  // namespace

json to_json(const GeneralizationResult& result, const HypernymGraph& graph) {
  if (result.exhausted()) return {{"outcome", "exhausted"}};
  return {{"outcome", "found"},
          {"label", result.hit->label},
          {"depth", result.hit->depth},
          {"via_node", node_json(result.hit->via, graph)}};
}

json to_json(const MappingTrace& trace, const HypernymGraph& graph) {
  json attempts = json::array();
  for (const auto& a : trace.attempts) {
    attempts.push_back({
        {"candidate", a.candidate},
        {"source", to_string(a.source)},
        {"word_index", a.word_index ? json(*a.word_index) : json(nullptr)},
        {"form", to_string(a.form)},
        {"matched_node", a.matched_node ? node_json(*a.matched_node, graph) : json(nullptr)},
        {"generalization",
         a.generalization ? to_json(*a.generalization, graph) : json(nullptr)},
    });
  }
  return {{"term", trace.term},
          {"final_label", trace.final_label},
          {"defaulted", trace.defaulted},
          {"attempts", std::move(attempts)}};
}

json to_json(const MergedPrediction& prediction) {
  return {{"term", prediction.term},
          {"ontology_label", prediction.ontology_label},
          {"defaulted", prediction.ontology_defaulted},
          {"pre_merge_rank", prediction.pre_merge_rank},
          {"predicted_labels", prediction.ranked_labels}};
}

json to_json(const RankHistogram& histogram) {
  json out = json::array();
  for (const auto& [rank, count] : histogram) {
    out.push_back({{"rank", rank}, {"count", count}});
  }
  return out;
}

json to_json(const EvalReport& report) {
  return {{"method", report.method},
          {"approximate", report.approximate},
          {"n", report.n},
          {"accuracy", report.accuracy},
          {"average_label_rank", report.average_label_rank
                                     ? json(*report.average_label_rank)
                                     : json(nullptr)},
          {"per_label_accuracy", report.per_label_accuracy},
          {"gold_rank_histogram", to_json(report.gold_rank_histogram)}};
}

json to_json(const PipelineResult& result) {
  json baselines = json::array();
  for (const auto& b : result.baselines) baselines.push_back(to_json(b));
  return {{"format", "ontorank-eval-report"},
          {"version", 1},
          {"random_forest", to_json(result.forest)},
          {"ontology", to_json(result.ontology)},
          {"merged", to_json(result.merged)},
          {"baselines", std::move(baselines)},
          {"ontology_rank_histogram", to_json(result.ontology_rank_histogram)}};
}

}  // namespace ontorank
