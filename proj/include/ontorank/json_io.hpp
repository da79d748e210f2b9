#pragma once

#include <json.hpp>

#include "ontorank/eval.hpp"
#include "ontorank/ontology_classifier.hpp"
#include "ontorank/ranking.hpp"

// JSON views of traces, predictions and reports. Layouts are documented in
// docs/formats.md.

namespace ontorank {

nlohmann::json to_json(const GeneralizationResult& result, const HypernymGraph& graph);
nlohmann::json to_json(const MappingTrace& trace, const HypernymGraph& graph);
nlohmann::json to_json(const MergedPrediction& prediction);
nlohmann::json to_json(const RankHistogram& histogram);
nlohmann::json to_json(const EvalReport& report);

/// Top-level evaluation report (forest, ontology, merged, baselines).
nlohmann::json to_json(const PipelineResult& result);

}  // namespace ontorank
