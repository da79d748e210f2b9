#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "label_counts.hpp"
#include "merge_fixture.hpp"
#include "ontorank/eval.hpp"
#include "ontorank/random.hpp"
#include "test_util.hpp"

using namespace ontorank;
using test_util::error_of;

namespace {

Dataset parse(const std::string& csv, const LabelSet& labels = LabelSet::financial()) {
  std::istringstream in(csv);
  return parse_dataset(in, labels);
}

Dataset numbered(std::size_t n) {
  Dataset ds;
  for (std::size_t i = 0; i < n; ++i) ds.records.push_back({std::to_string(i), "Bonds"});
  return ds;
}

std::vector<std::string> terms_of(const Dataset& ds) { return ds.terms(); }

}  // namespace

TEST_CASE("csv fields") {
  CHECK(split_csv_line("a,b") == std::vector<std::string>{"a", "b"});
  CHECK(split_csv_line("\"a, b\",c") == std::vector<std::string>{"a, b", "c"});
  CHECK(split_csv_line("\"say \"\"hi\"\"\",x") == std::vector<std::string>{"say \"hi\"", "x"});
  CHECK_FALSE(split_csv_line("\"open,x"));
  for (const std::string s : {"plain", "a,b", "q\"q", ""}) {
    CHECK(split_csv_line(csv_escape(s) + ",z") == std::vector<std::string>{s, "z"});
  }
}

TEST_CASE("dataset loading") {
  const auto ds = parse(test_util::synthetic_train_csv());
  CHECK(ds.size() == 614);
  std::map<std::string, std::size_t> counts;
  for (const auto& r : ds.records) ++counts[r.gold];
  for (const auto& [label, n] : test_util::train_label_counts()) CHECK(counts[label] == n);

  CHECK(parse("term,label\n").empty());
  CHECK(parse("term,label\r\n\"Agency Bonds\",Bonds\r\n").records.front() ==
        Record{"Agency Bonds", "Bonds"});
  try {
    parse("term,label\nA,Bonds\nB,Bond\n");
    FAIL("expected UnknownGoldLabel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownGoldLabel);
    CHECK(e.line() == 3);
  }
  CHECK(error_of([] { parse("name,label\nA,Bonds\n"); }) == Errc::MalformedRow);
  CHECK(error_of([] { parse("term,label\nA,Bonds,x\n"); }) == Errc::MalformedRow);
  CHECK(error_of([] { parse(""); }) == Errc::MalformedRow);
  CHECK(load_dataset(test_util::fixture("train.csv"), LabelSet::financial()).size() == 50);
}

TEST_CASE("split sizes") {
  const auto [train, test] = split(numbered(614), 0.9, 1);
  CHECK(train.size() == 552);
  CHECK(test.size() == 62);
  const auto [a, b] = split(numbered(2), 0.5, 1);
  CHECK(a.size() == 1);
  CHECK(b.size() == 1);
  // 0.29 * 100 is 28.999... in binary.
  CHECK(split(numbered(100), 0.29, 3).first.size() == 29);
  CHECK(error_of([] { split(Dataset{}, 0.5, 1); }) == Errc::DegenerateData);
  CHECK(error_of([] { split(numbered(4), 1.0, 1); }) == Errc::InvalidArgument);
  CHECK(error_of([] { split(numbered(4), 0.0, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("split partitions the data for many seeds") {
  const auto ds = numbered(614);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [train, test] = split(ds, 0.9, seed);
    REQUIRE(train.size() == 552);
    REQUIRE(test.size() == 62);
    std::set<std::string> seen;
    for (const auto& r : train.records) seen.insert(r.term);
    for (const auto& r : test.records) CHECK(seen.insert(r.term).second);
    CHECK(seen.size() == 614);
  }
  CHECK(terms_of(split(ds, 0.9, 5).second) == terms_of(split(ds, 0.9, 5).second));
  CHECK(terms_of(split(ds, 0.9, 5).second) != terms_of(split(ds, 0.9, 6).second));
}

TEST_CASE("stratified split cuts each label") {
  const auto ds = parse(test_util::synthetic_train_csv());
  const auto [train, test] = split(ds, 0.9, 4, true);
  CHECK(train.size() + test.size() == 614);
  std::map<std::string, std::size_t> train_counts;
  for (const auto& r : train.records) ++train_counts[r.gold];
  for (const auto& [label, n] : test_util::train_label_counts()) {
    CHECK(train_counts[label] == static_cast<std::size_t>(0.9 * static_cast<double>(n) + 1e-9));
  }
}

TEST_CASE("metric identities") {
  using L = std::vector<std::string>;
  const std::vector<L> preds{{"A", "B"}, {"A", "B"}, {"A", "B"}, {"A", "B"}};
  const std::vector<std::string> golds{"A", "B", "A", "B"};
  CHECK(average_label_rank(preds, golds) == 1.5);
  CHECK(accuracy(preds, golds) == 0.5);

  std::vector<L> hits(614, L{"x"});
  std::vector<std::string> hit_golds(614, "y");
  std::fill_n(hit_golds.begin(), 535, "x");
  CHECK(accuracy(hits, hit_golds) == doctest::Approx(0.8713).epsilon(1e-4));
  CHECK(accuracy(hits, hit_golds) == 535.0 / 614.0);

  CHECK(error_of([&] { accuracy(preds, std::vector<std::string>{"A"}); }) ==
        Errc::LengthMismatch);
  CHECK(error_of([] { accuracy({}, {}); }) == Errc::LengthMismatch);
  const std::vector<std::string> missing{"C", "A", "A", "A"};
  CHECK(error_of([&] { average_label_rank(preds, missing); }) ==
        Errc::GoldMissingFromRanking);
}

TEST_CASE("average rank stays within bounds on random prediction sets") {
  const auto labels = LabelSet::financial().labels();
  Rng rng(31);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<std::vector<std::string>> preds;
    std::vector<std::string> golds;
    for (std::size_t i = 0; i < n; ++i) {
      auto p = labels;
      rng.shuffle(std::span(p));
      preds.push_back(p);
      golds.push_back(labels[rng.below(labels.size())]);
    }
    const double r = average_label_rank(preds, golds);
    CHECK(r >= 1.0);
    CHECK(r <= static_cast<double>(labels.size()));
    const auto report = make_report("m", preds, golds);
    std::size_t total = 0;
    for (const auto& [rank, count] : report.gold_rank_histogram) total += count;
    CHECK(total == n);
  }
}

TEST_CASE("hand-traced merge fixture") {
  std::vector<std::vector<std::string>> merged;
  std::vector<std::string> golds;
  for (const auto& c : test_util::merge_cases()) {
    RankedPrediction r;
    r.ranked_labels = test_util::letters(c.forest);
    const auto m = merge(r, c.ontology);
    CHECK(gold_rank(m.ranked_labels, c.gold) == c.merged_rank);
    merged.push_back(m.ranked_labels);
    golds.push_back(c.gold);
  }
  CHECK(std::abs(average_label_rank(merged, golds) - test_util::kMergeCasesAverage) <= 1e-12);
}

TEST_CASE("pipeline with an all-correct ontology ranks the gold first") {
  const auto labels = LabelSet::financial();
  HypernymGraph graph;
  Dataset ds;
  std::ostringstream vec;
  Rng rng(2);
  vec << labels.size() * 2 << " 4\n";
  for (const auto& label : labels.labels()) {
    graph.add_node(label);
    for (int k = 0; k < 2; ++k) ds.records.push_back({label, label});
  }
  for (const auto& label : labels.labels()) {
    for (const auto& w : tokenize(normalize(label))) {
      vec << w;
      for (int d = 0; d < 4; ++d) vec << ' ' << rng.normal();
      vec << '\n';
    }
  }
  std::istringstream vin(vec.str());
  const auto emb = parse_embeddings<double>(vin, [](std::string_view) {});
  PipelineOptions opts;
  opts.forest.n_trees = 10;
  opts.forest.seed = 3;
  const auto result = evaluate_pipeline(ds, ds, graph, labels, SynonymLexicon{}, emb, opts);
  CHECK(result.ontology.accuracy == 1.0);
  REQUIRE(result.merged.average_label_rank);
  CHECK(*result.merged.average_label_rank == 1.0);
  CHECK(result.merged.accuracy == 1.0);
  CHECK(result.forest.average_label_rank.value() >= 1.0);
  CHECK_FALSE(result.ontology.average_label_rank);
  CHECK(result.baselines.size() == 2);
  for (const auto& b : result.baselines) CHECK(b.approximate);
}

TEST_CASE("pipeline: merged never worse than forest when the ontology is right") {
  const auto labels = LabelSet::financial();
  const auto graph = load_edges(test_util::fixture("ontology_edges.tsv"),
                                load_patches(test_util::fixture("patches.txt")));
  const auto lex = load_synonyms(test_util::fixture("synonyms.tsv"));
  const auto emb = load_embeddings<double>(test_util::fixture("toy_vectors.txt"));
  const auto ds = load_dataset(test_util::fixture("train.csv"), labels);
  const auto [train, test] = split(ds, 0.7, 7);
  PipelineOptions opts;
  opts.forest.n_trees = 20;
  const auto r = evaluate_pipeline(train, test, graph, labels, lex, emb, opts);
  CHECK(r.instances.size() == test.size());
  for (const auto& inst : r.instances) {
    const auto fr = gold_rank(inst.forest.ranked_labels, inst.gold);
    const auto mr = gold_rank(inst.merged.ranked_labels, inst.gold);
    if (inst.ontology_label == inst.gold) CHECK(mr == 1);
    CHECK(mr <= fr + 1);
  }
  const double avg = *r.merged.average_label_rank;
  CHECK(avg >= 1.0);
  CHECK(avg <= static_cast<double>(labels.size()));
  std::size_t hist_total = 0;
  for (const auto& [rank, count] : r.ontology_rank_histogram) hist_total += count;
  CHECK(hist_total == test.size());
}
