#include <doctest.h>

#include <random>
#include <sstream>

#include "graph_oracle.hpp"
#include "ontorank/ontology_graph.hpp"
#include "random_graphs.hpp"
#include "test_util.hpp"

using namespace ontorank;
using test_util::error_of;

namespace {

HypernymGraph graph_from(const std::string& tsv, std::vector<Patch> patches = {}) {
  std::istringstream in(tsv);
  return parse_edges(in, patches);
}

std::vector<std::string> parent_names(const HypernymGraph& g, std::string_view node) {
  std::vector<std::string> out;
  for (const auto p : g.parents(*g.find(node))) out.push_back(g.name(p));
  return out;
}

}  // namespace

TEST_CASE("load_edges applies the Equity Index patch") {
  const auto g = graph_from("Index\tStatistical Measure\n", {{"Index", "Equity Index"}});
  CHECK(g.size() == 3);
  CHECK(parent_names(g, "index") ==
        std::vector<std::string>{"statistical measure", "equity index"});
  CHECK(g.display(*g.find("equity index")) == "Equity Index");
}

TEST_CASE("empty edge file gives an empty graph") {
  const auto g = graph_from("");
  CHECK(g.size() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("duplicate edges collapse") {
  const auto g = graph_from("A\tB\nA\tB\n");
  CHECK(parent_names(g, "a") == std::vector<std::string>{"b"});
  CHECK(g.edge_count() == 1);
}

TEST_CASE("edge file errors") {
  try {
    graph_from("# header\nA\tB\nA B\n");
    FAIL("expected MalformedLine");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedLine);
    CHECK(e.line() == 3);
  }
  CHECK(error_of([] { graph_from("A\tB\tC\n"); }) == Errc::MalformedLine);
  CHECK(error_of([] { graph_from("A\t \n"); }) == Errc::MalformedLine);
  CHECK(error_of([] { graph_from("Bonds\tDebt\nbonds\tSecurity\n"); }) ==
        Errc::DuplicateNormalizedName);
  CHECK(error_of([] { load_edges("/nonexistent/edges.tsv"); }) == Errc::FileNotFound);
}

TEST_CASE("patches resolve names through normalization") {
  const auto g = graph_from("Index\tMeasure\n", {parse_patch(" index => Equity Index ")});
  CHECK(g.size() == 3);
  CHECK(parent_names(g, "Index").size() == 2);
  CHECK(error_of([] { parse_patch("Index -> Equity Index"); }) == Errc::MalformedLine);
  CHECK(error_of([] { parse_patch("=>Equity Index"); }) == Errc::MalformedLine);
}

TEST_CASE("patch application is idempotent") {
  const Patch patch{"Index", "Equity Index"};
  const auto once = graph_from("Index\tMeasure\n", {patch});
  const auto twice = graph_from("Index\tMeasure\n", {patch, patch});
  CHECK(once == twice);
  auto g = once;
  CHECK_FALSE(g.apply(patch));
}

TEST_CASE("parents_of") {
  const auto chain = graph_from("a\tb\n");
  CHECK(parents_of(chain, *chain.find("a")).size() == 1);
  CHECK(parents_of(chain, *chain.find("b")).empty());

  // Ids follow first appearance: a=0, c=1, b=2; parents come back by id.
  const auto diamond = graph_from("a\tc\na\tb\n");
  const auto ps = parents_of(diamond, *diamond.find("a"));
  REQUIRE(ps.size() == 2);
  CHECK(ps[0] < ps[1]);
  CHECK(diamond.name(ps[0]) == "c");
  CHECK(error_of([&] { parents_of(chain, NodeId{7}); }) == Errc::UnknownNode);
}

TEST_CASE("generalize examples") {
  const LabelSet financial = LabelSet::financial();
  const auto bonds = graph_from("Agency Bonds\tAgency\nBonds\tDebt\n");
  const auto direct = generalize(bonds, *bonds.find("bonds"), financial);
  REQUIRE(direct.found());
  CHECK(direct.hit->label == "Bonds");
  CHECK(direct.hit->depth == 0);

  const LabelSet z({"z", "w"}, "w");
  const auto chain = graph_from("x\ty\ny\tz\n");
  const auto r = generalize(chain, *chain.find("x"), z);
  REQUIRE(r.found());
  CHECK(r.hit->label == "z");
  CHECK(r.hit->depth == 2);
  CHECK(chain.name(r.hit->via) == "z");

  // Depth limit: z is two levels up.
  CHECK(generalize(chain, *chain.find("x"), z, 1).exhausted());

  const LabelSet c({"c"}, "c");
  const auto cycle = graph_from("a\tb\nb\ta\n");
  CHECK(generalize(cycle, *cycle.find("a"), c).exhausted());
  CHECK(error_of([&] { generalize(cycle, NodeId{9}, c); }) == Errc::UnknownNode);
}

TEST_CASE("generalize breaks ties by the smallest label") {
  const LabelSet labels({"Swap", "Option", "Forward"}, "Forward");
  const auto g = graph_from("swaption\tswap\nswaption\toption\n");
  const auto r = generalize(g, *g.find("swaption"), labels);
  REQUIRE(r.found());
  CHECK(r.hit->label == "Option");
  CHECK(r.hit->depth == 1);
  // Determinism.
  CHECK(generalize(g, *g.find("swaption"), labels) == r);
}

TEST_CASE("has_cycle") {
  CHECK_FALSE(has_cycle(graph_from("a\tb\nb\tc\na\tc\n")));
  CHECK(has_cycle(graph_from("a\tb\nb\tc\nc\ta\n")));
  CHECK(has_cycle(graph_from("a\ta\n")));
}

TEST_CASE("generalize matches the brute-force oracle on random graphs") {
  std::mt19937_64 gen(20240501);
  for (int round = 0; round < 300; ++round) {
    const bool cyclic = round % 3 == 2;
    auto g = test_util::make_random_graph(gen, 50, cyclic);
    std::vector<std::string> label_display = g.labels;
    const LabelSet labels(label_display, label_display.front());
    const std::size_t max_depth = 1 + gen() % 12;
    for (std::size_t start = 0; start < g.names.size(); ++start) {
      const auto expected = oracle::nearest_label(g.names.size(), g.edges, g.names,
                                                  g.labels, start, max_depth);
      const auto got = generalize(
          g.graph, NodeId{static_cast<std::uint32_t>(start)}, labels, max_depth);
      REQUIRE(got.found() == expected.has_value());
      if (expected) {
        CHECK(got.hit->label == expected->label);
        CHECK(got.hit->depth == expected->depth);
      }
    }
  }
}
