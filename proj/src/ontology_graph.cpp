#include "ontorank/ontology_graph.hpp"

#include <algorithm>
#include <istream>

#include "ontorank/errors.hpp"
#include "ontorank/io.hpp"
#include "ontorank/lexicon.hpp"

namespace ontorank {

Patch parse_patch(std::string_view spec) {
  const auto arrow = spec.find("=>");
  if (arrow == std::string_view::npos ||
      spec.find("=>", arrow + 2) != std::string_view::npos) {
    throw Error(Errc::MalformedLine,
                "patch must look like child=>parent: '" + std::string(spec) + "'");
  }
  Patch patch{std::string(trim(spec.substr(0, arrow))),
              std::string(trim(spec.substr(arrow + 2)))};
  if (normalize(patch.child).empty() || normalize(patch.parent).empty()) {
    throw Error(Errc::MalformedLine,
                "patch has an empty side: '" + std::string(spec) + "'");
  }
  return patch;
}

std::vector<Patch> load_patches(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<Patch> patches;
  for_each_line(in, [&](std::size_t number, std::string_view line) {
    const auto content = trim(line);
    if (content.empty() || content.starts_with('#')) return;
    try {
      patches.push_back(parse_patch(content));
    } catch (const Error& e) {
      throw Error(Errc::MalformedLine, e.what(), number);
    }
  });
  return patches;
}

LabelSet::LabelSet(std::vector<std::string> labels, std::string default_label)
    : labels_(std::move(labels)), default_(std::move(default_label)) {
  if (labels_.empty()) {
    throw Error(Errc::InvalidLabelSet, "label list is empty");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto key = normalize(labels_[i]);
    if (key.empty()) {
      throw Error(Errc::InvalidLabelSet, "empty label");
    }
    if (!index_.emplace(std::move(key), i).second) {
      throw Error(Errc::InvalidLabelSet,
                  "labels collide after normalization: '" + labels_[i] + "'");
    }
  }
  const auto* canonical = find(default_);
  if (canonical == nullptr) {
    throw Error(Errc::InvalidLabelSet,
                "default label '" + default_ + "' is not in the label list");
  }
  default_ = *canonical;
}

LabelSet LabelSet::financial() {
  return LabelSet({"Forward", "Funds", "Future", "MMIs", "Option", "Stocks",
                   "Swap", "Equity Index", "Credit Index", "Bonds"},
                  "Credit Index");
}

const std::string* LabelSet::find(std::string_view name) const {
  return find_normalized(normalize(name));
}

const std::string* LabelSet::find_normalized(std::string_view normalized) const {
  const auto it = index_.find(std::string(normalized));
  return it == index_.end() ? nullptr : &labels_[it->second];
}

std::optional<NodeId> HypernymGraph::find(std::string_view name) const {
  return find_normalized(normalize(name));
}

std::optional<NodeId> HypernymGraph::find_normalized(
    std::string_view normalized) const {
  const auto it = names_.find(std::string(normalized));
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

void HypernymGraph::check(NodeId node) const {
  if (!contains(node)) {
    throw Error(Errc::UnknownNode, "node id " + std::to_string(node.value));
  }
}

const std::string& HypernymGraph::display(NodeId node) const {
  check(node);
  return display_[node.value];
}

const std::string& HypernymGraph::name(NodeId node) const {
  check(node);
  return normalized_[node.value];
}

std::span<const NodeId> HypernymGraph::parents(NodeId node) const {
  check(node);
  return parents_[node.value];
}

NodeId HypernymGraph::add_node(std::string_view raw, bool strict) {
  const auto display = trim(raw);
  auto key = normalize(display);
  if (key.empty()) {
    throw Error(Errc::MalformedLine, "empty node name");
  }
  if (const auto it = names_.find(key); it != names_.end()) {
    if (strict && display_[it->second.value] != display) {
      throw Error(Errc::DuplicateNormalizedName,
                  "'" + std::string(display) + "' and '" +
                      display_[it->second.value] + "' both normalize to '" +
                      key + "'");
    }
    return it->second;
  }
  const NodeId id{static_cast<std::uint32_t>(display_.size())};
  names_.emplace(key, id);
  display_.emplace_back(display);
  normalized_.push_back(std::move(key));
  parents_.emplace_back();
  return id;
}

bool HypernymGraph::add_edge(NodeId child, NodeId parent) {
  check(child);
  check(parent);
  auto& adjacency = parents_[child.value];
  const auto it = std::lower_bound(adjacency.begin(), adjacency.end(), parent);
  if (it != adjacency.end() && *it == parent) return false;
  adjacency.insert(it, parent);
  ++edges_;
  return true;
}

bool HypernymGraph::apply(const Patch& patch) {
  const auto before = size();
  const auto child = add_node(patch.child);
  const auto parent = add_node(patch.parent);
  const bool added = add_edge(child, parent);
  return added || size() != before;
}

HypernymGraph parse_edges(std::istream& in, std::span<const Patch> patches) {
  HypernymGraph graph;
  for_each_line(in, [&](std::size_t number, std::string_view line) {
    if (trim(line).empty() || trim(line).starts_with('#')) return;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(Errc::MalformedLine, "expected child<TAB>parent", number);
    }
    try {
      const auto child = graph.add_node(line.substr(0, tab), true);
      const auto parent = graph.add_node(line.substr(tab + 1), true);
      graph.add_edge(child, parent);
    } catch (const Error& e) {
      if (e.code() == Errc::MalformedLine) {
        throw Error(Errc::MalformedLine, "empty node name", number);
      }
      if (e.code() == Errc::DuplicateNormalizedName) {
        throw Error(Errc::DuplicateNormalizedName, e.what(), number);
      }
      throw;
    }
  });
  for (const auto& patch : patches) graph.apply(patch);
  return graph;
}

HypernymGraph load_edges(const std::filesystem::path& path,
                         std::span<const Patch> patches) {
  auto in = open_input(path);
  return parse_edges(in, patches);
}

std::span<const NodeId> parents_of(const HypernymGraph& graph, NodeId node) {
  return graph.parents(node);
}

bool has_cycle(const HypernymGraph& graph) {
  enum class Mark : unsigned char { White, Grey, Black };
  std::vector<Mark> mark(graph.size(), Mark::White);
  // Iterative DFS; each stack entry is (node, next parent index).
  std::vector<std::pair<NodeId, std::size_t>> stack;
  for (std::uint32_t root = 0; root < graph.size(); ++root) {
    if (mark[root] != Mark::White) continue;
    stack.emplace_back(NodeId{root}, 0);
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto parents = graph.parents(node);
      if (next == parents.size()) {
        mark[node.value] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const NodeId parent = parents[next++];
      if (mark[parent.value] == Mark::Grey) return true;
      if (mark[parent.value] == Mark::White) {
        mark[parent.value] = Mark::Grey;
        stack.emplace_back(parent, 0);
      }
    }
  }
  return false;
}

GeneralizationResult generalize(const HypernymGraph& graph, NodeId start,
                                const LabelSet& labels, std::size_t max_depth) {
  if (!graph.contains(start)) {
    throw Error(Errc::UnknownNode, "node id " + std::to_string(start.value));
  }
  if (max_depth == 0) {
    throw Error(Errc::InvalidArgument, "max_depth must be at least 1");
  }

  std::vector<bool> visited(graph.size(), false);
  std::vector<NodeId> frontier{start};
  visited[start.value] = true;

  for (std::size_t depth = 0; depth <= max_depth && !frontier.empty(); ++depth) {
    const std::string* best_label = nullptr;
    const std::string* best_key = nullptr;
    NodeId best_node;
    for (const NodeId node : frontier) {
      const auto& key = graph.name(node);
      const auto* label = labels.find_normalized(key);
      if (label != nullptr && (best_key == nullptr || key < *best_key)) {
        best_label = label;
        best_key = &key;
        best_node = node;
      }
    }
    if (best_label != nullptr) {
      return {GeneralizationHit{*best_label, depth, best_node}};
    }

    std::vector<NodeId> next;
    for (const NodeId node : frontier) {
      for (const NodeId parent : graph.parents(node)) {
        if (!visited[parent.value]) {
          visited[parent.value] = true;
          next.push_back(parent);
        }
      }
    }
    frontier = std::move(next);
  }
  return {};
}

}  // namespace ontorank
