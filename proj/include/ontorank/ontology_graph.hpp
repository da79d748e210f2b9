#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontorank {

/// Dense index of an ontology node, contiguous from 0 in insertion order.
struct NodeId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// An additive `child=>parent` edge applied after the edge file is read.
struct Patch {
  std::string child;
  std::string parent;
  friend bool operator==(const Patch&, const Patch&) = default;
};

/// Parses `child=>parent`. Throws Error{MalformedLine} on anything else.
Patch parse_patch(std::string_view spec);

/// One `child=>parent` per line; blank lines and `#` comments skipped.
std::vector<Patch> load_patches(const std::filesystem::path& path);

/// Target labels plus the default assigned when mapping fails.
class LabelSet {
 public:
  LabelSet(std::vector<std::string> labels, std::string default_label);

  /// Forward, Funds, Future, MMIs, Option, Stocks, Swap, Equity Index,
  /// Credit Index, Bonds; defaulting to Credit Index.
  static LabelSet financial();

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& default_label() const noexcept { return default_; }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Canonical label whose normalized form equals normalize(name).
  const std::string* find(std::string_view name) const;
  /// Same, for a name that is already normalized.
  const std::string* find_normalized(std::string_view normalized) const;

 private:
  std::vector<std::string> labels_;
  std::string default_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Child-to-parent hypernym graph. Duplicate edges collapse; cycles are
/// allowed.
class HypernymGraph {
 public:
  std::size_t size() const noexcept { return display_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }

  std::optional<NodeId> find(std::string_view name) const;
  std::optional<NodeId> find_normalized(std::string_view normalized) const;

  const std::string& display(NodeId node) const;
  const std::string& name(NodeId node) const;

  /// Parents in ascending id order. Throws Error{UnknownNode}.
  std::span<const NodeId> parents(NodeId node) const;

  /// Inserts a node, or returns the existing one. With `strict`, an existing
  /// node whose trimmed raw name differs throws DuplicateNormalizedName.
  NodeId add_node(std::string_view raw, bool strict = false);

  /// Returns false if the edge was already present.
  bool add_edge(NodeId child, NodeId parent);

  /// Adds the patch nodes if absent and the edge; false if nothing changed.
  bool apply(const Patch& patch);

  bool contains(NodeId node) const noexcept { return node.value < size(); }

  friend bool operator==(const HypernymGraph&, const HypernymGraph&) = default;

 private:
  void check(NodeId node) const;

  std::unordered_map<std::string, NodeId> names_;
  std::vector<std::string> display_;
  std::vector<std::string> normalized_;
  std::vector<std::vector<NodeId>> parents_;
  std::size_t edges_ = 0;
};

/// Reads `child<TAB>parent` lines, then applies `patches` in order.
HypernymGraph parse_edges(std::istream& in, std::span<const Patch> patches = {});
HypernymGraph load_edges(const std::filesystem::path& path,
                         std::span<const Patch> patches = {});

std::span<const NodeId> parents_of(const HypernymGraph& graph, NodeId node);

/// True if some node can reach itself through parent edges.
bool has_cycle(const HypernymGraph& graph);

struct GeneralizationHit {
  std::string label;
  std::size_t depth = 0;
  NodeId via;
  friend bool operator==(const GeneralizationHit&,
                         const GeneralizationHit&) = default;
};

/// Found(label, depth, via) or Exhausted.
struct GeneralizationResult {
  std::optional<GeneralizationHit> hit;

  bool found() const noexcept { return hit.has_value(); }
  bool exhausted() const noexcept { return !hit.has_value(); }
  friend bool operator==(const GeneralizationResult&,
                         const GeneralizationResult&) = default;
};

inline constexpr std::size_t kDefaultMaxDepth = 100;

/// Breadth-first walk up the parent relation. Depth 0 is the start node; each
/// further level replaces the frontier with its unvisited parents. Returns the
/// shallowest node named after a label, breaking ties at one depth by the
/// lexicographically smallest normalized label.
GeneralizationResult generalize(const HypernymGraph& graph, NodeId start,
                                const LabelSet& labels,
                                std::size_t max_depth = kDefaultMaxDepth);

}  // namespace ontorank
