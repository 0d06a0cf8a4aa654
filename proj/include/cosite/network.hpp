#pragma once

// Valued directed graph G(N, L, V) over clusters and its structural measures.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cosite/cluster.hpp"
#include "cosite/ingest.hpp"

namespace cosite {

struct Arc {
  ClusterId source = 0;
  ClusterId target = 0;
  double value = 0.0;
  // Number of underlying relations folded into the arc: contributing site
  // pairs in flow mode, external associations in creation-order mode.
  std::uint64_t multiplicity = 1;

  bool operator==(const Arc&) const = default;
};

using ArcKey = std::pair<ClusterId, ClusterId>;

class ClusterNetwork {
 public:
  ClusterNetwork() = default;
  /// Sorts nodes and arcs. Throws InvalidArgument on duplicate nodes, self
  /// arcs, arcs naming unknown nodes, or duplicate arcs.
  ClusterNetwork(std::vector<ClusterId> nodes, std::vector<Arc> arcs);

  std::span<const ClusterId> nodes() const noexcept { return nodes_; }
  /// Sorted by (source, target).
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  bool has_node(ClusterId id) const;
  const Arc* find_arc(ClusterId source, ClusterId target) const;
  bool has_arc(ClusterId source, ClusterId target) const {
    return find_arc(source, target) != nullptr;
  }

  bool operator==(const ClusterNetwork&) const = default;

 private:
  std::vector<ClusterId> nodes_;
  std::vector<Arc> arcs_;
};

/// Arc A->B iff the hyperlinks from A's sites to B's sites sum to >= tau;
/// the value is that sum. Unclustered sites contribute nothing.
ClusterNetwork build_flow_network(const ClusterSet& clusters,
                                  const DataMatrix& matrix, LinkCount tau);

/// One arc per cluster pair with external associations, pointing from the
/// later-created cluster to the earlier one. Value = strongest association.
ClusterNetwork build_creation_order_network(const ClusterSet& clusters);

/// Throw Error(unknown_node) when `node` is not in the network.
std::size_t out_degree(const ClusterNetwork& net, ClusterId node);
std::size_t in_degree(const ClusterNetwork& net, ClusterId node);

enum class NodeKind { isolate, transmitter, receiver, carrier };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view text);

std::map<ClusterId, NodeKind> classify_nodes(const ClusterNetwork& net);

struct DyadCensus {
  std::uint64_t mutual = 0;
  std::uint64_t asymmetric = 0;
  std::uint64_t null = 0;

  bool operator==(const DyadCensus&) const = default;
};

DyadCensus dyad_census(const ClusterNetwork& net);

/// |L| / (N (N - 1)). Throws InvalidArgument for fewer than two nodes.
double density(const ClusterNetwork& net);
/// Every ordered pair is an arc; vacuously true below two nodes.
bool is_complete(const ClusterNetwork& net);

/// Copy of `net` without the listed arcs. Throws InvalidArgument naming the
/// first pair that is not an arc.
ClusterNetwork remove_arcs(const ClusterNetwork& net, std::span<const ArcKey> cut);

/// Components of the underlying undirected graph, largest first, ties by
/// smallest member. Isolates are singleton components.
std::vector<std::vector<ClusterId>> weak_components(const ClusterNetwork& net);

/// Parses "17-9,10-6" into arc keys. Throws ParseError.
std::vector<ArcKey> parse_arc_list(std::string_view text);

struct NodeStructure {
  ClusterId id = 0;
  std::size_t out_degree = 0;
  std::size_t in_degree = 0;
  NodeKind kind = NodeKind::isolate;

  bool operator==(const NodeStructure&) const = default;
};

struct StructureReport {
  std::vector<NodeStructure> nodes;
  std::size_t arc_count = 0;
  DyadCensus census;
  std::optional<double> density;  // absent below two nodes
  bool complete = false;
  std::vector<std::vector<ClusterId>> components;
  std::vector<ArcKey> removed_arcs;

  bool operator==(const StructureReport&) const = default;
};

StructureReport structure_report(const ClusterNetwork& net);

}  // namespace cosite
