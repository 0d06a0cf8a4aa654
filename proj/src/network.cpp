#include "cosite/network.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <string>

#include "cosite/error.hpp"

namespace cosite {

namespace {

std::string arc_name(ClusterId s, ClusterId t) {
  return "(" + std::to_string(s) + " -> " + std::to_string(t) + ")";
}

std::size_t node_position(const ClusterNetwork& net, ClusterId id) {
  const auto nodes = net.nodes();
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) {
    throw Error(ErrorCode::unknown_node, "unknown node " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<ClusterId> cluster_ids(const ClusterSet& clusters) {
  std::vector<ClusterId> ids;
  ids.reserve(clusters.clusters.size());
  for (const auto& c : clusters.clusters) ids.push_back(c.id);
  return ids;
}

}  // namespace

ClusterNetwork::ClusterNetwork(std::vector<ClusterId> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw InvalidArgument("duplicate node in cluster network");
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const auto& a = arcs_[k];
    if (a.source == a.target) {
      throw InvalidArgument("self arc " + arc_name(a.source, a.target));
    }
    if (!has_node(a.source) || !has_node(a.target)) {
      throw InvalidArgument("arc " + arc_name(a.source, a.target) +
                            " names a node outside the network");
    }
    if (k > 0 && arcs_[k - 1].source == a.source && arcs_[k - 1].target == a.target) {
      throw InvalidArgument("duplicate arc " + arc_name(a.source, a.target));
    }
  }
}

bool ClusterNetwork::has_node(ClusterId id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

const Arc* ClusterNetwork::find_arc(ClusterId source, ClusterId target) const {
  const auto it = std::lower_bound(
      arcs_.begin(), arcs_.end(), ArcKey{source, target},
      [](const Arc& a, const ArcKey& k) {
        return a.source != k.first ? a.source < k.first : a.target < k.second;
      });
  if (it == arcs_.end() || it->source != source || it->target != target) {
    return nullptr;
  }
  return &*it;
}

ClusterNetwork build_flow_network(const ClusterSet& clusters,
                                  const DataMatrix& matrix, LinkCount tau) {
  if (tau < 1) throw InvalidArgument("tau must be at least 1");
  if (matrix.size() < clusters.n_sites) {
    throw InvalidArgument("data matrix has fewer sites than the cluster set");
  }
  const auto assignment = clusters.assignment();

  struct Flow {
    LinkCount links = 0;
    std::uint64_t pairs = 0;
  };
  std::map<ArcKey, Flow> flows;
  for (const auto& cell : matrix.cells()) {
    if (cell.row == cell.col || cell.row >= assignment.size() ||
        cell.col >= assignment.size()) {
      continue;
    }
    const auto a = assignment[cell.row];
    const auto b = assignment[cell.col];
    if (!a || !b || *a == *b) continue;
    auto& f = flows[{*a, *b}];
    f.links += cell.count;
    ++f.pairs;
  }

  std::vector<Arc> arcs;
  for (const auto& [key, f] : flows) {
    if (f.links >= tau) {
      arcs.push_back({key.first, key.second, static_cast<double>(f.links), f.pairs});
    }
  }
  return ClusterNetwork(cluster_ids(clusters), std::move(arcs));
}

ClusterNetwork build_creation_order_network(const ClusterSet& clusters) {
  std::map<ArcKey, Arc> arcs_by_key;
  for (const auto& ext : clusters.externals) {
    const auto later = std::max(ext.first_cluster, ext.second_cluster);
    const auto earlier = std::min(ext.first_cluster, ext.second_cluster);
    if (later == earlier) continue;
    auto [it, inserted] =
        arcs_by_key.try_emplace({later, earlier}, Arc{later, earlier, ext.value, 1});
    if (!inserted) {
      it->second.value = std::max(it->second.value, ext.value);
      ++it->second.multiplicity;
    }
  }
  std::vector<Arc> arcs;
  arcs.reserve(arcs_by_key.size());
  for (const auto& [key, arc] : arcs_by_key) arcs.push_back(arc);
  return ClusterNetwork(cluster_ids(clusters), std::move(arcs));
}

std::size_t out_degree(const ClusterNetwork& net, ClusterId node) {
  node_position(net, node);
  return static_cast<std::size_t>(std::count_if(
      net.arcs().begin(), net.arcs().end(),
      [node](const Arc& a) { return a.source == node; }));
}

std::size_t in_degree(const ClusterNetwork& net, ClusterId node) {
  node_position(net, node);
  return static_cast<std::size_t>(std::count_if(
      net.arcs().begin(), net.arcs().end(),
      [node](const Arc& a) { return a.target == node; }));
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::isolate: return "isolate";
    case NodeKind::transmitter: return "transmitter";
    case NodeKind::receiver: return "receiver";
    case NodeKind::carrier: return "carrier";
  }
  return "isolate";
}

std::optional<NodeKind> node_kind_from_string(std::string_view text) {
  for (const auto kind : {NodeKind::isolate, NodeKind::transmitter,
                          NodeKind::receiver, NodeKind::carrier}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

namespace {

NodeKind kind_of(std::size_t d_out, std::size_t d_in) {
  if (d_out == 0) return d_in == 0 ? NodeKind::isolate : NodeKind::receiver;
  return d_in == 0 ? NodeKind::transmitter : NodeKind::carrier;
}

struct Degrees {
  std::vector<std::size_t> out;
  std::vector<std::size_t> in;
};

// One pass over the arcs, indexed by node position.
Degrees all_degrees(const ClusterNetwork& net) {
  Degrees d{std::vector<std::size_t>(net.node_count(), 0),
            std::vector<std::size_t>(net.node_count(), 0)};
  for (const auto& a : net.arcs()) {
    ++d.out[node_position(net, a.source)];
    ++d.in[node_position(net, a.target)];
  }
  return d;
}

}  // namespace

std::map<ClusterId, NodeKind> classify_nodes(const ClusterNetwork& net) {
  const auto d = all_degrees(net);
  std::map<ClusterId, NodeKind> kinds;
  for (std::size_t k = 0; k < net.node_count(); ++k) {
    kinds.emplace(net.nodes()[k], kind_of(d.out[k], d.in[k]));
  }
  return kinds;
}

DyadCensus dyad_census(const ClusterNetwork& net) {
  DyadCensus census;
  std::uint64_t reciprocated_arcs = 0;
  for (const auto& a : net.arcs()) {
    if (net.has_arc(a.target, a.source)) {
      ++reciprocated_arcs;
    } else {
      ++census.asymmetric;
    }
  }
  census.mutual = reciprocated_arcs / 2;
  const std::uint64_t n = net.node_count();
  const std::uint64_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  census.null = pairs - census.mutual - census.asymmetric;
  return census;
}

double density(const ClusterNetwork& net) {
  const auto n = net.node_count();
  if (n < 2) {
    throw InvalidArgument("density is undefined for fewer than two nodes");
  }
  return static_cast<double>(net.arc_count()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

bool is_complete(const ClusterNetwork& net) {
  const std::uint64_t n = net.node_count();
  return n < 2 || net.arc_count() == n * (n - 1);
}

ClusterNetwork remove_arcs(const ClusterNetwork& net, std::span<const ArcKey> cut) {
  for (const auto& [s, t] : cut) {
    if (!net.has_arc(s, t)) {
      throw InvalidArgument("cannot remove " + arc_name(s, t) + ": not an arc");
    }
  }
  std::vector<Arc> kept;
  kept.reserve(net.arc_count());
  for (const auto& a : net.arcs()) {
    const bool removed = std::any_of(cut.begin(), cut.end(), [&](const ArcKey& k) {
      return k.first == a.source && k.second == a.target;
    });
    if (!removed) kept.push_back(a);
  }
  return ClusterNetwork({net.nodes().begin(), net.nodes().end()}, std::move(kept));
}

std::vector<std::vector<ClusterId>> weak_components(const ClusterNetwork& net) {
  const auto n = net.node_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : net.arcs()) {
    const auto ra = find(node_position(net, a.source));
    const auto rb = find(node_position(net, a.target));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::map<std::size_t, std::vector<ClusterId>> by_root;
  for (std::size_t k = 0; k < n; ++k) by_root[find(k)].push_back(net.nodes()[k]);

  std::vector<std::vector<ClusterId>> components;
  components.reserve(by_root.size());
  for (auto& [root, members] : by_root) components.push_back(std::move(members));
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.front() < b.front();
                   });
  return components;
}

std::vector<ArcKey> parse_arc_list(std::string_view text) {
  std::vector<ArcKey> arcs;
  const auto parse_id = [](std::string_view s, std::string_view item) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    ClusterId value = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end) {
      throw ParseError(0, "malformed arc '" + std::string(item) +
                              "': expected SOURCE-TARGET");
    }
    return value;
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.find_first_not_of(' ') == std::string_view::npos) {
      if (comma == text.size()) break;
      throw ParseError(0, "empty entry in arc list");
    }
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      throw ParseError(0, "malformed arc '" + std::string(item) +
                              "': expected SOURCE-TARGET");
    }
    arcs.emplace_back(parse_id(item.substr(0, dash), item),
                      parse_id(item.substr(dash + 1), item));
  }
  return arcs;
}

StructureReport structure_report(const ClusterNetwork& net) {
  StructureReport report;
  const auto d = all_degrees(net);
  for (std::size_t k = 0; k < net.node_count(); ++k) {
    report.nodes.push_back(
        {net.nodes()[k], d.out[k], d.in[k], kind_of(d.out[k], d.in[k])});
  }
  report.arc_count = net.arc_count();
  report.census = dyad_census(net);
  if (net.node_count() >= 2) report.density = density(net);
  report.complete = is_complete(net);
  report.components = weak_components(net);
  return report;
}

}  // namespace cosite
