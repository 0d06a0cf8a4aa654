#include "cosite/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cosite {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Positive entries ordered by descending value, then ascending pair.
std::vector<PairEntry<double>> by_descending_value(
    const SimilarityMatrix& similarity, double floor_inclusive) {
  std::vector<PairEntry<double>> order;
  order.reserve(similarity.size());
  for (const auto& e : similarity.entries()) {
    if (e.value > 0.0 && e.value >= floor_inclusive) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.value > b.value; });
  return order;
}

void check_sites(const SimilarityMatrix& similarity, std::size_t n_sites) {
  for (const auto& e : similarity.entries()) {
    if (e.pair.second >= n_sites) {
      throw InvalidArgument("similarity pair references site " +
                            std::to_string(e.pair.second) + " but only " +
                            std::to_string(n_sites) + " sites exist");
    }
  }
}

void check_threshold(double s_min) {
  if (!(s_min > 0.0 && s_min <= 1.0)) {
    throw InvalidArgument("similarity threshold must lie in (0, 1], got " +
                          std::to_string(s_min));
  }
}

void finalize(ClusterSet& set) {
  const auto assignment = set.assignment();
  set.unclustered.clear();
  for (SiteIndex s = 0; s < set.n_sites; ++s) {
    if (!assignment[s]) set.unclustered.push_back(s);
  }
  const auto by_pair = [](const auto& a, const auto& b) { return a.pair < b.pair; };
  for (auto& c : set.clusters) {
    std::sort(c.members.begin(), c.members.end());
    std::sort(c.internal.begin(), c.internal.end(), by_pair);
    std::sort(c.external.begin(), c.external.end(), by_pair);
  }
  std::sort(set.externals.begin(), set.externals.end(), by_pair);
}

}  // namespace

std::vector<double> Cluster::values() const {
  std::vector<double> out;
  out.reserve(internal.size() + external.size());
  for (const auto& a : internal) out.push_back(a.value);
  for (const auto& a : external) out.push_back(a.value);
  return out;
}

std::vector<std::optional<ClusterId>> ClusterSet::assignment() const {
  std::vector<std::optional<ClusterId>> out(n_sites);
  for (const auto& c : clusters) {
    for (const auto m : c.members) {
      if (m < n_sites) out[m] = c.id;
    }
  }
  return out;
}

Dendrogram hac_single_linkage(const SimilarityMatrix& similarity) {
  Dendrogram d;
  if (similarity.empty()) return d;

  const auto order = by_descending_value(similarity, 0.0);
  SiteIndex max_site = 0;
  for (const auto& e : order) {
    d.leaves.push_back(e.pair.first);
    d.leaves.push_back(e.pair.second);
    max_site = std::max(max_site, e.pair.second);
  }
  std::sort(d.leaves.begin(), d.leaves.end());
  d.leaves.erase(std::unique(d.leaves.begin(), d.leaves.end()), d.leaves.end());

  // Processing pairs in (value desc, pair asc) order and skipping pairs already
  // inside one cluster yields, at every level, the merge with the smallest
  // witness among all cluster pairs at maximal linkage.
  DisjointSets sets(std::size_t{max_site} + 1);
  std::vector<DendrogramNode> node_of(std::size_t{max_site} + 1);
  for (const auto s : d.leaves) node_of[s] = DendrogramNode::leaf(s);

  for (const auto& e : order) {
    const auto ra = sets.find(e.pair.first);
    const auto rb = sets.find(e.pair.second);
    if (ra == rb) continue;
    MergeStep step;
    step.left = node_of[ra];
    step.right = node_of[rb];
    step.similarity = e.value;
    step.witness = e.pair;
    step.size = static_cast<std::uint32_t>(sets.size_of(ra) + sets.size_of(rb));
    const auto root = sets.unite(ra, rb);
    node_of[root] = DendrogramNode::merge(static_cast<std::uint32_t>(d.merges.size()));
    d.merges.push_back(step);
  }
  return d;
}

ClusterSet cut_threshold(const Dendrogram& dendrogram,
                         const SimilarityMatrix& similarity,
                         std::size_t n_sites, double s_min) {
  check_threshold(s_min);
  check_sites(similarity, n_sites);

  DisjointSets sets(n_sites);
  for (const auto& m : dendrogram.merges) {
    if (m.similarity < s_min) continue;
    if (m.witness.second >= n_sites) {
      throw InvalidArgument("dendrogram references site " +
                            std::to_string(m.witness.second) + " but only " +
                            std::to_string(n_sites) + " sites exist");
    }
    sets.unite(m.witness.first, m.witness.second);
  }

  struct Group {
    std::vector<SiteIndex> members;
    double top = 0.0;
  };
  std::vector<std::optional<std::size_t>> group_of_root(n_sites);
  std::vector<Group> groups;
  for (SiteIndex s = 0; s < n_sites; ++s) {
    if (sets.size_of(s) < 2) continue;
    const auto root = sets.find(s);
    if (!group_of_root[root]) {
      group_of_root[root] = groups.size();
      groups.emplace_back();
    }
    groups[*group_of_root[root]].members.push_back(s);
  }
  for (const auto& m : dendrogram.merges) {
    if (m.similarity < s_min) continue;
    auto& g = groups[*group_of_root[sets.find(m.witness.first)]];
    g.top = std::max(g.top, m.similarity);
  }
  // Members were appended in increasing site order, so members.front() is the
  // smallest id.
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    if (a.top != b.top) return a.top > b.top;
    return a.members.front() < b.members.front();
  });

  ClusterSet set;
  set.n_sites = n_sites;
  for (auto& g : groups) {
    Cluster c;
    c.id = static_cast<ClusterId>(set.clusters.size() + 1);
    c.members = std::move(g.members);
    set.clusters.push_back(std::move(c));
  }
  const auto assignment = set.assignment();
  for (const auto& e : similarity.entries()) {
    if (e.value < s_min) continue;
    const auto a = assignment[e.pair.first];
    const auto b = assignment[e.pair.second];
    if (a && b && *a == *b) set.clusters[*a - 1].internal.push_back({e.pair, e.value});
  }
  finalize(set);
  return set;
}

ClusterSet build_clusters_capped(const SimilarityMatrix& similarity,
                                 std::size_t n_sites, double s_min,
                                 std::size_t max_size) {
  check_threshold(s_min);
  if (max_size < 2) {
    throw InvalidArgument("max_size must be at least 2, got " +
                          std::to_string(max_size));
  }
  check_sites(similarity, n_sites);

  ClusterSet set;
  set.n_sites = n_sites;
  std::vector<std::optional<ClusterId>> assigned(n_sites);
  const auto cluster = [&](ClusterId id) -> Cluster& { return set.clusters[id - 1]; };

  for (const auto& e : by_descending_value(similarity, s_min)) {
    const auto i = e.pair.first;
    const auto j = e.pair.second;
    const auto a = assigned[i];
    const auto b = assigned[j];
    if (!a && !b) {
      Cluster c;
      c.id = static_cast<ClusterId>(set.clusters.size() + 1);
      c.members = {i, j};
      c.internal.push_back({e.pair, e.value});
      assigned[i] = assigned[j] = c.id;
      set.clusters.push_back(std::move(c));
    } else if (a && b) {
      if (*a == *b) {
        cluster(*a).internal.push_back({e.pair, e.value});
      } else {
        const ExternalAssociation ext{e.pair, e.value, *a, *b};
        cluster(*a).external.push_back(ext);
        cluster(*b).external.push_back(ext);
        set.externals.push_back(ext);
      }
    } else {
      const auto owner = a ? *a : *b;
      const auto newcomer = a ? j : i;
      auto& c = cluster(owner);
      if (c.members.size() < max_size) {
        c.members.push_back(newcomer);
        c.internal.push_back({e.pair, e.value});
        assigned[newcomer] = owner;
      }
    }
  }
  finalize(set);
  return set;
}

ClusterSet collect_external_associations(ClusterSet clusters,
                                         const SimilarityMatrix& similarity,
                                         double s_ext) {
  if (!std::isfinite(s_ext)) {
    throw InvalidArgument("external association threshold must be finite");
  }
  check_sites(similarity, clusters.n_sites);
  clusters.externals.clear();
  for (auto& c : clusters.clusters) c.external.clear();

  const auto assignment = clusters.assignment();
  for (const auto& e : similarity.entries()) {
    if (e.value < s_ext) continue;
    const auto a = assignment[e.pair.first];
    const auto b = assignment[e.pair.second];
    if (!a || !b || *a == *b) continue;
    const ExternalAssociation ext{e.pair, e.value, *a, *b};
    clusters.clusters[*a - 1].external.push_back(ext);
    clusters.clusters[*b - 1].external.push_back(ext);
    clusters.externals.push_back(ext);
  }
  finalize(clusters);
  return clusters;
}

void attach_labels(ClusterSet& clusters, const SiteRegistry& registry) {
  for (auto& c : clusters.clusters) {
    c.sites.clear();
    c.sites.reserve(c.members.size());
    for (const auto m : c.members) c.sites.push_back(registry.label(m));
  }
}

}  // namespace cosite
