#pragma once

// Single-linkage agglomeration over the equivalence index, and extraction of
// clusters of co-sites.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosite/cooccurrence.hpp"

namespace cosite {

/// Creation rank of a cluster, 1-based.
using ClusterId = std::uint32_t;

/// Child of a merge: either a leaf site or the result of an earlier merge.
struct DendrogramNode {
  enum class Kind : std::uint8_t { leaf, merge };
  Kind kind = Kind::leaf;
  std::uint32_t index = 0;  // SiteIndex for leaves, merge position otherwise

  static DendrogramNode leaf(SiteIndex site) { return {Kind::leaf, site}; }
  static DendrogramNode merge(std::uint32_t step) { return {Kind::merge, step}; }

  bool operator==(const DendrogramNode&) const = default;
};

struct MergeStep {
  DendrogramNode left;   // subtree holding witness.first
  DendrogramNode right;  // subtree holding witness.second
  double similarity = 0.0;
  // Lexicographically smallest cross pair realizing `similarity`.
  SitePair witness;
  std::uint32_t size = 0;  // leaves under the merged node

  bool operator==(const MergeStep&) const = default;
};

struct Dendrogram {
  std::vector<SiteIndex> leaves;  // sites with at least one positive E, sorted
  std::vector<MergeStep> merges;  // non-increasing similarity

  bool operator==(const Dendrogram&) const = default;
};

/// Repeatedly merges the two clusters with maximal single-linkage similarity.
/// Ties go to the lexicographically smallest witness pair. Stops when no
/// positive cross similarity remains, so the result may be a forest.
Dendrogram hac_single_linkage(const SimilarityMatrix& similarity);

struct Association {
  SitePair pair;
  double value = 0.0;

  bool operator==(const Association&) const = default;
};

struct ExternalAssociation {
  SitePair pair;
  double value = 0.0;
  ClusterId first_cluster = 0;   // cluster of pair.first
  ClusterId second_cluster = 0;  // cluster of pair.second

  ClusterId peer_of(ClusterId self) const {
    return self == first_cluster ? second_cluster : first_cluster;
  }

  bool operator==(const ExternalAssociation&) const = default;
};

// The five information sets of a cluster: components, internal associations,
// external associations, association values, and the clustered sites.
// Components and sites are both realized over the member sites; `sites` holds
// their labels once attach_labels() has run.
struct Cluster {
  ClusterId id = 0;
  std::vector<SiteIndex> members;              // sorted
  std::vector<Association> internal;           // sorted by pair
  std::vector<ExternalAssociation> external;   // sorted by pair
  std::vector<std::string> sites;              // labels, parallel to members

  const std::vector<SiteIndex>& components() const { return members; }
  /// Internal values followed by external values.
  std::vector<double> values() const;

  bool operator==(const Cluster&) const = default;
};

struct ClusterSet {
  std::size_t n_sites = 0;
  std::vector<Cluster> clusters;  // ordered by creation rank; clusters[k].id == k + 1
  std::vector<SiteIndex> unclustered;
  std::vector<ExternalAssociation> externals;

  /// Cluster id per site, nullopt for unclustered sites.
  std::vector<std::optional<ClusterId>> assignment() const;

  bool operator==(const ClusterSet&) const = default;
};

/// Components of the merges with similarity >= s_min; singletons are reported
/// as unclustered. Ranks follow each cluster's strongest internal merge
/// (descending), ties by smallest member. Internal associations are the pairs
/// of E at or above s_min inside a cluster.
/// Throws InvalidArgument unless 0 < s_min <= 1.
ClusterSet cut_threshold(const Dendrogram& dendrogram,
                         const SimilarityMatrix& similarity,
                         std::size_t n_sites, double s_min);

/// Streaming agglomeration over pairs in descending E with a cluster size cap.
/// Throws InvalidArgument unless max_size >= 2.
ClusterSet build_clusters_capped(const SimilarityMatrix& similarity,
                                 std::size_t n_sites, double s_min,
                                 std::size_t max_size);

/// Replaces the external associations with every pair of E >= s_ext whose
/// endpoints lie in two different clusters.
ClusterSet collect_external_associations(ClusterSet clusters,
                                         const SimilarityMatrix& similarity,
                                         double s_ext);

/// Fills Cluster::sites from the registry.
void attach_labels(ClusterSet& clusters, const SiteRegistry& registry);

}  // namespace cosite
