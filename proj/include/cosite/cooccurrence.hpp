#pragma once

// Co-site computation: who links to whom, how often two sites are linked
// together by third sites, and the equivalence index over those counts.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cosite/error.hpp"
#include "cosite/ingest.hpp"

namespace cosite {

/// Unordered site pair, stored with `first < second`.
struct SitePair {
  SiteIndex first = 0;
  SiteIndex second = 0;

  static SitePair of(SiteIndex a, SiteIndex b) {
    return a < b ? SitePair{a, b} : SitePair{b, a};
  }

  auto operator<=>(const SitePair&) const = default;
};

template <typename Value>
struct PairEntry {
  SitePair pair;
  Value value;

  bool operator==(const PairEntry&) const = default;
};

// Symmetric, diagonal-free sparse matrix keyed on unordered pairs. Entries are
// kept sorted by pair, so iteration order is deterministic.
template <typename Value>
class SparsePairMatrix {
 public:
  using Entry = PairEntry<Value>;

  SparsePairMatrix() = default;

  /// `entries` must be strictly increasing by pair with first < second.
  explicit SparsePairMatrix(std::vector<Entry> entries)
      : entries_(std::move(entries)) {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      const auto& p = entries_[k].pair;
      if (p.first >= p.second) {
        throw InvalidArgument("pair matrix entry (" + std::to_string(p.first) +
                              "," + std::to_string(p.second) +
                              ") is diagonal or unordered");
      }
      if (k > 0 && !(entries_[k - 1].pair < p)) {
        throw InvalidArgument("pair matrix entries not strictly sorted");
      }
    }
  }

  /// Zero for absent pairs, including i == j.
  Value at(SiteIndex i, SiteIndex j) const {
    if (i == j) return Value{};
    const auto key = SitePair::of(i, j);
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), key,
        [](const Entry& e, const SitePair& k) { return e.pair < k; });
    return (it != entries_.end() && it->pair == key) ? it->value : Value{};
  }

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  bool operator==(const SparsePairMatrix&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// L(i): sorted ids of the sites k != i with D[k][i] > 0.
using LinkerSets = std::vector<std::vector<SiteIndex>>;
/// C(i) = |L(i)|.
using OccurrenceVector = std::vector<std::uint32_t>;
/// C(ij): number of other sites linking to both i and j.
using CooccurrenceMatrix = SparsePairMatrix<std::uint32_t>;
/// E(ij) = C(ij)^2 / (C(i) C(j)), in [0, 1].
using SimilarityMatrix = SparsePairMatrix<double>;

struct CooccurrenceModel {
  OccurrenceVector occurrence;
  CooccurrenceMatrix cooccurrence;
};

/// Binarizes D's off-diagonal; link multiplicity is discarded.
LinkerSets linker_sets(const DataMatrix& matrix);

/// Counts, for every pair {i, j}, the linking sites common to L(i) and L(j).
/// Because i is never in L(i), the count already excludes both endpoints.
/// Work is split across `threads` workers (0 = hardware concurrency); the
/// result does not depend on the thread count.
CooccurrenceModel cooccurrence(const LinkerSets& linkers, unsigned threads = 1);

/// Throws Error(consistency) when a listed pair has a zero occurrence.
SimilarityMatrix equivalence(const OccurrenceVector& occurrence,
                             const CooccurrenceMatrix& cooccurrence);

}  // namespace cosite
