#pragma once

// Hyperlink edge lists -> site registry + sparse N-square data matrix.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cosite {

using SiteIndex = std::uint32_t;
using LinkCount = std::uint64_t;

/// One line of an edge list: `source TAB target [TAB count]`.
struct EdgeRecord {
  std::string source;
  std::string target;
  LinkCount count = 1;

  bool operator==(const EdgeRecord&) const = default;
};

/// Case-folds ASCII letters and trims surrounding whitespace.
std::string normalize_label(std::string_view label);

/// Dense handles 0..N-1 in order of first appearance.
class SiteRegistry {
 public:
  /// Returns the handle of `label` (normalized), registering it if new.
  SiteIndex intern(std::string_view label);
  std::optional<SiteIndex> find(std::string_view label) const;

  const std::string& label(SiteIndex id) const { return labels_.at(id); }
  std::span<const std::string> labels() const { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  bool operator==(const SiteRegistry& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, SiteIndex> index_;
};

struct MatrixCell {
  SiteIndex row;
  SiteIndex col;
  LinkCount count;

  bool operator==(const MatrixCell&) const = default;
};

// Sparse D: row = linking (source) site, col = linked (target) site.
// Absent cells are zero; the diagonal holds self-links.
class DataMatrix {
 public:
  DataMatrix() = default;
  /// Sums duplicate cells and drops zero counts. Throws InvalidArgument when a
  /// cell lies outside [0, n).
  DataMatrix(std::size_t n, std::vector<MatrixCell> cells);

  std::size_t size() const noexcept { return n_; }
  LinkCount at(SiteIndex row, SiteIndex col) const;

  /// Non-zero cells in row-major order.
  std::span<const MatrixCell> cells() const noexcept { return cells_; }
  std::span<const MatrixCell> row(SiteIndex row) const;

  bool operator==(const DataMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<MatrixCell> cells_;
  std::vector<std::size_t> row_offsets_;
};

struct SiteData {
  SiteRegistry registry;
  DataMatrix matrix;
};

/// Throws ParseError carrying the 1-based line number.
std::vector<EdgeRecord> parse_edge_list(std::string_view text);
std::vector<EdgeRecord> parse_edge_list(std::istream& in);

/// Duplicate (source, target) pairs are summed; self-links land on the
/// diagonal.
SiteData build_data_matrix(std::span<const EdgeRecord> records);

/// Serializes D back to edge-list form. Lines are ordered so that re-parsing
/// reproduces the registry order, then the remaining cells row-major.
std::string write_edge_list(const SiteData& data);

struct AccountingReport {
  std::uint64_t n_sites = 0;
  LinkCount total_links = 0;
  LinkCount directed_links = 0;
  LinkCount self_links = 0;
  std::uint32_t directed_pct = 0;
  std::uint32_t self_pct = 0;
  bool empty = true;
  // Page count from the optional metadata sidecar; never used in computation.
  std::optional<std::uint64_t> pages;

  bool operator==(const AccountingReport&) const = default;
};

/// Off-diagonal / diagonal sums with percentages rounded half-up.
AccountingReport accounting(const DataMatrix& matrix);

}  // namespace cosite
