#include "cosite/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

#include "cosite/error.hpp"

namespace cosite {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

LinkCount parse_count(std::string_view field, std::size_t line_no) {
  const auto digits = trim(field);
  if (digits.empty()) throw ParseError(line_no, "empty count field");
  LinkCount value = 0;
  const auto* end = digits.data() + digits.size();
  const auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line_no, "count out of range: '" + std::string(digits) + "'");
  }
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line_no, "non-integer count: '" + std::string(digits) + "'");
  }
  if (value == 0) throw ParseError(line_no, "zero count");
  return value;
}

std::string parse_label(std::string_view field, std::size_t line_no,
                        const char* which) {
  auto label = normalize_label(field);
  if (label.empty()) {
    throw ParseError(line_no, std::string("empty ") + which + " label");
  }
  return label;
}

}  // namespace

std::string normalize_label(std::string_view label) {
  const auto trimmed = trim(label);
  std::string out(trimmed);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

SiteIndex SiteRegistry::intern(std::string_view label) {
  auto key = normalize_label(label);
  const auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<SiteIndex>(labels_.size());
  labels_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<SiteIndex> SiteRegistry::find(std::string_view label) const {
  const auto it = index_.find(normalize_label(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DataMatrix::DataMatrix(std::size_t n, std::vector<MatrixCell> cells) : n_(n) {
  for (const auto& cell : cells) {
    if (cell.row >= n || cell.col >= n) {
      throw InvalidArgument("matrix cell (" + std::to_string(cell.row) + "," +
                            std::to_string(cell.col) + ") outside " +
                            std::to_string(n) + "-square matrix");
    }
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  cells_.reserve(cells.size());
  for (const auto& cell : cells) {
    if (cell.count == 0) continue;
    if (!cells_.empty() && cells_.back().row == cell.row &&
        cells_.back().col == cell.col) {
      cells_.back().count += cell.count;
    } else {
      cells_.push_back(cell);
    }
  }
  row_offsets_.assign(n_ + 1, 0);
  for (const auto& cell : cells_) ++row_offsets_[cell.row + 1];
  for (std::size_t i = 0; i < n_; ++i) row_offsets_[i + 1] += row_offsets_[i];
}

std::span<const MatrixCell> DataMatrix::row(SiteIndex row) const {
  if (row >= n_) return {};
  return std::span<const MatrixCell>(cells_).subspan(
      row_offsets_[row], row_offsets_[row + 1] - row_offsets_[row]);
}

LinkCount DataMatrix::at(SiteIndex row, SiteIndex col) const {
  const auto cells = this->row(row);
  const auto it = std::lower_bound(
      cells.begin(), cells.end(), col,
      [](const MatrixCell& c, SiteIndex value) { return c.col < value; });
  return (it != cells.end() && it->col == col) ? it->count : 0;
}

std::vector<EdgeRecord> parse_edge_list(std::string_view text) {
  std::vector<EdgeRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (!line.empty() && line.front() == '#') continue;
    if (trim(line).empty()) continue;

    auto fields = split_tabs(line);
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(line_no, "expected 2 or 3 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    EdgeRecord record;
    record.source = parse_label(fields[0], line_no, "source");
    record.target = parse_label(fields[1], line_no, "target");
    if (fields.size() == 3) record.count = parse_count(fields[2], line_no);
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<EdgeRecord> parse_edge_list(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return parse_edge_list(std::string_view(text));
}

SiteData build_data_matrix(std::span<const EdgeRecord> records) {
  SiteData data;
  std::vector<MatrixCell> cells;
  cells.reserve(records.size());
  for (const auto& record : records) {
    const auto source = data.registry.intern(record.source);
    const auto target = data.registry.intern(record.target);
    cells.push_back({source, target, record.count});
  }
  data.matrix = DataMatrix(data.registry.size(), std::move(cells));
  return data;
}

std::string write_edge_list(const SiteData& data) {
  const auto& matrix = data.matrix;
  const auto n = matrix.size();
  const auto cells = matrix.cells();

  // Column index so that in-links of a site can be scanned.
  std::vector<std::vector<std::size_t>> by_col(n);
  for (std::size_t k = 0; k < cells.size(); ++k) by_col[cells[k].col].push_back(k);

  std::vector<bool> seen(n, false);
  std::vector<bool> emitted(cells.size(), false);
  std::vector<std::size_t> order;
  order.reserve(cells.size());

  // A line may introduce site m only if every other site it names is either
  // already seen or is m + 1 named after m.
  for (SiteIndex m = 0; m < n; ++m) {
    if (seen[m]) continue;
    std::optional<std::size_t> best;
    const auto consider = [&](std::size_t k) {
      const auto& c = cells[k];
      const SiteIndex other = c.row == m ? c.col : c.row;
      const bool ok = other == m || seen[other] ||
                      (c.row == m && other == m + 1 && !seen[other]);
      if (!ok) return;
      if (!best || c.row < cells[*best].row ||
          (c.row == cells[*best].row && c.col < cells[*best].col)) {
        best = k;
      }
    };
    for (const auto& cell : matrix.row(m)) {
      consider(static_cast<std::size_t>(&cell - cells.data()));
    }
    for (const auto k : by_col[m]) consider(k);
    if (!best) {
      throw Error(ErrorCode::consistency,
                  "site '" + data.registry.label(m) + "' has no hyperlinks");
    }
    emitted[*best] = true;
    order.push_back(*best);
    seen[cells[*best].row] = true;
    seen[cells[*best].col] = true;
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!emitted[k]) order.push_back(k);
  }

  std::string out;
  for (const auto k : order) {
    const auto& c = cells[k];
    out += data.registry.label(c.row);
    out += '\t';
    out += data.registry.label(c.col);
    out += '\t';
    out += std::to_string(c.count);
    out += '\n';
  }
  return out;
}

AccountingReport accounting(const DataMatrix& matrix) {
  AccountingReport report;
  report.n_sites = matrix.size();
  for (const auto& cell : matrix.cells()) {
    if (cell.row == cell.col) {
      report.self_links += cell.count;
    } else {
      report.directed_links += cell.count;
    }
  }
  report.total_links = report.directed_links + report.self_links;
  report.empty = report.total_links == 0;
  if (!report.empty) {
    using Wide = unsigned __int128;
    const auto half_up = [total = Wide{report.total_links}](LinkCount part) {
      return static_cast<std::uint32_t>((Wide{200} * part + total) /
                                        (Wide{2} * total));
    };
    report.directed_pct = half_up(report.directed_links);
    report.self_pct = half_up(report.self_links);
  }
  return report;
}

}  // namespace cosite
