#include "cosite/cooccurrence.hpp"

#include <atomic>
#include <thread>

namespace cosite {

namespace {

// Row i of C: for every linker k of i, every other site j > i that k links to.
// `acc` and `touched` are per-worker scratch of size n.
void cooccurrence_row(SiteIndex i, const LinkerSets& linkers,
                      const std::vector<std::vector<SiteIndex>>& out_links,
                      std::vector<std::uint32_t>& acc,
                      std::vector<SiteIndex>& touched,
                      std::vector<PairEntry<std::uint32_t>>& row_out) {
  touched.clear();
  for (const auto k : linkers[i]) {
    const auto& targets = out_links[k];
    auto it = std::upper_bound(targets.begin(), targets.end(), i);
    for (; it != targets.end(); ++it) {
      if (acc[*it]++ == 0) touched.push_back(*it);
    }
  }
  std::sort(touched.begin(), touched.end());
  row_out.clear();
  row_out.reserve(touched.size());
  for (const auto j : touched) {
    row_out.push_back({SitePair{i, j}, acc[j]});
    acc[j] = 0;
  }
}

}  // namespace

LinkerSets linker_sets(const DataMatrix& matrix) {
  LinkerSets sets(matrix.size());
  // Row-major iteration visits linkers k in increasing order, so each L(i)
  // comes out sorted.
  for (const auto& cell : matrix.cells()) {
    if (cell.row != cell.col && cell.count > 0) {
      sets[cell.col].push_back(cell.row);
    }
  }
  return sets;
}

CooccurrenceModel cooccurrence(const LinkerSets& linkers, unsigned threads) {
  const auto n = linkers.size();
  CooccurrenceModel model;
  model.occurrence.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.occurrence[i] = static_cast<std::uint32_t>(linkers[i].size());
  }

  // out_links[k] = sorted sites that k links to (transpose of L).
  std::vector<std::vector<SiteIndex>> out_links(n);
  for (SiteIndex i = 0; i < n; ++i) {
    for (const auto k : linkers[i]) out_links[k].push_back(i);
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::vector<std::vector<PairEntry<std::uint32_t>>> rows(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    std::vector<std::uint32_t> acc(n, 0);
    std::vector<SiteIndex> touched;
    for (std::size_t i = next++; i < n; i = next++) {
      cooccurrence_row(static_cast<SiteIndex>(i), linkers, out_links, acc,
                       touched, rows[i]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::size_t total = 0;
  for (const auto& row : rows) total += row.size();
  std::vector<PairEntry<std::uint32_t>> entries;
  entries.reserve(total);
  for (auto& row : rows) {
    entries.insert(entries.end(), row.begin(), row.end());
    row = {};
  }
  model.cooccurrence = CooccurrenceMatrix(std::move(entries));
  return model;
}

SimilarityMatrix equivalence(const OccurrenceVector& occurrence,
                             const CooccurrenceMatrix& cooccurrence) {
  std::vector<PairEntry<double>> entries;
  entries.reserve(cooccurrence.size());
  for (const auto& [pair, c] : cooccurrence.entries()) {
    if (c == 0) continue;
    if (pair.second >= occurrence.size()) {
      throw Error(ErrorCode::consistency,
                  "co-occurrence pair references site " +
                      std::to_string(pair.second) + " beyond occurrence vector");
    }
    const std::uint64_t ci = occurrence[pair.first];
    const std::uint64_t cj = occurrence[pair.second];
    if (ci == 0 || cj == 0) {
      throw Error(ErrorCode::consistency,
                  "pair (" + std::to_string(pair.first) + "," +
                      std::to_string(pair.second) +
                      ") co-occurs but has a zero occurrence");
    }
    // Exact integer numerator and denominator, one rounding in the division:
    // equal ratios always map to the same double.
    const std::uint64_t numerator = std::uint64_t{c} * c;
    entries.push_back({pair, static_cast<double>(numerator) /
                                 static_cast<double>(ci * cj)});
  }
  return SimilarityMatrix(std::move(entries));
}

}  // namespace cosite
