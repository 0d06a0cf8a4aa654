#pragma once

// Text serializations. Everything is emitted in sorted order so identical
// inputs give byte-identical output.

#include <optional>
#include <string>
#include <string_view>

#include "cosite/cluster.hpp"
#include "cosite/cooccurrence.hpp"
#include "cosite/ingest.hpp"
#include "cosite/network.hpp"

namespace cosite {

enum class ExportFormat { dot, graphml, json, csv };
enum class LabelMode { rank, members };

std::string_view to_string(ExportFormat format);
std::string_view to_string(LabelMode mode);
std::optional<ExportFormat> export_format_from_string(std::string_view text);
std::optional<LabelMode> label_mode_from_string(std::string_view text);

struct ExportOptions {
  ExportFormat format = ExportFormat::dot;
  bool include_values = true;
  LabelMode label_mode = LabelMode::rank;
};

// `clusters` supplies member labels; it is required when
// label_mode == members (InvalidArgument otherwise).
std::string to_dot(const ClusterNetwork& net, const ExportOptions& opts,
                   const ClusterSet* clusters = nullptr);
std::string to_graphml(const ClusterNetwork& net, const ExportOptions& opts,
                       const ClusterSet* clusters = nullptr);
/// `source,target,value,multiplicity` rows.
std::string to_csv(const ClusterNetwork& net, const ExportOptions& opts);
/// Lossless: network_from_json(to_json(x)) == x.
std::string to_json(const ClusterNetwork& net);
ClusterNetwork network_from_json(std::string_view text);

/// Dispatches on opts.format.
std::string export_network(const ClusterNetwork& net, const ExportOptions& opts,
                           const ClusterSet* clusters = nullptr);

/// `i,j,Cij` / `i,j,Eij` with site labels, one row per stored pair.
std::string matrices_csv(const CooccurrenceMatrix& co, const SiteRegistry& registry);
std::string matrices_csv(const SimilarityMatrix& sim, const SiteRegistry& registry);
SimilarityMatrix similarity_from_csv(std::string_view text,
                                     const SiteRegistry& registry);

std::string to_json(const ClusterSet& clusters);
ClusterSet clusters_from_json(std::string_view text);

std::string to_json(const AccountingReport& report);
AccountingReport accounting_from_json(std::string_view text);

std::string to_json(const StructureReport& report);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace cosite
