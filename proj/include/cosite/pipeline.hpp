#pragma once

// Stage orchestration with persisted plain-text intermediates.
//
// Artifacts, all under PipelineConfig::out_dir:
//   ingest   edges            -> matrix.tsv, accounting.json
//   cosite   matrix.tsv       -> cooccurrence.csv, similarity.csv
//   cluster  matrix.tsv, similarity.csv -> clusters.json
//   network  matrix.tsv, clusters.json  -> network.json
//   report   accounting, network.json   -> structure.json, report.json
//   export   network.json, clusters.json -> network.<format>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cosite/export.hpp"
#include "cosite/network.hpp"

namespace cosite {

enum class ClusterMode { threshold, capped };
enum class NetMode { flow, creation };

struct PipelineConfig {
  double min_sim = 0.1;
  std::size_t max_size = 10;
  std::optional<double> ext_threshold;  // defaults to min_sim
  ClusterMode mode = ClusterMode::threshold;
  NetMode net_mode = NetMode::flow;
  LinkCount tau = 1;

  std::filesystem::path edges;
  std::filesystem::path out_dir = ".";
  std::vector<ArcKey> remove_arcs;
  std::filesystem::path remove_arcs_file;
  unsigned threads = 0;  // 0 = hardware concurrency
  ExportFormat format = ExportFormat::dot;
  bool include_values = true;
  LabelMode label_mode = LabelMode::rank;
  std::optional<std::uint64_t> pages;

  double effective_ext_threshold() const { return ext_threshold.value_or(min_sim); }

  /// Assigns one `key=value` setting; keys mirror the field names.
  /// Throws ConfigError for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  /// Current value of `key` as text. Throws ConfigError for unknown keys.
  std::string get(std::string_view key) const;
  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Applies a flat `key=value` file (`#` comments, blank lines ignored).
void apply_config_text(PipelineConfig& config, std::string_view text);
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);

const std::vector<std::string_view>& stage_names();

namespace artifact {
inline constexpr std::string_view matrix = "matrix.tsv";
inline constexpr std::string_view accounting = "accounting.json";
inline constexpr std::string_view cooccurrence = "cooccurrence.csv";
inline constexpr std::string_view similarity = "similarity.csv";
inline constexpr std::string_view clusters = "clusters.json";
inline constexpr std::string_view network = "network.json";
inline constexpr std::string_view structure = "structure.json";
inline constexpr std::string_view report = "report.json";
}  // namespace artifact

void run_ingest(const PipelineConfig& config);
void run_cosite(const PipelineConfig& config);
void run_cluster(const PipelineConfig& config);
void run_network(const PipelineConfig& config);
void run_report(const PipelineConfig& config);
void run_export(const PipelineConfig& config);
/// ingest, cosite, cluster, network, report, export in sequence.
void run_pipeline(const PipelineConfig& config);

/// Validates the config and dispatches by stage name. Throws ConfigError for
/// an unknown stage.
void run_stage(std::string_view stage, const PipelineConfig& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace cosite
