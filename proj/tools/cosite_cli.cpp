// cosite: command-line driver over the C API.
//
//   cosite <stage> [--config FILE] [flags...]
//
// Exit codes: 0 ok, 1 internal error, 2 missing file, 3 parse error,
// 4 invalid configuration or usage, 5 invalid argument (e.g. removing an arc
// that does not exist).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cosite/cosite.h"

namespace {

constexpr int kUsageExit = COSITE_ERR_CONFIG;

struct ConfigDeleter {
  void operator()(cosite_config* c) const { cosite_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<cosite_config, ConfigDeleter>;

int report_failure(cosite_status status) {
  std::cerr << "cosite: " << cosite_status_string(status) << ": "
            << cosite_last_error() << "\n";
  return static_cast<int>(status);
}

std::string config_value(const cosite_config* config, const char* key) {
  size_t needed = 0;
  cosite_config_get(config, key, nullptr, 0, &needed);
  std::string value(needed, '\0');
  if (cosite_config_get(config, key, value.data(), value.size(), &needed) != COSITE_OK) {
    return {};
  }
  value.resize(needed - 1);
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-site analysis: hyperlink counts to clusters to cluster networks"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_file;
  app.add_option("--config", config_file, "Flat key=value config file (flags override it)");

  // Flag name -> config key. Only flags given on the command line are applied.
  const std::vector<std::pair<std::string, std::string>> keyed_flags = {
      {"--edges", "edges"},
      {"--out-dir", "out_dir"},
      {"--min-sim", "min_sim"},
      {"--max-size", "max_size"},
      {"--ext-threshold", "ext_threshold"},
      {"--mode", "mode"},
      {"--net-mode", "net_mode"},
      {"--tau", "tau"},
      {"--remove-arcs", "remove_arcs"},
      {"--remove-arcs-file", "remove_arcs_file"},
      {"--threads", "threads"},
      {"--format", "format"},
      {"--label-mode", "label_mode"},
      {"--pages", "pages"},
  };
  const std::map<std::string, std::string> help = {
      {"edges", "Edge list: source TAB target [TAB count]"},
      {"out_dir", "Directory for intermediate and final artifacts"},
      {"min_sim", "Clustering similarity threshold, in (0, 1] (default 0.1)"},
      {"max_size", "Cluster size cap in capped mode (default 10)"},
      {"ext_threshold", "External association threshold (default min_sim)"},
      {"mode", "Cluster extraction: threshold | capped"},
      {"net_mode", "Arc construction: flow | creation"},
      {"tau", "Minimum hyperlink flow for an arc in flow mode (default 1)"},
      {"remove_arcs", "Arcs to cut before the structure report, e.g. 17-9,10-6"},
      {"remove_arcs_file", "JSON file with arcs to cut: [[17,9],[10,6]]"},
      {"threads", "Worker threads for co-occurrence (0 = all cores)"},
      {"format", "Export format: dot | graphml | json | csv"},
      {"label_mode", "Export node labels: rank | members"},
      {"pages", "Page count metadata recorded in the accounting report"},
  };
  std::map<std::string, std::string> values;
  for (const auto& [flag, key] : keyed_flags) {
    app.add_option(flag, values[key], help.at(key));
  }
  bool no_values = false;
  app.add_flag("--no-values", no_values, "Omit arc values from exports");

  const std::vector<std::pair<std::string, std::string>> stages = {
      {"ingest", "Parse the edge list; write matrix.tsv and accounting.json"},
      {"cosite", "Compute co-occurrence and similarity matrices"},
      {"cluster", "Single-linkage clustering; write clusters.json"},
      {"network", "Build the cluster network; write network.json"},
      {"report", "Print accounting and structure reports"},
      {"export", "Write the network as DOT, GraphML, JSON or CSV"},
      {"pipeline", "Run every stage in order"},
  };
  for (const auto& [name, description] : stages) app.add_subcommand(name, description);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }
  const std::string stage = app.get_subcommands().front()->get_name();

  cosite_config* raw = nullptr;
  if (const auto s = cosite_config_create(&raw); s != COSITE_OK) return report_failure(s);
  ConfigPtr config(raw);

  if (!config_file.empty()) {
    if (const auto s = cosite_config_load_file(config.get(), config_file.c_str());
        s != COSITE_OK) {
      return report_failure(s);
    }
  }
  for (const auto& [flag, key] : keyed_flags) {
    if (app.count(flag) == 0) continue;
    if (const auto s = cosite_config_set(config.get(), key.c_str(), values[key].c_str());
        s != COSITE_OK) {
      return report_failure(s);
    }
  }
  if (no_values) cosite_config_set(config.get(), "include_values", "false");

  if (const auto s = cosite_run_stage(config.get(), stage.c_str()); s != COSITE_OK) {
    return report_failure(s);
  }

  if (stage == "report" || stage == "pipeline") {
    auto out_dir = config_value(config.get(), "out_dir");
    if (out_dir.empty()) out_dir = ".";
    std::ifstream in(out_dir + "/report.json", std::ios::binary);
    if (!in) {
      std::cerr << "cosite: report.json missing from " << out_dir << "\n";
      return COSITE_ERR_FILE_NOT_FOUND;
    }
    std::cout << in.rdbuf();
  }
  return 0;
}
