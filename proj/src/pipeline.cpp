#include "cosite/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cosite/error.hpp"
#include "json.hpp"

namespace cosite {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value for " + std::string(key) + ": '" +
                      std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean for " + std::string(key) + ": '" +
                    std::string(value) + "'");
}

std::string arc_list_text(const std::vector<ArcKey>& arcs) {
  std::string out;
  for (const auto& [s, t] : arcs) {
    if (!out.empty()) out += ',';
    out += std::to_string(s) + "-" + std::to_string(t);
  }
  return out;
}

fs::path in_out_dir(const PipelineConfig& config, std::string_view name) {
  return config.out_dir / fs::path(std::string(name));
}

SiteData load_site_data(const PipelineConfig& config) {
  const auto text = read_text_file(in_out_dir(config, artifact::matrix));
  return build_data_matrix(parse_edge_list(std::string_view(text)));
}

ClusterSet load_clusters(const PipelineConfig& config) {
  return clusters_from_json(read_text_file(in_out_dir(config, artifact::clusters)));
}

ClusterNetwork load_network(const PipelineConfig& config) {
  return network_from_json(read_text_file(in_out_dir(config, artifact::network)));
}

std::vector<ArcKey> arcs_from_json_file(const fs::path& path) {
  const auto text = read_text_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
  std::vector<ArcKey> arcs;
  try {
    for (const auto& item : j) {
      if (item.is_array()) {
        if (item.size() != 2) throw ParseError(0, path.string() + ": arcs are [source, target]");
        arcs.emplace_back(item.at(0).get<ClusterId>(), item.at(1).get<ClusterId>());
      } else {
        arcs.emplace_back(item.at("source").get<ClusterId>(),
                          item.at("target").get<ClusterId>());
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
  return arcs;
}

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "min_sim") {
    min_sim = parse_number<double>(key, value);
  } else if (key == "max_size") {
    max_size = parse_number<std::size_t>(key, value);
  } else if (key == "ext_threshold") {
    if (value.empty()) {
      ext_threshold.reset();
    } else {
      ext_threshold = parse_number<double>(key, value);
    }
  } else if (key == "mode") {
    if (value == "threshold") {
      mode = ClusterMode::threshold;
    } else if (value == "capped") {
      mode = ClusterMode::capped;
    } else {
      throw ConfigError("mode must be 'threshold' or 'capped', got '" + std::string(value) + "'");
    }
  } else if (key == "net_mode") {
    if (value == "flow") {
      net_mode = NetMode::flow;
    } else if (value == "creation") {
      net_mode = NetMode::creation;
    } else {
      throw ConfigError("net_mode must be 'flow' or 'creation', got '" + std::string(value) + "'");
    }
  } else if (key == "tau") {
    tau = parse_number<LinkCount>(key, value);
  } else if (key == "edges") {
    edges = fs::path(std::string(value));
  } else if (key == "out_dir") {
    out_dir = value.empty() ? fs::path(".") : fs::path(std::string(value));
  } else if (key == "remove_arcs") {
    try {
      remove_arcs = parse_arc_list(value);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("remove_arcs: ") + e.what());
    }
  } else if (key == "remove_arcs_file") {
    remove_arcs_file = fs::path(std::string(value));
  } else if (key == "threads") {
    threads = parse_number<unsigned>(key, value);
  } else if (key == "format") {
    const auto f = export_format_from_string(value);
    if (!f) throw ConfigError("format must be dot, graphml, json or csv, got '" + std::string(value) + "'");
    format = *f;
  } else if (key == "include_values") {
    include_values = parse_bool(key, value);
  } else if (key == "label_mode") {
    const auto m = label_mode_from_string(value);
    if (!m) throw ConfigError("label_mode must be 'rank' or 'members', got '" + std::string(value) + "'");
    label_mode = *m;
  } else if (key == "pages") {
    if (value.empty()) {
      pages.reset();
    } else {
      pages = parse_number<std::uint64_t>(key, value);
    }
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::string PipelineConfig::get(std::string_view key) const {
  if (key == "min_sim") return format_double(min_sim);
  if (key == "max_size") return std::to_string(max_size);
  if (key == "ext_threshold") return ext_threshold ? format_double(*ext_threshold) : "";
  if (key == "mode") return mode == ClusterMode::threshold ? "threshold" : "capped";
  if (key == "net_mode") return net_mode == NetMode::flow ? "flow" : "creation";
  if (key == "tau") return std::to_string(tau);
  if (key == "edges") return edges.string();
  if (key == "out_dir") return out_dir.string();
  if (key == "remove_arcs") return arc_list_text(remove_arcs);
  if (key == "remove_arcs_file") return remove_arcs_file.string();
  if (key == "threads") return std::to_string(threads);
  if (key == "format") return std::string(to_string(format));
  if (key == "include_values") return include_values ? "true" : "false";
  if (key == "label_mode") return std::string(to_string(label_mode));
  if (key == "pages") return pages ? std::to_string(*pages) : "";
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void PipelineConfig::validate() const {
  if (!(min_sim > 0.0 && min_sim <= 1.0)) {
    throw ConfigError("min_sim must lie in (0, 1], got " + format_double(min_sim));
  }
  if (max_size < 2) {
    throw ConfigError("max_size must be at least 2, got " + std::to_string(max_size));
  }
  if (tau < 1) throw ConfigError("tau must be at least 1");
  if (ext_threshold && !(*ext_threshold >= 0.0 && *ext_threshold <= 1.0)) {
    throw ConfigError("ext_threshold must lie in [0, 1], got " +
                      format_double(*ext_threshold));
  }
}

void apply_config_text(PipelineConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value");
    }
    config.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void apply_config_file(PipelineConfig& config, const fs::path& path) {
  apply_config_text(config, read_text_file(path));
}

const std::vector<std::string_view>& stage_names() {
  static const std::vector<std::string_view> names = {
      "ingest", "cosite", "cluster", "network", "report", "export", "pipeline"};
  return names;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError(path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::internal, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::internal, "write failed: " + path.string());
}

void run_ingest(const PipelineConfig& config) {
  if (config.edges.empty()) throw ConfigError("ingest needs an edge list (edges)");
  const auto text = read_text_file(config.edges);
  const auto data = build_data_matrix(parse_edge_list(std::string_view(text)));
  auto report = accounting(data.matrix);
  report.pages = config.pages;
  write_text_file(in_out_dir(config, artifact::matrix), write_edge_list(data));
  write_text_file(in_out_dir(config, artifact::accounting), to_json(report));
}

void run_cosite(const PipelineConfig& config) {
  const auto data = load_site_data(config);
  const auto model = cooccurrence(linker_sets(data.matrix), config.threads);
  const auto sim = equivalence(model.occurrence, model.cooccurrence);
  write_text_file(in_out_dir(config, artifact::cooccurrence),
                  matrices_csv(model.cooccurrence, data.registry));
  write_text_file(in_out_dir(config, artifact::similarity),
                  matrices_csv(sim, data.registry));
}

void run_cluster(const PipelineConfig& config) {
  const auto data = load_site_data(config);
  const auto sim = similarity_from_csv(
      read_text_file(in_out_dir(config, artifact::similarity)), data.registry);
  const auto n = data.registry.size();
  auto set = config.mode == ClusterMode::threshold
                 ? cut_threshold(hac_single_linkage(sim), sim, n, config.min_sim)
                 : build_clusters_capped(sim, n, config.min_sim, config.max_size);
  set = collect_external_associations(std::move(set), sim,
                                      config.effective_ext_threshold());
  attach_labels(set, data.registry);
  write_text_file(in_out_dir(config, artifact::clusters), to_json(set));
}

void run_network(const PipelineConfig& config) {
  const auto clusters = load_clusters(config);
  ClusterNetwork net;
  if (config.net_mode == NetMode::flow) {
    net = build_flow_network(clusters, load_site_data(config).matrix, config.tau);
  } else {
    net = build_creation_order_network(clusters);
  }
  write_text_file(in_out_dir(config, artifact::network), to_json(net));
}

void run_report(const PipelineConfig& config) {
  AccountingReport acc;
  const auto acc_path = in_out_dir(config, artifact::accounting);
  if (fs::exists(acc_path)) {
    acc = accounting_from_json(read_text_file(acc_path));
  } else if (!config.edges.empty()) {
    const auto text = read_text_file(config.edges);
    acc = accounting(build_data_matrix(parse_edge_list(std::string_view(text))).matrix);
    acc.pages = config.pages;
  } else {
    throw FileNotFoundError(acc_path.string());
  }

  Json report;
  report["accounting"] = Json::parse(to_json(acc));
  const auto net_path = in_out_dir(config, artifact::network);
  if (fs::exists(net_path)) {
    auto cut = config.remove_arcs;
    if (!config.remove_arcs_file.empty()) {
      const auto more = arcs_from_json_file(config.remove_arcs_file);
      cut.insert(cut.end(), more.begin(), more.end());
    }
    const auto net = remove_arcs(load_network(config), cut);
    auto structure = structure_report(net);
    structure.removed_arcs = cut;
    const auto text = to_json(structure);
    write_text_file(in_out_dir(config, artifact::structure), text);
    report["structure"] = Json::parse(text);
  } else {
    report["structure"] = nullptr;
  }
  write_text_file(in_out_dir(config, artifact::report), report.dump(2) + "\n");
}

void run_export(const PipelineConfig& config) {
  const auto net = load_network(config);
  std::optional<ClusterSet> clusters;
  if (config.label_mode == LabelMode::members) clusters = load_clusters(config);
  ExportOptions opts;
  opts.format = config.format;
  opts.include_values = config.include_values;
  opts.label_mode = config.label_mode;
  const auto text = export_network(net, opts, clusters ? &*clusters : nullptr);
  write_text_file(in_out_dir(config, "network." + std::string(to_string(config.format))),
                  text);
}

void run_pipeline(const PipelineConfig& config) {
  run_ingest(config);
  run_cosite(config);
  run_cluster(config);
  run_network(config);
  run_report(config);
  run_export(config);
}

void run_stage(std::string_view stage, const PipelineConfig& config) {
  config.validate();
  if (stage == "ingest") return run_ingest(config);
  if (stage == "cosite") return run_cosite(config);
  if (stage == "cluster") return run_cluster(config);
  if (stage == "network") return run_network(config);
  if (stage == "report") return run_report(config);
  if (stage == "export") return run_export(config);
  if (stage == "pipeline") return run_pipeline(config);
  throw ConfigError("unknown stage '" + std::string(stage) + "'");
}

}  // namespace cosite
