#include "cosite/export.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "cosite/error.hpp"
#include "json.hpp"

namespace cosite {

using Json = nlohmann::ordered_json;

namespace {

std::string dot_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// RFC 4180 fields of one record; `line` must not contain the terminator.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          fields.back() += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  return fields;
}

/// Member labels of each cluster keyed by id; throws if labels are missing.
std::map<ClusterId, std::vector<std::string>> member_labels(
    const ExportOptions& opts, const ClusterSet* clusters) {
  std::map<ClusterId, std::vector<std::string>> labels;
  if (opts.label_mode != LabelMode::members) return labels;
  if (clusters == nullptr) {
    throw InvalidArgument("label mode 'members' needs cluster membership");
  }
  for (const auto& c : clusters->clusters) {
    if (c.sites.size() != c.members.size()) {
      throw InvalidArgument("label mode 'members' needs site labels for cluster " +
                            std::to_string(c.id));
    }
    labels.emplace(c.id, c.sites);
  }
  return labels;
}

std::string node_label(ClusterId id,
                       const std::map<ClusterId, std::vector<std::string>>& labels,
                       std::string_view separator,
                       std::string (*escape)(std::string_view) = nullptr) {
  const auto it = labels.find(id);
  if (it == labels.end()) return std::to_string(id);
  std::string out;
  for (const auto& label : it->second) {
    if (!out.empty()) out += separator;
    out += escape ? escape(label) : label;
  }
  return out;
}

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(0, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

template <typename Fn>
auto json_field_access(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw ParseError(0, std::string("invalid ") + what + " JSON: " + e.what());
  }
}

Json pair_json(const SitePair& p) { return Json::array({p.first, p.second}); }

SitePair pair_from_json(const Json& j) {
  const auto a = j.at(0).get<SiteIndex>();
  const auto b = j.at(1).get<SiteIndex>();
  if (a >= b) throw ParseError(0, "site pair must be strictly increasing");
  return {a, b};
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorCode::internal, "double formatting failed");
  return std::string(buf, ptr);
}

std::string_view to_string(ExportFormat format) {
  switch (format) {
    case ExportFormat::dot: return "dot";
    case ExportFormat::graphml: return "graphml";
    case ExportFormat::json: return "json";
    case ExportFormat::csv: return "csv";
  }
  return "dot";
}

std::string_view to_string(LabelMode mode) {
  return mode == LabelMode::rank ? "rank" : "members";
}

std::optional<ExportFormat> export_format_from_string(std::string_view text) {
  for (const auto f : {ExportFormat::dot, ExportFormat::graphml,
                       ExportFormat::json, ExportFormat::csv}) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

std::optional<LabelMode> label_mode_from_string(std::string_view text) {
  if (text == "rank") return LabelMode::rank;
  if (text == "members") return LabelMode::members;
  return std::nullopt;
}

std::string to_dot(const ClusterNetwork& net, const ExportOptions& opts,
                   const ClusterSet* clusters) {
  const auto labels = member_labels(opts, clusters);
  std::string out = "digraph cluster_network {\n";
  for (const auto id : net.nodes()) {
    out += "  \"" + std::to_string(id) + "\"";
    if (opts.label_mode == LabelMode::members) {
      out += " [label=\"" + node_label(id, labels, "\\n", dot_escape) + "\"]";
    }
    out += ";\n";
  }
  for (const auto& a : net.arcs()) {
    out += "  \"" + std::to_string(a.source) + "\" -> \"" +
           std::to_string(a.target) + "\"";
    if (opts.include_values) out += " [label=\"" + format_double(a.value) + "\"]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

std::string to_graphml(const ClusterNetwork& net, const ExportOptions& opts,
                       const ClusterSet* clusters) {
  const auto labels = member_labels(opts, clusters);
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      "    xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      "    xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
      "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
  if (opts.include_values) {
    out +=
        "  <key id=\"value\" for=\"edge\" attr.name=\"value\" attr.type=\"double\"/>\n"
        "  <key id=\"multiplicity\" for=\"edge\" attr.name=\"multiplicity\" "
        "attr.type=\"long\"/>\n";
  }
  out += "  <graph id=\"clusters\" edgedefault=\"directed\">\n";
  for (const auto id : net.nodes()) {
    out += "    <node id=\"n" + std::to_string(id) + "\"><data key=\"label\">" +
           xml_escape(node_label(id, labels, ", ")) + "</data></node>\n";
  }
  std::size_t k = 0;
  for (const auto& a : net.arcs()) {
    out += "    <edge id=\"e" + std::to_string(k++) + "\" source=\"n" +
           std::to_string(a.source) + "\" target=\"n" + std::to_string(a.target) +
           "\"";
    if (opts.include_values) {
      out += "><data key=\"value\">" + format_double(a.value) +
             "</data><data key=\"multiplicity\">" + std::to_string(a.multiplicity) +
             "</data></edge>\n";
    } else {
      out += "/>\n";
    }
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

std::string to_csv(const ClusterNetwork& net, const ExportOptions& opts) {
  std::string out = opts.include_values ? "source,target,value,multiplicity\n"
                                        : "source,target\n";
  for (const auto& a : net.arcs()) {
    out += std::to_string(a.source) + "," + std::to_string(a.target);
    if (opts.include_values) {
      out += "," + format_double(a.value) + "," + std::to_string(a.multiplicity);
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const ClusterNetwork& net) {
  Json j;
  j["nodes"] = Json::array();
  for (const auto id : net.nodes()) j["nodes"].push_back(id);
  j["arcs"] = Json::array();
  for (const auto& a : net.arcs()) {
    j["arcs"].push_back({{"source", a.source},
                         {"target", a.target},
                         {"value", a.value},
                         {"multiplicity", a.multiplicity}});
  }
  return j.dump(2) + "\n";
}

ClusterNetwork network_from_json(std::string_view text) {
  const auto j = parse_json(text, "network");
  return json_field_access("network", [&] {
    std::vector<ClusterId> nodes;
    for (const auto& n : j.at("nodes")) nodes.push_back(n.get<ClusterId>());
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) {
      arcs.push_back({a.at("source").get<ClusterId>(), a.at("target").get<ClusterId>(),
                      a.at("value").get<double>(),
                      a.at("multiplicity").get<std::uint64_t>()});
    }
    return ClusterNetwork(std::move(nodes), std::move(arcs));
  });
}

std::string export_network(const ClusterNetwork& net, const ExportOptions& opts,
                           const ClusterSet* clusters) {
  switch (opts.format) {
    case ExportFormat::dot: return to_dot(net, opts, clusters);
    case ExportFormat::graphml: return to_graphml(net, opts, clusters);
    case ExportFormat::json: return to_json(net);
    case ExportFormat::csv: return to_csv(net, opts);
  }
  return {};
}

std::string matrices_csv(const CooccurrenceMatrix& co, const SiteRegistry& registry) {
  std::string out = "i,j,Cij\n";
  for (const auto& [pair, value] : co.entries()) {
    out += csv_field(registry.label(pair.first)) + "," +
           csv_field(registry.label(pair.second)) + "," + std::to_string(value) + "\n";
  }
  return out;
}

std::string matrices_csv(const SimilarityMatrix& sim, const SiteRegistry& registry) {
  std::string out = "i,j,Eij\n";
  for (const auto& [pair, value] : sim.entries()) {
    out += csv_field(registry.label(pair.first)) + "," +
           csv_field(registry.label(pair.second)) + "," + format_double(value) + "\n";
  }
  return out;
}

SimilarityMatrix similarity_from_csv(std::string_view text,
                                     const SiteRegistry& registry) {
  std::vector<PairEntry<double>> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "i,j,Eij") throw ParseError(line_no, "expected header 'i,j,Eij'");
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(line, line_no);
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    }
    const auto a = registry.find(fields[0]);
    const auto b = registry.find(fields[1]);
    if (!a || !b) {
      throw ParseError(line_no, "unknown site '" + (a ? fields[1] : fields[0]) + "'");
    }
    if (*a == *b) throw ParseError(line_no, "diagonal pair");
    double value = 0.0;
    const auto& v = fields[2];
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc() || ptr != v.data() + v.size() || !(value >= 0.0 && value <= 1.0)) {
      throw ParseError(line_no, "similarity must be a number in [0, 1], got '" + v + "'");
    }
    entries.push_back({SitePair::of(*a, *b), value});
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.pair < y.pair; });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k - 1].pair == entries[k].pair) {
      throw ParseError(0, "duplicate similarity pair (" +
                              registry.label(entries[k].pair.first) + ", " +
                              registry.label(entries[k].pair.second) + ")");
    }
  }
  return SimilarityMatrix(std::move(entries));
}

std::string to_json(const ClusterSet& set) {
  Json j;
  j["n_sites"] = set.n_sites;
  j["clusters"] = Json::array();
  for (const auto& c : set.clusters) {
    Json cj;
    cj["id"] = c.id;
    cj["members"] = c.members;
    cj["components"] = c.components();
    cj["sites"] = c.sites;
    cj["internal"] = Json::array();
    for (const auto& a : c.internal) {
      cj["internal"].push_back({{"pair", pair_json(a.pair)}, {"value", a.value}});
    }
    cj["external"] = Json::array();
    for (const auto& a : c.external) {
      cj["external"].push_back(
          {{"pair", pair_json(a.pair)}, {"value", a.value}, {"peer", a.peer_of(c.id)}});
    }
    cj["values"] = c.values();
    j["clusters"].push_back(std::move(cj));
  }
  j["unclustered"] = set.unclustered;
  j["externals"] = Json::array();
  for (const auto& a : set.externals) {
    j["externals"].push_back({{"pair", pair_json(a.pair)},
                              {"value", a.value},
                              {"clusters", {a.first_cluster, a.second_cluster}}});
  }
  return j.dump(2) + "\n";
}

ClusterSet clusters_from_json(std::string_view text) {
  const auto j = parse_json(text, "cluster set");
  return json_field_access("cluster set", [&] {
    ClusterSet set;
    set.n_sites = j.at("n_sites").get<std::size_t>();
    for (const auto& cj : j.at("clusters")) {
      Cluster c;
      c.id = cj.at("id").get<ClusterId>();
      if (c.id != set.clusters.size() + 1) {
        throw ParseError(0, "cluster ids must be consecutive creation ranks from 1");
      }
      c.members = cj.at("members").get<std::vector<SiteIndex>>();
      if (cj.contains("sites")) c.sites = cj.at("sites").get<std::vector<std::string>>();
      for (const auto& a : cj.at("internal")) {
        c.internal.push_back({pair_from_json(a.at("pair")), a.at("value").get<double>()});
      }
      for (const auto& a : cj.at("external")) {
        ExternalAssociation ext;
        ext.pair = pair_from_json(a.at("pair"));
        ext.value = a.at("value").get<double>();
        const auto peer = a.at("peer").get<ClusterId>();
        const bool owns_first =
            std::binary_search(c.members.begin(), c.members.end(), ext.pair.first);
        ext.first_cluster = owns_first ? c.id : peer;
        ext.second_cluster = owns_first ? peer : c.id;
        c.external.push_back(ext);
      }
      set.clusters.push_back(std::move(c));
    }
    set.unclustered = j.at("unclustered").get<std::vector<SiteIndex>>();
    for (const auto& a : j.at("externals")) {
      ExternalAssociation ext;
      ext.pair = pair_from_json(a.at("pair"));
      ext.value = a.at("value").get<double>();
      ext.first_cluster = a.at("clusters").at(0).get<ClusterId>();
      ext.second_cluster = a.at("clusters").at(1).get<ClusterId>();
      set.externals.push_back(ext);
    }
    for (const auto& c : set.clusters) {
      for (const auto m : c.members) {
        if (m >= set.n_sites) {
          throw ParseError(0, "cluster " + std::to_string(c.id) +
                                  " names site " + std::to_string(m) +
                                  " beyond n_sites");
        }
      }
    }
    return set;
  });
}

std::string to_json(const AccountingReport& r) {
  Json j;
  j["n_sites"] = r.n_sites;
  j["total_links"] = r.total_links;
  j["directed_links"] = r.directed_links;
  j["self_links"] = r.self_links;
  j["directed_pct"] = r.directed_pct;
  j["self_pct"] = r.self_pct;
  j["empty"] = r.empty;
  if (r.pages) j["pages"] = *r.pages;
  return j.dump(2) + "\n";
}

AccountingReport accounting_from_json(std::string_view text) {
  const auto j = parse_json(text, "accounting");
  return json_field_access("accounting", [&] {
    AccountingReport r;
    r.n_sites = j.at("n_sites").get<std::uint64_t>();
    r.total_links = j.at("total_links").get<LinkCount>();
    r.directed_links = j.at("directed_links").get<LinkCount>();
    r.self_links = j.at("self_links").get<LinkCount>();
    r.directed_pct = j.at("directed_pct").get<std::uint32_t>();
    r.self_pct = j.at("self_pct").get<std::uint32_t>();
    r.empty = j.at("empty").get<bool>();
    if (j.contains("pages")) r.pages = j.at("pages").get<std::uint64_t>();
    return r;
  });
}

std::string to_json(const StructureReport& r) {
  Json j;
  j["nodes"] = Json::array();
  for (const auto& n : r.nodes) {
    j["nodes"].push_back({{"id", n.id},
                          {"d_o", n.out_degree},
                          {"d_i", n.in_degree},
                          {"kind", std::string(to_string(n.kind))}});
  }
  j["arcs"] = r.arc_count;
  j["census"] = {{"M", r.census.mutual}, {"A", r.census.asymmetric}, {"N", r.census.null}};
  j["density"] = r.density ? Json(*r.density) : Json(nullptr);
  j["complete"] = r.complete;
  j["components"] = r.components;
  j["removed_arcs"] = Json::array();
  for (const auto& [s, t] : r.removed_arcs) j["removed_arcs"].push_back({s, t});
  return j.dump(2) + "\n";
}

}  // namespace cosite
