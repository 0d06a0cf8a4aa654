#include "cosite/cosite.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "cosite/cooccurrence.hpp"
#include "cosite/error.hpp"
#include "cosite/export.hpp"
#include "cosite/ingest.hpp"
#include "cosite/network.hpp"
#include "cosite/pipeline.hpp"

struct cosite_config {
  cosite::PipelineConfig config;
};

struct cosite_sites {
  cosite::SiteData data;
  // Computed on first use.
  std::optional<cosite::CooccurrenceModel> model;
  std::optional<cosite::SimilarityMatrix> similarity;
};

struct cosite_network {
  cosite::ClusterNetwork net;
};

namespace {

thread_local std::string last_error;

cosite_status fail(cosite_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
cosite_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return COSITE_OK;
  } catch (const cosite::Error& e) {
    return fail(static_cast<cosite_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(COSITE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(COSITE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(COSITE_ERR_INTERNAL, "unknown exception");
  }
}

cosite_status null_argument(const char* name) {
  return fail(COSITE_ERR_NULL_ARGUMENT, std::string("null argument: ") + name);
}

cosite_status copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  const auto required = text.size() + 1;
  if (needed != nullptr) *needed = required;
  if (buf == nullptr || cap < required) {
    return fail(COSITE_ERR_BUFFER_TOO_SMALL,
                "buffer of " + std::to_string(cap) + " bytes, need " +
                    std::to_string(required));
  }
  std::memcpy(buf, text.c_str(), required);
  last_error.clear();
  return COSITE_OK;
}

void ensure_model(cosite_sites& sites) {
  if (sites.model) return;
  sites.model = cosite::cooccurrence(cosite::linker_sets(sites.data.matrix), 1);
  sites.similarity =
      cosite::equivalence(sites.model->occurrence, sites.model->cooccurrence);
}

void check_site(const cosite_sites& sites, uint32_t site) {
  if (site >= sites.data.registry.size()) {
    throw cosite::InvalidArgument("site index " + std::to_string(site) +
                                  " out of range");
  }
}

}  // namespace

extern "C" {

const char* cosite_version(void) { return "0.1.0"; }

const char* cosite_status_string(cosite_status status) {
  switch (status) {
    case COSITE_OK: return "ok";
    case COSITE_ERR_NULL_ARGUMENT: return "null argument";
    case COSITE_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    default: break;
  }
  return cosite::to_string(static_cast<cosite::ErrorCode>(status));
}

const char* cosite_last_error(void) { return last_error.c_str(); }

cosite_status cosite_config_create(cosite_config** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new cosite_config(); });
}

void cosite_config_destroy(cosite_config* config) { delete config; }

cosite_status cosite_config_set(cosite_config* config, const char* key,
                                const char* value) {
  if (config == nullptr) return null_argument("config");
  if (key == nullptr) return null_argument("key");
  if (value == nullptr) return null_argument("value");
  return guarded([&] { config->config.set(key, value); });
}

cosite_status cosite_config_load_file(cosite_config* config, const char* path) {
  if (config == nullptr) return null_argument("config");
  if (path == nullptr) return null_argument("path");
  return guarded([&] { cosite::apply_config_file(config->config, path); });
}

cosite_status cosite_config_get(const cosite_config* config, const char* key,
                                char* buf, size_t cap, size_t* needed) {
  if (config == nullptr) return null_argument("config");
  if (key == nullptr) return null_argument("key");
  std::string text;
  const auto status = guarded([&] { text = config->config.get(key); });
  if (status != COSITE_OK) return status;
  return copy_out(text, buf, cap, needed);
}

cosite_status cosite_config_validate(const cosite_config* config) {
  if (config == nullptr) return null_argument("config");
  return guarded([&] { config->config.validate(); });
}

cosite_status cosite_run_stage(const cosite_config* config, const char* stage) {
  if (config == nullptr) return null_argument("config");
  if (stage == nullptr) return null_argument("stage");
  return guarded([&] { cosite::run_stage(stage, config->config); });
}

cosite_status cosite_sites_from_text(const char* text, size_t len, cosite_sites** out) {
  if (out == nullptr) return null_argument("out");
  if (text == nullptr && len > 0) return null_argument("text");
  return guarded([&] {
    auto sites = std::make_unique<cosite_sites>();
    const auto records = cosite::parse_edge_list(
        std::string_view(text == nullptr ? "" : text, len));
    sites->data = cosite::build_data_matrix(records);
    *out = sites.release();
  });
}

cosite_status cosite_sites_from_file(const char* path, cosite_sites** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  std::string text;
  const auto status = guarded([&] { text = cosite::read_text_file(path); });
  if (status != COSITE_OK) return status;
  return cosite_sites_from_text(text.data(), text.size(), out);
}

void cosite_sites_destroy(cosite_sites* sites) { delete sites; }

cosite_status cosite_sites_count(const cosite_sites* sites, size_t* out) {
  if (sites == nullptr) return null_argument("sites");
  if (out == nullptr) return null_argument("out");
  *out = sites->data.registry.size();
  return COSITE_OK;
}

cosite_status cosite_sites_find(const cosite_sites* sites, const char* label,
                                uint32_t* out) {
  if (sites == nullptr) return null_argument("sites");
  if (label == nullptr) return null_argument("label");
  if (out == nullptr) return null_argument("out");
  const auto id = sites->data.registry.find(label);
  if (!id) return fail(COSITE_ERR_INVALID_ARGUMENT, std::string("unknown site '") + label + "'");
  *out = *id;
  return COSITE_OK;
}

cosite_status cosite_sites_accounting(const cosite_sites* sites, cosite_accounting* out) {
  if (sites == nullptr) return null_argument("sites");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto r = cosite::accounting(sites->data.matrix);
    *out = cosite_accounting{r.n_sites,     r.total_links, r.directed_links,
                             r.self_links,  r.directed_pct, r.self_pct,
                             r.empty ? 1 : 0};
  });
}

cosite_status cosite_sites_occurrence(cosite_sites* sites, uint32_t site, uint32_t* out) {
  if (sites == nullptr) return null_argument("sites");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    check_site(*sites, site);
    ensure_model(*sites);
    *out = sites->model->occurrence[site];
  });
}

cosite_status cosite_sites_cooccurrence(cosite_sites* sites, uint32_t i, uint32_t j,
                                        uint32_t* out) {
  if (sites == nullptr) return null_argument("sites");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    check_site(*sites, i);
    check_site(*sites, j);
    ensure_model(*sites);
    *out = sites->model->cooccurrence.at(i, j);
  });
}

cosite_status cosite_sites_similarity(cosite_sites* sites, uint32_t i, uint32_t j,
                                      double* out) {
  if (sites == nullptr) return null_argument("sites");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    check_site(*sites, i);
    check_site(*sites, j);
    ensure_model(*sites);
    *out = sites->similarity->at(i, j);
  });
}

cosite_status cosite_network_from_json(const char* text, size_t len,
                                       cosite_network** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    auto net = std::make_unique<cosite_network>();
    net->net = cosite::network_from_json(std::string_view(text, len));
    *out = net.release();
  });
}

cosite_status cosite_network_from_file(const char* path, cosite_network** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  std::string text;
  const auto status = guarded([&] { text = cosite::read_text_file(path); });
  if (status != COSITE_OK) return status;
  return cosite_network_from_json(text.data(), text.size(), out);
}

void cosite_network_destroy(cosite_network* net) { delete net; }

cosite_status cosite_network_node_count(const cosite_network* net, size_t* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  *out = net->net.node_count();
  return COSITE_OK;
}

cosite_status cosite_network_arc_count(const cosite_network* net, size_t* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  *out = net->net.arc_count();
  return COSITE_OK;
}

cosite_status cosite_network_node_at(const cosite_network* net, size_t index,
                                     uint32_t* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  if (index >= net->net.node_count()) {
    return fail(COSITE_ERR_INVALID_ARGUMENT, "node index out of range");
  }
  *out = net->net.nodes()[index];
  return COSITE_OK;
}

cosite_status cosite_network_out_degree(const cosite_network* net, uint32_t node,
                                        size_t* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = cosite::out_degree(net->net, node); });
}

cosite_status cosite_network_in_degree(const cosite_network* net, uint32_t node,
                                       size_t* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = cosite::in_degree(net->net, node); });
}

cosite_status cosite_network_node_kind(const cosite_network* net, uint32_t node,
                                       cosite_node_kind* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto d_out = cosite::out_degree(net->net, node);
    const auto d_in = cosite::in_degree(net->net, node);
    if (d_out == 0) {
      *out = d_in == 0 ? COSITE_NODE_ISOLATE : COSITE_NODE_RECEIVER;
    } else {
      *out = d_in == 0 ? COSITE_NODE_TRANSMITTER : COSITE_NODE_CARRIER;
    }
  });
}

cosite_status cosite_network_dyad_census(const cosite_network* net,
                                         cosite_dyad_census* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto c = cosite::dyad_census(net->net);
    *out = cosite_dyad_census{c.mutual, c.asymmetric, c.null};
  });
}

cosite_status cosite_network_density(const cosite_network* net, double* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = cosite::density(net->net); });
}

cosite_status cosite_network_is_complete(const cosite_network* net, int* out) {
  if (net == nullptr) return null_argument("net");
  if (out == nullptr) return null_argument("out");
  *out = cosite::is_complete(net->net) ? 1 : 0;
  return COSITE_OK;
}

cosite_status cosite_network_remove_arcs(const cosite_network* net,
                                         const cosite_arc* arcs, size_t count,
                                         cosite_network** out) {
  if (net == nullptr) return null_argument("net");
  if (arcs == nullptr && count > 0) return null_argument("arcs");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    std::vector<cosite::ArcKey> cut;
    cut.reserve(count);
    for (size_t k = 0; k < count; ++k) cut.emplace_back(arcs[k].source, arcs[k].target);
    auto result = std::make_unique<cosite_network>();
    result->net = cosite::remove_arcs(net->net, cut);
    *out = result.release();
  });
}

cosite_status cosite_network_weak_components(const cosite_network* net,
                                             uint32_t* component_of, size_t cap,
                                             size_t* component_count) {
  if (net == nullptr) return null_argument("net");
  if (component_count == nullptr) return null_argument("component_count");
  const auto nodes = net->net.nodes();
  if (component_of != nullptr && cap < nodes.size()) {
    return fail(COSITE_ERR_BUFFER_TOO_SMALL, "component buffer holds " + std::to_string(cap) +
                                                 " entries, need " +
                                                 std::to_string(nodes.size()));
  }
  return guarded([&] {
    const auto components = cosite::weak_components(net->net);
    *component_count = components.size();
    if (component_of == nullptr) return;
    for (size_t c = 0; c < components.size(); ++c) {
      for (const auto id : components[c]) {
        const auto pos = std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin();
        component_of[pos] = static_cast<uint32_t>(c);
      }
    }
  });
}

cosite_status cosite_network_export(const cosite_network* net, cosite_format format,
                                    int include_values, char* buf, size_t cap,
                                    size_t* needed) {
  if (net == nullptr) return null_argument("net");
  std::string text;
  const auto status = guarded([&] {
    cosite::ExportOptions opts;
    switch (format) {
      case COSITE_FORMAT_DOT: opts.format = cosite::ExportFormat::dot; break;
      case COSITE_FORMAT_GRAPHML: opts.format = cosite::ExportFormat::graphml; break;
      case COSITE_FORMAT_JSON: opts.format = cosite::ExportFormat::json; break;
      case COSITE_FORMAT_CSV: opts.format = cosite::ExportFormat::csv; break;
      default: throw cosite::InvalidArgument("unknown export format");
    }
    opts.include_values = include_values != 0;
    text = cosite::export_network(net->net, opts);
  });
  if (status != COSITE_OK) return status;
  return copy_out(text, buf, cap, needed);
}

}  // extern "C"
