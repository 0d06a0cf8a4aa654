/*
 * cosite C API.
 *
 * Every function returns a cosite_status. On failure a message describing the
 * most recent error on the calling thread is available from
 * cosite_last_error(). Handles are opaque and owned by the caller; release
 * them with the matching *_destroy function (passing NULL is a no-op).
 *
 * Text outputs use the (buf, cap, needed) convention: when `cap` is large
 * enough the NUL-terminated text is copied into `buf`; otherwise
 * COSITE_ERR_BUFFER_TOO_SMALL is returned. `needed` (if non-NULL) always
 * receives the required size including the terminator.
 */
#ifndef COSITE_H
#define COSITE_H

#include <stddef.h>
#include <stdint.h>

#if defined(COSITE_BUILDING_LIBRARY)
#define COSITE_API __attribute__((visibility("default")))
#else
#define COSITE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 2, 3 and 4 are also the CLI exit codes. */
typedef enum cosite_status {
  COSITE_OK = 0,
  COSITE_ERR_INTERNAL = 1,
  COSITE_ERR_FILE_NOT_FOUND = 2,
  COSITE_ERR_PARSE = 3,
  COSITE_ERR_CONFIG = 4,
  COSITE_ERR_INVALID_ARGUMENT = 5,
  COSITE_ERR_UNKNOWN_NODE = 6,
  COSITE_ERR_CONSISTENCY = 7,
  COSITE_ERR_NULL_ARGUMENT = 8,
  COSITE_ERR_BUFFER_TOO_SMALL = 9
} cosite_status;

typedef enum cosite_node_kind {
  COSITE_NODE_ISOLATE = 0,
  COSITE_NODE_TRANSMITTER = 1,
  COSITE_NODE_RECEIVER = 2,
  COSITE_NODE_CARRIER = 3
} cosite_node_kind;

typedef enum cosite_format {
  COSITE_FORMAT_DOT = 0,
  COSITE_FORMAT_GRAPHML = 1,
  COSITE_FORMAT_JSON = 2,
  COSITE_FORMAT_CSV = 3
} cosite_format;

typedef struct cosite_config cosite_config;
typedef struct cosite_sites cosite_sites;
typedef struct cosite_network cosite_network;

typedef struct cosite_accounting {
  uint64_t n_sites;
  uint64_t total_links;
  uint64_t directed_links;
  uint64_t self_links;
  uint32_t directed_pct;
  uint32_t self_pct;
  int empty;
} cosite_accounting;

typedef struct cosite_dyad_census {
  uint64_t mutual;
  uint64_t asymmetric;
  uint64_t null_dyads;
} cosite_dyad_census;

typedef struct cosite_arc {
  uint32_t source;
  uint32_t target;
} cosite_arc;

COSITE_API const char* cosite_version(void);
COSITE_API const char* cosite_status_string(cosite_status status);
COSITE_API const char* cosite_last_error(void);

/* Pipeline configuration. Keys: min_sim, max_size, ext_threshold, mode,
 * net_mode, tau, edges, out_dir, remove_arcs, remove_arcs_file, threads,
 * format, include_values, label_mode, pages. */
COSITE_API cosite_status cosite_config_create(cosite_config** out);
COSITE_API void cosite_config_destroy(cosite_config* config);
COSITE_API cosite_status cosite_config_set(cosite_config* config, const char* key,
                                           const char* value);
COSITE_API cosite_status cosite_config_load_file(cosite_config* config,
                                                 const char* path);
COSITE_API cosite_status cosite_config_get(const cosite_config* config,
                                           const char* key, char* buf, size_t cap,
                                           size_t* needed);
COSITE_API cosite_status cosite_config_validate(const cosite_config* config);

/* Runs one of: ingest, cosite, cluster, network, report, export, pipeline. */
COSITE_API cosite_status cosite_run_stage(const cosite_config* config,
                                          const char* stage);

/* Site registry + data matrix built from an edge list. */
COSITE_API cosite_status cosite_sites_from_text(const char* text, size_t len,
                                                cosite_sites** out);
COSITE_API cosite_status cosite_sites_from_file(const char* path, cosite_sites** out);
COSITE_API void cosite_sites_destroy(cosite_sites* sites);
COSITE_API cosite_status cosite_sites_count(const cosite_sites* sites, size_t* out);
COSITE_API cosite_status cosite_sites_find(const cosite_sites* sites,
                                           const char* label, uint32_t* out);
COSITE_API cosite_status cosite_sites_accounting(const cosite_sites* sites,
                                                 cosite_accounting* out);
COSITE_API cosite_status cosite_sites_occurrence(cosite_sites* sites, uint32_t site,
                                                 uint32_t* out);
COSITE_API cosite_status cosite_sites_cooccurrence(cosite_sites* sites, uint32_t i,
                                                   uint32_t j, uint32_t* out);
COSITE_API cosite_status cosite_sites_similarity(cosite_sites* sites, uint32_t i,
                                                 uint32_t j, double* out);

/* Cluster network, loaded from its JSON serialization. */
COSITE_API cosite_status cosite_network_from_json(const char* text, size_t len,
                                                  cosite_network** out);
COSITE_API cosite_status cosite_network_from_file(const char* path,
                                                  cosite_network** out);
COSITE_API void cosite_network_destroy(cosite_network* net);
COSITE_API cosite_status cosite_network_node_count(const cosite_network* net,
                                                   size_t* out);
COSITE_API cosite_status cosite_network_arc_count(const cosite_network* net,
                                                  size_t* out);
/* Node ids in ascending order; `index` < node_count. */
COSITE_API cosite_status cosite_network_node_at(const cosite_network* net,
                                                size_t index, uint32_t* out);
COSITE_API cosite_status cosite_network_out_degree(const cosite_network* net,
                                                   uint32_t node, size_t* out);
COSITE_API cosite_status cosite_network_in_degree(const cosite_network* net,
                                                  uint32_t node, size_t* out);
COSITE_API cosite_status cosite_network_node_kind(const cosite_network* net,
                                                  uint32_t node,
                                                  cosite_node_kind* out);
COSITE_API cosite_status cosite_network_dyad_census(const cosite_network* net,
                                                    cosite_dyad_census* out);
COSITE_API cosite_status cosite_network_density(const cosite_network* net,
                                                double* out);
COSITE_API cosite_status cosite_network_is_complete(const cosite_network* net,
                                                    int* out);
COSITE_API cosite_status cosite_network_remove_arcs(const cosite_network* net,
                                                    const cosite_arc* arcs,
                                                    size_t count,
                                                    cosite_network** out);
/* component_of[k] receives the component index (largest component first) of
 * the k-th node in ascending id order; `cap` must be >= node_count. */
COSITE_API cosite_status cosite_network_weak_components(const cosite_network* net,
                                                        uint32_t* component_of,
                                                        size_t cap,
                                                        size_t* component_count);
COSITE_API cosite_status cosite_network_export(const cosite_network* net,
                                               cosite_format format,
                                               int include_values, char* buf,
                                               size_t cap, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* COSITE_H */
