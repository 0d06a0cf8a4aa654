#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>
#include <vector>

#include "cosite/cosite.h"
#include "doctest.h"

namespace {

const char* kEdges =
    "c\ta\nd\ta\ne\ta\n"
    "a\tb\nc\tb\nd\tb\n"
    "b\tb\t2\n";

// 1 <-> 2, 2 -> 3, 4 isolated.
const char* kNetwork = R"({
  "nodes": [1, 2, 3, 4],
  "arcs": [
    {"source": 1, "target": 2, "value": 1.5, "multiplicity": 1},
    {"source": 2, "target": 1, "value": 1.0, "multiplicity": 1},
    {"source": 2, "target": 3, "value": 0.5, "multiplicity": 2}
  ]
})";

}  // namespace

TEST_CASE("status strings and version") {
  CHECK(std::string(cosite_version()) == "0.1.0");
  CHECK(std::string(cosite_status_string(COSITE_OK)) == "ok");
  CHECK(std::string(cosite_status_string(COSITE_ERR_PARSE)) == "parse error");
}

TEST_CASE("null arguments are reported") {
  CHECK(cosite_config_create(nullptr) == COSITE_ERR_NULL_ARGUMENT);
  CHECK(cosite_sites_from_text(nullptr, 0, nullptr) == COSITE_ERR_NULL_ARGUMENT);
  size_t n = 0;
  CHECK(cosite_network_node_count(nullptr, &n) == COSITE_ERR_NULL_ARGUMENT);
  cosite_config_destroy(nullptr);
  cosite_sites_destroy(nullptr);
  cosite_network_destroy(nullptr);
}

TEST_CASE("config handle") {
  cosite_config* cfg = nullptr;
  REQUIRE(cosite_config_create(&cfg) == COSITE_OK);
  CHECK(cosite_config_set(cfg, "min_sim", "0.3") == COSITE_OK);
  CHECK(cosite_config_set(cfg, "nope", "1") == COSITE_ERR_CONFIG);
  CHECK(std::string(cosite_last_error()).find("nope") != std::string::npos);

  size_t needed = 0;
  CHECK(cosite_config_get(cfg, "min_sim", nullptr, 0, &needed) ==
        COSITE_ERR_BUFFER_TOO_SMALL);
  CHECK(needed == 4);  // "0.3" plus terminator
  std::vector<char> buf(needed);
  REQUIRE(cosite_config_get(cfg, "min_sim", buf.data(), buf.size(), &needed) == COSITE_OK);
  CHECK(std::string(buf.data()) == "0.3");

  CHECK(cosite_config_validate(cfg) == COSITE_OK);
  CHECK(cosite_config_set(cfg, "min_sim", "0") == COSITE_OK);
  CHECK(cosite_config_validate(cfg) == COSITE_ERR_CONFIG);
  CHECK(cosite_run_stage(cfg, "ingest") == COSITE_ERR_CONFIG);
  CHECK(cosite_config_load_file(cfg, "/nonexistent/x.cfg") == COSITE_ERR_FILE_NOT_FOUND);
  cosite_config_destroy(cfg);
}

TEST_CASE("sites handle") {
  cosite_sites* sites = nullptr;
  REQUIRE(cosite_sites_from_text(kEdges, std::strlen(kEdges), &sites) == COSITE_OK);
  size_t n = 0;
  CHECK(cosite_sites_count(sites, &n) == COSITE_OK);
  CHECK(n == 5);
  uint32_t a = 0, b = 0;
  REQUIRE(cosite_sites_find(sites, "A", &a) == COSITE_OK);
  REQUIRE(cosite_sites_find(sites, "b", &b) == COSITE_OK);
  uint32_t missing = 0;
  CHECK(cosite_sites_find(sites, "zz", &missing) == COSITE_ERR_INVALID_ARGUMENT);

  uint32_t occ = 0, co = 0;
  CHECK(cosite_sites_occurrence(sites, a, &occ) == COSITE_OK);
  CHECK(occ == 3);
  CHECK(cosite_sites_cooccurrence(sites, a, b, &co) == COSITE_OK);
  CHECK(co == 2);
  double e = 0;
  CHECK(cosite_sites_similarity(sites, a, b, &e) == COSITE_OK);
  CHECK(e == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(cosite_sites_similarity(sites, a, 99, &e) == COSITE_ERR_INVALID_ARGUMENT);

  cosite_accounting acc{};
  CHECK(cosite_sites_accounting(sites, &acc) == COSITE_OK);
  CHECK(acc.total_links == 8);
  CHECK(acc.self_links == 2);
  CHECK(acc.directed_pct == 75);
  CHECK(acc.empty == 0);
  cosite_sites_destroy(sites);

  cosite_sites* bad = nullptr;
  CHECK(cosite_sites_from_text("a\tb\t0", 5, &bad) == COSITE_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(cosite_last_error()).find("line 1") != std::string::npos);
  CHECK(cosite_sites_from_file("/nonexistent/edges.tsv", &bad) == COSITE_ERR_FILE_NOT_FOUND);
}

TEST_CASE("network handle") {
  cosite_network* net = nullptr;
  REQUIRE(cosite_network_from_json(kNetwork, std::strlen(kNetwork), &net) == COSITE_OK);
  size_t nodes = 0, arcs = 0;
  CHECK(cosite_network_node_count(net, &nodes) == COSITE_OK);
  CHECK(cosite_network_arc_count(net, &arcs) == COSITE_OK);
  CHECK(nodes == 4);
  CHECK(arcs == 3);
  uint32_t id = 0;
  CHECK(cosite_network_node_at(net, 3, &id) == COSITE_OK);
  CHECK(id == 4);
  CHECK(cosite_network_node_at(net, 4, &id) == COSITE_ERR_INVALID_ARGUMENT);

  size_t d = 0;
  CHECK(cosite_network_out_degree(net, 2, &d) == COSITE_OK);
  CHECK(d == 2);
  CHECK(cosite_network_in_degree(net, 3, &d) == COSITE_OK);
  CHECK(d == 1);
  CHECK(cosite_network_out_degree(net, 42, &d) == COSITE_ERR_UNKNOWN_NODE);

  cosite_node_kind kind{};
  CHECK(cosite_network_node_kind(net, 3, &kind) == COSITE_OK);
  CHECK(kind == COSITE_NODE_RECEIVER);
  CHECK(cosite_network_node_kind(net, 4, &kind) == COSITE_OK);
  CHECK(kind == COSITE_NODE_ISOLATE);
  CHECK(cosite_network_node_kind(net, 1, &kind) == COSITE_OK);
  CHECK(kind == COSITE_NODE_CARRIER);

  cosite_dyad_census census{};
  CHECK(cosite_network_dyad_census(net, &census) == COSITE_OK);
  CHECK(census.mutual == 1);
  CHECK(census.asymmetric == 1);
  CHECK(census.null_dyads == 4);

  double density = 0;
  CHECK(cosite_network_density(net, &density) == COSITE_OK);
  CHECK(density == doctest::Approx(3.0 / 12.0));
  int complete = 1;
  CHECK(cosite_network_is_complete(net, &complete) == COSITE_OK);
  CHECK(complete == 0);

  std::vector<uint32_t> comp(4);
  size_t count = 0;
  CHECK(cosite_network_weak_components(net, comp.data(), comp.size(), &count) == COSITE_OK);
  CHECK(count == 2);
  CHECK(comp == std::vector<uint32_t>{0, 0, 0, 1});
  CHECK(cosite_network_weak_components(net, comp.data(), 2, &count) ==
        COSITE_ERR_BUFFER_TOO_SMALL);

  const cosite_arc cut[] = {{2, 3}};
  cosite_network* pruned = nullptr;
  REQUIRE(cosite_network_remove_arcs(net, cut, 1, &pruned) == COSITE_OK);
  CHECK(cosite_network_weak_components(pruned, comp.data(), comp.size(), &count) == COSITE_OK);
  CHECK(count == 3);
  const cosite_arc bogus[] = {{3, 2}};
  cosite_network* none = nullptr;
  CHECK(cosite_network_remove_arcs(net, bogus, 1, &none) == COSITE_ERR_INVALID_ARGUMENT);
  cosite_network_destroy(pruned);

  size_t needed = 0;
  CHECK(cosite_network_export(net, COSITE_FORMAT_DOT, 1, nullptr, 0, &needed) ==
        COSITE_ERR_BUFFER_TOO_SMALL);
  std::vector<char> buf(needed);
  REQUIRE(cosite_network_export(net, COSITE_FORMAT_DOT, 1, buf.data(), buf.size(), &needed) ==
          COSITE_OK);
  CHECK(std::string(buf.data()).find("\"2\" -> \"3\"") != std::string::npos);
  cosite_network_destroy(net);

  CHECK(cosite_network_from_json("{", 1, &net) == COSITE_ERR_PARSE);
}
