#include <random>

#include "cosite/error.hpp"
#include "cosite/export.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cosite;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE_BEGIN("export");

TEST_CASE("to_dot") {
  ExportOptions opts;
  SUBCASE("single arc keeps direction") {
    const ClusterNetwork net({9, 17}, {{17, 9, 0.5, 1}});
    const auto dot = to_dot(net, opts);
    CHECK(dot.find("\"17\" -> \"9\"") != std::string::npos);
    CHECK(dot.find("label=\"0.5\"") != std::string::npos);
    CHECK(dot.rfind("digraph", 0) == 0);
  }
  SUBCASE("empty network lists nodes only") {
    const ClusterNetwork net({1, 2}, {});
    const auto dot = to_dot(net, opts);
    CHECK(dot == "digraph cluster_network {\n  \"1\";\n  \"2\";\n}\n");
  }
  SUBCASE("mutual dyad gives two edge statements") {
    const ClusterNetwork net({1, 2}, {{1, 2, 1, 1}, {2, 1, 1, 1}});
    const auto dot = to_dot(net, opts);
    CHECK(count_of(dot, "->") == 2);
    CHECK(dot.find("\"1\" -> \"2\"") < dot.find("\"2\" -> \"1\""));
  }
  SUBCASE("values can be omitted") {
    opts.include_values = false;
    const ClusterNetwork net({1, 2}, {{1, 2, 3.25, 1}});
    CHECK(to_dot(net, opts).find("label") == std::string::npos);
  }
  SUBCASE("member labels") {
    ClusterSet cs;
    Cluster c;
    c.id = 1;
    c.members = {0, 1};
    c.sites = {"a.eu", "b\"q.eu"};
    cs.clusters = {c};
    cs.n_sites = 2;
    opts.label_mode = LabelMode::members;
    const ClusterNetwork net({1}, {});
    const auto dot = to_dot(net, opts, &cs);
    CHECK(dot.find("label=\"a.eu\\nb\\\"q.eu\"") != std::string::npos);
    CHECK_THROWS_AS(to_dot(net, opts), InvalidArgument);
  }
}

TEST_CASE("to_graphml") {
  const ClusterNetwork net({1, 2, 3}, {{1, 2, 0.25, 1}, {3, 2, 4, 2}});
  const auto xml = to_graphml(net, ExportOptions{});
  CHECK(count_of(xml, "<edge ") == 2);
  CHECK(count_of(xml, "<node ") == 3);
  CHECK(xml.find("edgedefault=\"directed\"") != std::string::npos);
  CHECK(xml.find("source=\"n3\" target=\"n2\"") != std::string::npos);
  CHECK(xml.find("<data key=\"multiplicity\">2</data>") != std::string::npos);
}

TEST_CASE("network JSON round trip") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    auto net = oracle::random_network(rng, 10, 0.3);
    const auto text = to_json(net);
    CHECK(network_from_json(text) == net);
    CHECK(to_json(network_from_json(text)) == text);
  }
  CHECK_THROWS_AS(network_from_json("{"), ParseError);
  CHECK_THROWS_AS(network_from_json("{\"nodes\": [1]}"), ParseError);
  CHECK_THROWS_AS(network_from_json(R"({"nodes":[1],"arcs":[{"source":1,"target":1,"value":1,"multiplicity":1}]})"),
                  InvalidArgument);
}

TEST_CASE("network CSV") {
  const ClusterNetwork net({1, 2}, {{2, 1, 0.5, 3}});
  CHECK(to_csv(net, ExportOptions{}) == "source,target,value,multiplicity\n2,1,0.5,3\n");
}

TEST_CASE("matrix CSV") {
  SiteRegistry reg;
  reg.intern("a.eu");
  reg.intern("b,c.eu");
  const SimilarityMatrix e({{{0, 1}, 4.0 / 9.0}});
  const auto csv = matrices_csv(e, reg);
  CHECK(count_of(csv, "\n") == 2);
  CHECK(csv.rfind("i,j,Eij\n", 0) == 0);
  CHECK(csv.find("\"b,c.eu\"") != std::string::npos);
  // Lossless doubles.
  CHECK(similarity_from_csv(csv, reg) == e);

  const CooccurrenceMatrix c({{{0, 1}, 2}});
  CHECK(matrices_csv(c, reg) == "i,j,Cij\na.eu,\"b,c.eu\",2\n");

  CHECK_THROWS_AS(similarity_from_csv("i,j,Eij\na.eu,zz,0.5\n", reg), ParseError);
  CHECK_THROWS_AS(similarity_from_csv("i,j,Eij\na.eu,a.eu,0.5\n", reg), ParseError);
  CHECK_THROWS_AS(similarity_from_csv("i,j,Eij\na.eu,\"b,c.eu\",1.5\n", reg), ParseError);
  CHECK_THROWS_AS(similarity_from_csv("x\n", reg), ParseError);
}

TEST_CASE("cluster set JSON round trip") {
  ClusterSet cs;
  cs.n_sites = 5;
  Cluster a;
  a.id = 1;
  a.members = {0, 1};
  a.internal = {{{0, 1}, 0.9}};
  a.sites = {"s0", "s1"};
  Cluster b;
  b.id = 2;
  b.members = {2, 3};
  b.internal = {{{2, 3}, 0.8}};
  b.sites = {"s2", "s3"};
  const ExternalAssociation ext{{1, 2}, 0.3, 1, 2};
  a.external = {ext};
  b.external = {ext};
  cs.clusters = {a, b};
  cs.unclustered = {4};
  cs.externals = {ext};

  const auto text = to_json(cs);
  CHECK(clusters_from_json(text) == cs);
  CHECK(text.find("\"peer\": 2") != std::string::npos);
  CHECK(text.find("\"components\"") != std::string::npos);
  CHECK(text.find("\"values\"") != std::string::npos);
}

TEST_CASE("accounting JSON uses the documented field names") {
  AccountingReport r;
  r.n_sites = 2;
  r.total_links = 10;
  r.directed_links = 9;
  r.self_links = 1;
  r.directed_pct = 90;
  r.self_pct = 10;
  r.empty = false;
  const auto text = to_json(r);
  for (const char* key : {"\"n_sites\"", "\"total_links\"", "\"directed_links\"",
                          "\"self_links\"", "\"directed_pct\"", "\"self_pct\"", "\"empty\""}) {
    CHECK(text.find(key) != std::string::npos);
  }
  CHECK(text.find("pages") == std::string::npos);
  CHECK(accounting_from_json(text) == r);
  r.pages = 12'595'809;
  CHECK(accounting_from_json(to_json(r)) == r);
}

TEST_CASE("structure JSON") {
  const ClusterNetwork net({1}, {});
  const auto text = to_json(structure_report(net));
  CHECK(text.find("\"density\": null") != std::string::npos);
  CHECK(text.find("\"M\": 0") != std::string::npos);
  CHECK(text.find("\"kind\": \"isolate\"") != std::string::npos);
}

TEST_CASE("exports are deterministic") {
  std::mt19937_64 rng(77);
  const auto net = oracle::random_network(rng, 12, 0.25);
  for (const auto f : {ExportFormat::dot, ExportFormat::graphml, ExportFormat::json,
                       ExportFormat::csv}) {
    ExportOptions opts;
    opts.format = f;
    const auto copy = network_from_json(to_json(net));
    CHECK(export_network(net, opts) == export_network(copy, opts));
  }
}

TEST_CASE("format_double round-trips") {
  for (const double v : {0.1, 4.0 / 9.0, 1.0, 1e-300, 123456789.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_SUITE_END();
