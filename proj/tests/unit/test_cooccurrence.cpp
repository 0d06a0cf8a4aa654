#include <cmath>
#include <random>

#include "cosite/cooccurrence.hpp"
#include "cosite/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cosite;

namespace {

// c->a, d->a, e->a, a->b, c->b, d->b, b->b(2)
SiteData five_site_fixture() {
  const std::vector<EdgeRecord> recs = {{"c", "a", 1}, {"d", "a", 1}, {"e", "a", 1},
                                        {"a", "b", 1}, {"c", "b", 1}, {"d", "b", 1},
                                        {"b", "b", 2}};
  return build_data_matrix(recs);
}

}  // namespace

TEST_SUITE_BEGIN("cosite");

TEST_CASE("linker_sets on the five-site fixture") {
  const auto data = five_site_fixture();
  const auto& reg = data.registry;
  const auto id = [&](const char* s) { return *reg.find(s); };
  const auto sets = linker_sets(data.matrix);

  // Brute-force oracle over the dense matrix.
  const auto expected = oracle::linkers(oracle::dense(data.matrix));
  for (SiteIndex i = 0; i < sets.size(); ++i) {
    CHECK(std::set<SiteIndex>(sets[i].begin(), sets[i].end()) == expected[i]);
  }
  CHECK(std::set<SiteIndex>(sets[id("a")].begin(), sets[id("a")].end()) ==
        std::set<SiteIndex>{id("c"), id("d"), id("e")});
  CHECK(std::set<SiteIndex>(sets[id("b")].begin(), sets[id("b")].end()) ==
        std::set<SiteIndex>{id("a"), id("c"), id("d")});
  CHECK(sets[id("e")].empty());  // no in-links
}

TEST_CASE("linker_sets ignores the diagonal") {
  const auto sets = linker_sets(DataMatrix(1, {{0, 0, 7}}));
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].empty());
}

TEST_CASE("cooccurrence on the five-site fixture") {
  const auto data = five_site_fixture();
  const auto a = *data.registry.find("a");
  const auto b = *data.registry.find("b");
  const auto model = cooccurrence(linker_sets(data.matrix));
  CHECK(model.occurrence[a] == 3);
  CHECK(model.occurrence[b] == 3);
  // a links to b but is an endpoint, so only c and d count.
  CHECK(model.cooccurrence.at(a, b) == 2);
  CHECK(model.cooccurrence.at(b, a) == 2);

  const auto brute = oracle::cooccurrence(oracle::dense(data.matrix));
  CHECK(brute[a][b] == 2);
}

TEST_CASE("cooccurrence edge cases") {
  SUBCASE("disjoint linker sets") {
    // 2->0, 3->1
    const auto model = cooccurrence(linker_sets(DataMatrix(4, {{2, 0, 1}, {3, 1, 1}})));
    CHECK(model.cooccurrence.at(0, 1) == 0);
    CHECK(model.cooccurrence.empty());
  }
  SUBCASE("singleton identity") {
    // L(0) = L(1) = {2}
    const auto model = cooccurrence(linker_sets(DataMatrix(3, {{2, 0, 1}, {2, 1, 4}})));
    CHECK(model.cooccurrence.at(0, 1) == 1);
    CHECK(model.occurrence[0] == 1);
    CHECK(model.occurrence[1] == 1);
  }
}

TEST_CASE("equivalence index") {
  SUBCASE("fixture value 4/9") {
    const auto data = five_site_fixture();
    const auto model = cooccurrence(linker_sets(data.matrix));
    const auto e = equivalence(model.occurrence, model.cooccurrence);
    const auto a = *data.registry.find("a");
    const auto b = *data.registry.find("b");
    CHECK(std::abs(e.at(a, b) - 4.0 / 9.0) < 1e-12);
  }
  SUBCASE("maximal similarity") {
    const OccurrenceVector occ = {5, 5};
    const CooccurrenceMatrix co({{{0, 1}, 5}});
    CHECK(equivalence(occ, co).at(0, 1) == 1.0);
  }
  SUBCASE("zero co-occurrence is absent") {
    const OccurrenceVector occ = {2, 3};
    const CooccurrenceMatrix co({{{0, 1}, 0}});
    const auto e = equivalence(occ, co);
    CHECK(e.empty());
    CHECK(e.at(0, 1) == 0.0);
  }
  SUBCASE("zero occurrence is a consistency error") {
    const OccurrenceVector occ = {0, 3};
    const CooccurrenceMatrix co({{{0, 1}, 1}});
    try {
      equivalence(occ, co);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::consistency);
    }
  }
}

TEST_CASE("SparsePairMatrix validates ordering") {
  CHECK_THROWS_AS(CooccurrenceMatrix({{{1, 0}, 1}}), InvalidArgument);
  CHECK_THROWS_AS(CooccurrenceMatrix({{{0, 2}, 1}, {{0, 1}, 1}}), InvalidArgument);
  CHECK_THROWS_AS(CooccurrenceMatrix({{{3, 3}, 1}}), InvalidArgument);
}

TEST_CASE("cooccurrence matches the triple-loop oracle and is thread-count independent") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 40);
    std::uniform_real_distribution<double> p(0.02, 0.4);
    const auto d = oracle::random_matrix(rng, size(rng), p(rng));
    const auto dense = oracle::dense(d);
    const auto model = cooccurrence(linker_sets(d), 1);
    const auto brute = oracle::cooccurrence(dense);
    const auto occ = oracle::occurrence(dense);
    CHECK(model.occurrence == occ);
    for (SiteIndex i = 0; i < d.size(); ++i) {
      for (SiteIndex j = 0; j < d.size(); ++j) {
        if (i != j) REQUIRE(model.cooccurrence.at(i, j) == brute[i][j]);
      }
    }
    for (const unsigned threads : {2u, 3u, 8u}) {
      CHECK(cooccurrence(linker_sets(d), threads).cooccurrence == model.cooccurrence);
    }
  }
}

TEST_CASE("binarization invariance") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = oracle::random_matrix(rng, 20, 0.2);
    std::vector<MatrixCell> scaled(d.cells().begin(), d.cells().end());
    std::uniform_int_distribution<LinkCount> factor(1, 9);
    for (auto& c : scaled) c.count *= factor(rng);
    const DataMatrix d2(d.size(), scaled);
    const auto m1 = cooccurrence(linker_sets(d));
    const auto m2 = cooccurrence(linker_sets(d2));
    CHECK(linker_sets(d) == linker_sets(d2));
    CHECK(m1.occurrence == m2.occurrence);
    CHECK(m1.cooccurrence == m2.cooccurrence);
    CHECK(equivalence(m1.occurrence, m1.cooccurrence) ==
          equivalence(m2.occurrence, m2.cooccurrence));
  }
}

TEST_SUITE_END();
