#include <random>

#include "doctest.h"
#include "graphinv/enumerate.hpp"
#include "graphinv/errors.hpp"
#include "graphinv/iso_class.hpp"
#include "oracles.hpp"

using namespace ginv;

namespace {
Multigraph g(std::string_view text) { return parseMultigraph(text); }
}  // namespace

TEST_CASE("text format") {
  Multigraph m = g("4; 1 2 3; 2 4");
  CHECK(m.order() == 4);
  CHECK(m.weight(0, 1) == 3);
  CHECK(m.weight(1, 3) == 1);
  CHECK(m.edgeCount() == 4);
  CHECK(toText(m) == "4; 1 2 3; 2 4 1");
  CHECK(parseMultigraph(toText(m)) == m);
  CHECK_THROWS_AS(g("3; 2 1 1"), ParseError);
  CHECK_THROWS_AS(g("3; 1 4 1"), ParseError);
  CHECK_THROWS_AS(g("3; 1 2 0"), ParseError);
  CHECK_THROWS_AS(g("x; 1 2"), ParseError);
  CHECK_THROWS_AS(g("3; 1 2; 1 2"), ParseError);
  CHECK(parseMultigraphList("# header\n3; 1 2\n\n4; 1 2 2\n").size() == 2);
}

TEST_CASE("canonical_form examples") {
  CHECK(canonicalForm(g("3; 1 2; 1 3")) == canonicalForm(g("3; 1 2; 2 3")));
  CHECK(canonicalForm(g("3; 1 2; 2 3; 1 3")) != canonicalForm(g("3; 1 2; 2 3")));
  CHECK(canonicalForm(g("3; 1 2 2")) == canonicalForm(g("5; 4 5 2")));
  CHECK(canonicalForm(Multigraph(4)) == IsoClass());
  IsoClass p3 = canonicalForm(pathGraph(3, 6));
  CHECK(p3.vertices() == 3);
  CHECK(p3.edges() == 2);
  CHECK(IsoClass::parse(p3.toString()) == p3);
}

TEST_CASE("canonical_form is invariant under relabeling") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    Multigraph m = oracle::randomMultigraph(rng, n, trial % 3 == 0 ? 1 : 3);
    auto sigma = oracle::randomPermutation(rng, n);
    CHECK(canonicalForm(permute(m, sigma)) == canonicalForm(m));
  }
}

TEST_CASE("canonical_form separates exactly the brute-force classes") {
  // Two graphs share a key iff their S_n-minimal weight vectors agree.
  for (int d = 0; d <= 4; ++d) {
    std::map<std::vector<Weight>, IsoClass> byBrute;
    std::map<IsoClass, std::vector<Weight>> byKey;
    for (const Multigraph& m : oracle::allWeightings(4, d, 2)) {
      auto b = oracle::bruteKey(m);
      IsoClass c = canonicalForm(m);
      auto [it, fresh] = byBrute.emplace(b, c);
      CHECK(it->second == c);
      auto [jt, fresh2] = byKey.emplace(c, b);
      CHECK(jt->second == b);
    }
  }
}

TEST_CASE("forest keys agree with tree isomorphism") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 9;
    // random labeled tree via random attachment
    Multigraph t(n);
    for (int v = 1; v < n; ++v) t.setWeight(std::uniform_int_distribution<int>(0, v - 1)(rng), v, 1);
    auto sigma = oracle::randomPermutation(rng, n);
    CanonicalLabeling a = canonicalLabeling(t);
    CHECK(a.cls == canonicalForm(permute(t, sigma)));
    CHECK(a.cls.representative().isForest());
  }
  // The star and the path on 5 vertices have 24 and 2 automorphisms.
  CHECK(canonicalLabeling(starGraph(4, 5)).automorphisms == 24);
  CHECK(canonicalLabeling(pathGraph(5, 5)).automorphisms == 2);
  // Two disjoint copies of P3: 2 * 2 * 2!.
  CHECK(canonicalLabeling(g("6; 1 2; 2 3; 4 5; 5 6")).automorphisms == 8);
}

TEST_CASE("orbit_data examples") {
  OrbitData e = orbitData(singleEdge(3), 3);
  CHECK(e.orbitSize == 3);
  CHECK(e.autCount == 2);
  OrbitData tri = orbitData(cycleGraph(3, 3), 3);
  CHECK(tri.orbitSize == 1);
  CHECK(tri.autCount == 6);
  // brute force over the 24 permutations of {1..4}
  CHECK(oracle::bruteOrbit(pathGraph(3, 4)).size() == 12);
  CHECK(orbitData(pathGraph(3, 4), 4).orbitSize == 12);
  CHECK(orbitMembers(canonicalForm(pathGraph(3, 4)), 4).size() == 12);
  CHECK_THROWS_AS(orbitData(pathGraph(4, 4), 3), std::invalid_argument);
}

TEST_CASE("orbit sizes times automorphisms is n!") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    Multigraph m = oracle::randomMultigraph(rng, n, 2);
    OrbitData d = orbitData(m, n);
    CHECK(d.orbitSize * d.autCount == factorial(n));
    CHECK(d.orbitSize == oracle::bruteOrbit(m).size());
    CHECK(orbitMembers(canonicalForm(m), n).size() == oracle::bruteOrbit(m).size());
  }
}

TEST_CASE("transform examples") {
  CHECK(complement(g("3; 1 2")) == g("3; 1 3; 2 3"));
  CHECK(scale(g("3; 1 2; 2 3"), 2) == g("3; 1 2 2; 2 3 2"));
  CHECK(deleteVertex(cycleGraph(3, 3), 0) == g("3; 2 3"));
  CHECK(pad(g("3; 1 2"), 5) == g("5; 1 2"));
  CHECK(complement(g("3; 1 2 2")) == g("3; 1 3 2; 2 3 2"));
  CHECK_THROWS(pad(g("3; 1 2"), 2));
  CHECK_THROWS(deleteVertex(g("3; 1 2"), 3));
}

TEST_CASE("complement is an involution on simple graphs") {
  for (int n = 1; n <= 5; ++n) {
    for (int d = 0; d <= static_cast<int>(pairCount(n)); ++d) {
      for (const Multigraph& m : oracle::allWeightings(n, d, 1)) {
        if (m.isEmpty() && n >= 2) {
          // the empty graph has level 1, its complement the complete graph
          CHECK(complement(m) == completeGraph(n));
          continue;
        }
        CHECK(complement(complement(m)) == m);
      }
    }
  }
}

TEST_CASE("deck examples") {
  IsoClass k2 = canonicalForm(singleEdge(2));
  CHECK(deck(cycleGraph(3, 3)) == Deck{k2, k2, k2});
  CHECK(deck(pathGraph(3, 3)) == Deck{IsoClass(), k2, k2});
  IsoClass p3 = canonicalForm(pathGraph(3, 3));
  Deck p4 = deck(pathGraph(4, 4));
  Deck expected{p3, k2, k2, p3};
  std::sort(expected.begin(), expected.end());
  CHECK(p4 == expected);
}

TEST_CASE("deck is invariant under relabeling") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 4;
    Multigraph m = oracle::randomMultigraph(rng, n, 2);
    CHECK(deck(permute(m, oracle::randomPermutation(rng, n))) == deck(m));
    CHECK(hypomorphic(m, permute(m, oracle::randomPermutation(rng, n))));
  }
}

TEST_CASE("components examples") {
  CHECK(components(g("4; 1 2; 3 4")).size() == 2);
  auto tri = components(cycleGraph(3, 3));
  REQUIRE(tri.size() == 1);
  CHECK(tri[0] == cycleGraph(3, 3));
  auto mixed = components(g("5; 1 2; 2 3; 4 5"));
  REQUIRE(mixed.size() == 2);
  CHECK(canonicalForm(mixed[0]) == canonicalForm(pathGraph(3, 3)));
  CHECK(canonicalForm(mixed[1]) == canonicalForm(singleEdge(2)));
  CHECK(add(mixed[0], mixed[1]) == g("5; 1 2; 2 3; 4 5"));
  CHECK(components(Multigraph(3)).empty());
}

TEST_CASE("enumerate examples") {
  CHECK(enumerate(3, 3, Family::Multigraph).size() == 3);
  CHECK(oracle::bruteClassCount(3, 3, false) == 3);
  CHECK(enumerate(4, 3, Family::Simple).size() == 3);
  CHECK(oracle::bruteClassCount(4, 3, true) == 3);
  CHECK(enumerate(5, 4, Family::Tree).size() == 3);
  CHECK(treesOnVertices(10).size() == 106);
  CHECK(enumerate(3, 2, Family::ConnectedMultigraph).size() == 2);  // P3, double edge
  // trees on 5 (3), tree on 4 plus an edge (2), P3 + P3 (1)
  CHECK(enumerate(6, 4, Family::Forest).size() == 6);
  CHECK_THROWS_AS(enumerate(7, 3, Family::Multigraph), BudgetExceeded);
  CHECK_THROWS_AS(enumerate(11, 3, Family::Forest), BudgetExceeded);
}

TEST_CASE("enumerate agrees with brute force for small n") {
  for (int n = 2; n <= 4; ++n) {
    for (int d = 0; d <= 4; ++d) {
      CHECK(enumerate(n, d, Family::Multigraph).size() == oracle::bruteClassCount(n, d, false));
      CHECK(enumerate(n, d, Family::Simple).size() == oracle::bruteClassCount(n, d, true));
    }
  }
}

TEST_CASE("embeddings examples") {
  CHECK(embeddings(singleEdge(3), cycleGraph(3, 3)) == 3);
  CHECK(embeddings(pathGraph(3, 3), cycleGraph(3, 3)) == 3);
  CHECK(embeddings(g("4; 1 2; 3 4"), cycleGraph(4, 4)) == 2);
  CHECK_THROWS(embeddings(g("3; 1 2 2"), cycleGraph(3, 3)));
}
