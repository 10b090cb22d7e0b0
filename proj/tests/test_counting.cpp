#include "doctest.h"
#include "graphinv/counting.hpp"
#include "graphinv/enumerate.hpp"
#include "graphinv/iso_class.hpp"
#include "oracles.hpp"

using namespace ginv;

namespace {

// Direct expansion of prod_{m,d} (1 - x^m z^d)^{-c_{m,d}} as a product of
// binomial series, with an x-truncation large enough to never matter.
// Returns the z^d coefficients summed over all x powers.
std::vector<mpz_class> bivariatePieceProduct(const CountTable& c, int minPiece, int maxPiece, int dMax) {
  const int xMax = dMax * maxPiece;
  std::vector<std::vector<mpz_class>> F(xMax + 1, std::vector<mpz_class>(dMax + 1));
  F[0][0] = 1;
  for (int m = minPiece; m <= maxPiece; ++m) {
    for (int d = 1; d <= dMax; ++d) {
      const mpz_class& cnt = c.at(m, d);
      if (cnt == 0) continue;
      // coefficients binom(cnt + k - 1, k) of (1 - t)^{-cnt}
      std::vector<mpz_class> coef{1};
      for (int k = 1; k * d <= dMax; ++k) coef.push_back(coef.back() * (cnt + k - 1) / k);
      auto G = F;
      for (auto& row : G) std::fill(row.begin(), row.end(), 0);
      for (int x = 0; x <= xMax; ++x) {
        for (int z = 0; z <= dMax; ++z) {
          if (F[x][z] == 0) continue;
          for (int k = 0; k < static_cast<int>(coef.size()) && z + k * d <= dMax && x + k * m <= xMax; ++k) {
            G[x + k * m][z + k * d] += F[x][z] * coef[k];
          }
        }
      }
      F = std::move(G);
    }
  }
  std::vector<mpz_class> out(dMax + 1);
  for (int x = 0; x <= xMax; ++x) {
    for (int z = 0; z <= dMax; ++z) out[z] += F[x][z];
  }
  return out;
}

}  // namespace

TEST_CASE("pair_cycle_type examples") {
  CHECK(pairCycleType({1, 1, 1}) == std::vector<int>{1, 1, 1});
  CHECK(pairCycleType({3}) == std::vector<int>{3});
  CHECK(pairCycleType({2, 2}) == std::vector<int>{1, 1, 2, 2});
  CHECK_THROWS_AS(pairCycleType({2, 0}), std::invalid_argument);
  for (int n = 2; n <= 9; ++n) {
    mpz_class total = 0;
    for (const Partition& p : partitions(n)) {
      auto cyc = pairCycleType(p);
      CHECK(std::accumulate(cyc.begin(), cyc.end(), std::size_t{0}) == pairCount(n));
      total += conjugacyClassSize(p);
    }
    CHECK(total == factorial(n));
  }
}

TEST_CASE("hilbert_series examples") {
  for (auto v : hilbertSeries(2, 10, CountVariant::Full)) CHECK(v == 1);
  CHECK(hilbertSeries(3, 3, CountVariant::Full)[3] == 3);
  CHECK(hilbertSeries(3, 3, CountVariant::Full)[3] == oracle::bruteClassCount(3, 3, false));
  auto s4 = hilbertSeries(4, 8, CountVariant::Simple);
  std::vector<mpz_class> expected{1, 1, 2, 3, 2, 1, 1, 0, 0};
  CHECK(s4 == expected);
  for (int d = 0; d <= 6; ++d) CHECK(s4[d] == oracle::bruteClassCount(4, d, true));
}

TEST_CASE("hilbert_series agrees with enumeration") {
  for (int n = 2; n <= 5; ++n) {
    auto full = hilbertSeries(n, 6, CountVariant::Full);
    auto simple = hilbertSeries(n, 6, CountVariant::Simple);
    for (int d = 0; d <= 6; ++d) {
      CHECK(full[d] == enumerate(n, d, Family::Multigraph).size());
      CHECK(simple[d] == enumerate(n, d, Family::Simple).size());
    }
  }
  // the brute-force S_n minimum, independent of the canonizer
  for (int d = 0; d <= 4; ++d) CHECK(hilbertSeries(5, 4, CountVariant::Full)[d] == oracle::bruteClassCount(5, d, false));
}

TEST_CASE("h is nondecreasing in n") {
  auto h = hilbertTable(9, 12, CountVariant::Full);
  auto hs = hilbertTable(9, 12, CountVariant::Simple);
  for (int n = 1; n <= 9; ++n) {
    for (int d = 0; d <= 12; ++d) {
      CHECK(h.at(n, d) >= h.at(n - 1, d));
      CHECK(hs.at(n, d) >= hs.at(n - 1, d));
    }
  }
}

TEST_CASE("connected_counts examples") {
  auto c = connectedCounts(5, 6, CountVariant::Full);
  for (int d = 1; d <= 6; ++d) CHECK(c.at(2, d) == 1);
  CHECK(c.at(3, 1) == 0);
  CHECK(c.at(3, 2) == 1);
  CHECK(c.at(3, 3) == 2);
  CHECK_THROWS_AS(connectedCounts(1, 3, CountVariant::Full), std::invalid_argument);
  CHECK_THROWS_AS(c.at(6, 1), std::out_of_range);
}

TEST_CASE("connected_counts agree with brute-force connected classes") {
  for (auto variant : {CountVariant::Full, CountVariant::Simple}) {
    auto c = connectedCounts(5, 5, variant);
    for (int m = 2; m <= 5; ++m) {
      for (int d = 1; d <= 5; ++d) {
        CHECK(c.at(m, d) == oracle::bruteClassCount(m, d, variant == CountVariant::Simple, true));
      }
    }
  }
}

TEST_CASE("the three connected-count steps compose and invert") {
  for (auto variant : {CountVariant::Full, CountVariant::Simple}) {
    auto h = hilbertTable(8, 10, variant);
    BiSeries hp = noIsolatedSeries(h);
    for (int m = 1; m <= 8; ++m) {
      for (int d = 0; d <= 10; ++d) CHECK(hp.at(m, d) == h.at(m, d) - h.at(m - 1, d));
    }
    auto c = connectedFromSeries(hp, variant);
    CHECK(eulerTransform(c, 8, 10) == hp);
    CHECK(c == connectedCounts(8, 10, variant));
  }
  BiSeries s(3, 3);
  CHECK_THROWS_AS(s.at(4, 0), std::out_of_range);
  CHECK_THROWS_AS(s.at(0, -1), std::out_of_range);
}

TEST_CASE("f_counts examples") {
  for (int n = 3; n <= 7; ++n) CHECK(fCounts(n, 3, CountVariant::Full)[1] == 1);
  CHECK(fCounts(3, 3, CountVariant::Full)[3] == 3);
  CHECK_THROWS_AS(fCounts(2, 3, CountVariant::Full), std::invalid_argument);
}

TEST_CASE("f_counts agree with an independent bivariate expansion") {
  for (auto variant : {CountVariant::Full, CountVariant::Simple}) {
    for (int n = 3; n <= 7; ++n) {
      auto c = connectedCounts(n - 1, 9, variant);
      CHECK(fCounts(n, 9, variant) == bivariatePieceProduct(c, 2, n - 1, 9));
    }
  }
}

TEST_CASE("f equals the unrestricted count below the tree threshold") {
  // With d < n - 1 every connected piece fits on n - 1 vertices, so f_{n,d}
  // counts all graphs without isolated vertices: h_{2d,d}.
  for (int n = 3; n <= 6; ++n) {
    for (auto variant : {CountVariant::Full, CountVariant::Simple}) {
      auto f = fCounts(n, n - 2, variant);
      for (int d = 1; d < n - 1; ++d) CHECK(f[d] == hilbertSeries(2 * d, d, variant)[d]);
    }
  }
}

TEST_CASE("f stays strictly below h at the first reconstruction gaps") {
  auto h = hilbertSeries(11, 18, CountVariant::Full);
  auto f = fCounts(11, 18, CountVariant::Full);
  CHECK(f[18] < h[18]);
  CHECK(f == bivariatePieceProduct(connectedCounts(10, 18, CountVariant::Full), 2, 10, 18));
  auto hs = hilbertSeries(13, 17, CountVariant::Simple);
  auto fs = fCounts(13, 17, CountVariant::Simple);
  CHECK(fs[17] < hs[17]);
  CHECK(fs == bivariatePieceProduct(connectedCounts(12, 17, CountVariant::Simple), 2, 12, 17));
}

TEST_CASE("count tables serialize to csv") {
  auto c = connectedCounts(4, 5, CountVariant::Simple);
  std::string csv = c.toCsv();
  CHECK(csv.rfind("c_simple,4,5\n0,0,0\n", 0) == 0);
  CHECK(CountTable::fromCsv(csv) == c);
  auto f = fTable(6, 7, CountVariant::Full);
  CHECK(CountTable::fromCsv(f.toCsv()) == f);
  for (int n = 3; n <= 6; ++n) CHECK(fCounts(n, 7, CountVariant::Full) == [&] {
    std::vector<mpz_class> row;
    for (int d = 0; d <= 7; ++d) row.push_back(f.at(n, d));
    return row;
  }());
  CHECK_THROWS(CountTable::fromCsv("c,1,1\n0,0,1\n"));
}

TEST_CASE("sop_numerator") {
  for (int n = 3; n <= 10; ++n) CHECK(sopNumerator(n, 0).parameterCount == static_cast<int>(pairCount(n)));
  auto s3 = sopNumerator(3, 12);
  CHECK(s3.coefficients[0] == 1);
  for (int d = 1; d <= 12; ++d) CHECK(s3.coefficients[d] == 0);
  auto s4 = sopNumerator(4, 12);
  CHECK(s4.allNonnegative);
  for (const auto& v : s4.coefficients) CHECK(v >= 0);
}
