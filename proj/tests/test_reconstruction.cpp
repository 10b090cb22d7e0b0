#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "graphinv/counting.hpp"
#include "graphinv/enumerate.hpp"
#include "graphinv/errors.hpp"
#include "graphinv/reconstruction.hpp"

using namespace ginv;

namespace {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulMod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powMod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulMod(a, a)) {
    if (e & 1) r = mulMod(r, a);
  }
  return r;
}

// Textbook dense elimination mod 2^61 - 1.
std::size_t denseRankModP(std::vector<std::vector<std::uint64_t>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    const std::uint64_t inv = powMod(a[rank][c], kPrime - 2);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t f = mulMod(a[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) a[r][k] = (a[r][k] + kPrime - mulMod(f, a[rank][k])) % kPrime;
    }
    ++rank;
  }
  return rank;
}

// New generators per degree from values at random points: an orbit sum is
// summed monomial by monomial over its labeled orbit, and a product of two
// invariants is the product of their values. No basis products involved.
std::vector<std::size_t> newGeneratorsByEvaluation(int n, int dMax, int points) {
  std::mt19937_64 rng(31337);
  std::vector<std::vector<std::uint64_t>> pts(points, std::vector<std::uint64_t>(pairCount(n)));
  for (auto& p : pts) {
    for (auto& x : p) x = rng() % kPrime;
  }
  std::vector<std::vector<std::vector<std::uint64_t>>> values(dMax + 1);
  for (int d = 0; d <= dMax; ++d) {
    for (const IsoClass& c : enumerate(n, d, Family::Multigraph)) {
      std::vector<std::uint64_t> v(points, 0);
      for (const SparseGraph& member : orbitMembers(c, n)) {
        for (int k = 0; k < points; ++k) {
          std::uint64_t mono = 1;
          for (auto [pair, w] : member) mono = mulMod(mono, powMod(pts[k][pair], w));
          v[k] = (v[k] + mono) % kPrime;
        }
      }
      values[d].push_back(std::move(v));
    }
  }
  std::vector<std::size_t> out;
  for (int d = 1; d <= dMax; ++d) {
    std::vector<std::vector<std::uint64_t>> products;
    for (int e = 1; 2 * e <= d; ++e) {
      for (const auto& a : values[e]) {
        for (const auto& b : values[d - e]) {
          std::vector<std::uint64_t> r(points);
          for (int k = 0; k < points; ++k) r[k] = mulMod(a[k], b[k]);
          products.push_back(std::move(r));
        }
      }
    }
    out.push_back(denseRankModP(values[d]) - denseRankModP(products));
  }
  return out;
}

IsoClass cls(std::string_view text) { return IsoClass::parse(text); }

std::vector<std::size_t> newByDegree(const GeneratorReport& r) {
  std::vector<std::size_t> out;
  for (const auto& d : r.perDegree) out.push_back(d.newGenerators);
  return out;
}

// Multisets of trees with 2..maxVertices vertices and d edges in total, from
// the tree counts 1, 1, 2, 3, 6, 11 on 2..7 vertices.
std::size_t treeMultisets(int maxVertices, int d) {
  const std::vector<std::size_t> trees{0, 0, 1, 1, 2, 3, 6, 11};
  std::vector<std::size_t> ways(d + 1, 0);
  ways[0] = 1;
  for (int k = 2; k <= maxVertices; ++k) {
    const int e = k - 1;
    for (std::size_t copy = 0; copy < trees[k]; ++copy) {
      for (int w = e; w <= d; ++w) ways[w] += ways[w - e];
    }
  }
  return ways[d];
}

}  // namespace

TEST_CASE("rec_spanning_set examples") {
  auto s = recSpanningSet(3, 1, Variant::Full);
  REQUIRE(s.size() == 1);
  CHECK(s[0].product == powerSum(1, 3));

  auto s4 = recSpanningSet(4, 2, Variant::Full);
  REQUIRE(s4.size() == 3);
  const Algebra alg{Variant::Full, 4};
  const OrbitSumPoly p1 = powerSum(1, 4);
  std::vector<OrbitSumPoly> expected{powerSum(2, 4), OrbitSumPoly::basis(cls("3; 1 2; 2 3"), alg), p1 * p1};
  for (const auto& e : expected) {
    CHECK(std::count_if(s4.begin(), s4.end(), [&](const SpanningElement& x) { return x.product == e; }) == 1);
  }
  for (int n = 3; n <= 6; ++n) {
    auto z = recSpanningSet(n, 0, Variant::Simple);
    REQUIRE(z.size() == 1);
    CHECK(z[0].product == OrbitSumPoly::constant(1, {Variant::Simple, n}));
  }
  CHECK_THROWS_AS(recSpanningSet(2, 1, Variant::Full), std::invalid_argument);
}

TEST_CASE("spanning set size matches f_{n,d}") {
  for (int n = 3; n <= 6; ++n) {
    const auto f = fCounts(n, 6, CountVariant::Full);
    const auto fs = fCounts(n, 6, CountVariant::Simple);
    for (int d = 0; d <= 6; ++d) {
      CHECK(recSpanningSet(n, d, Variant::Full).size() == f[d]);
      CHECK(recSpanningSet(n, d, Variant::Simple).size() == fs[d]);
    }
  }
  for (int n = 3; n <= 8; ++n) {
    for (int d = 0; d <= n - 1; ++d) CHECK(recSpanningSet(n, d, Variant::Forest).size() == treeMultisets(n - 1, d));
  }
}

TEST_CASE("spanning elements are homogeneous products of their pieces") {
  for (auto variant : {Variant::Full, Variant::Simple, Variant::Forest}) {
    for (const auto& e : recSpanningSet(5, 4, variant)) {
      CHECK(e.product == expandPieces(e.pieces, {variant, 5}));
      CHECK(std::is_sorted(e.pieces.begin(), e.pieces.end(), [](const IsoClass& a, const IsoClass& b) {
        return a.edges() != b.edges() ? a.edges() < b.edges() : a < b;
      }));
      for (const auto& p : e.pieces) {
        CHECK(p.vertices() >= 2);
        CHECK(p.vertices() <= 4);
        CHECK(p.representative().isConnected());
      }
      if (!e.product.isZero()) CHECK(e.product.homogeneousPart(4) == e.product);
    }
  }
}

TEST_CASE("the triangle certificate is Newton's identity") {
  // e_3 = (p_1^3 - 3 p_1 p_2 + 2 p_3) / 6 in the three edge variables
  const IsoClass k2 = cls("2; 1 2"), k2w2 = cls("2; 1 2 2"), k2w3 = cls("2; 1 2 3");
  MembershipCertificate newton{cls("3; 1 2; 2 3; 1 3"), 3, Variant::Full,
                               {{{k2, k2, k2}, mpq_class(1, 6)}, {{k2, k2w2}, mpq_class(-1, 2)}, {{k2w3}, mpq_class(1, 3)}},
                               false};
  CHECK(verifyCertificate(newton));
  auto r = isAlgReconstructible(completeGraph(3), 3, Variant::Full);
  REQUIRE(r.certificate);
  CHECK(r.certificate->verified);
  // the three products form a basis of the degree-3 piece, so the answer is unique
  auto sorted = [](std::vector<CertificateTerm> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.pieces < b.pieces; });
    return v;
  };
  CHECK(sorted(r.certificate->combination) == sorted(newton.combination));
}

TEST_CASE("membership examples") {
  const std::vector<std::pair<std::string, Variant>> members{
      {"4; 1 2; 3 4", Variant::Full},           {"4; 1 2; 2 3; 3 4; 1 4", Variant::Full},
      {"5; 1 2; 2 3; 3 4; 4 5; 1 5", Variant::Full}, {"4; 1 2; 2 3; 3 4", Variant::Simple},
      {"5; 1 2 2; 3 4 3", Variant::Full},       {"6; 1 2; 2 3; 1 4; 4 5; 1 6", Variant::Forest}};
  for (const auto& [text, variant] : members) {
    const Multigraph g = parseMultigraph(text);
    auto r = isAlgReconstructible(g, g.order(), variant);
    REQUIRE_MESSAGE(r.certificate, text);
    CHECK(r.certificate->verified);
    CHECK(r.certificate->target == canonicalForm(g));
    CHECK(verifyCertificate(*r.certificate));
  }
  // edgeless and single-piece targets
  auto one = isAlgReconstructible(Multigraph(4), 4, Variant::Full);
  REQUIRE(one.certificate);
  CHECK(one.certificate->combination.size() == 1);
  CHECK(one.certificate->combination[0].pieces.empty());
  auto piece = isAlgReconstructible(parseMultigraph("5; 1 2; 2 3; 1 3; 3 4 2"), 5, Variant::Full);
  REQUIRE(piece.certificate);
  CHECK(piece.method == "single connected piece");

  CHECK_THROWS_AS(isAlgReconstructible(completeGraph(4), 3, Variant::Full), std::invalid_argument);
  CHECK_THROWS_AS(isAlgReconstructible(cycleGraph(3, 4), 4, Variant::Forest), std::invalid_argument);
  CHECK_THROWS_AS(isAlgReconstructible(singleEdge(4, 2), 4, Variant::Simple), std::invalid_argument);
}

TEST_CASE("all disconnected multigraphs are certified for small n") {
  for (int n = 3; n <= 4; ++n) {
    for (int d = 1; d <= 4; ++d) {
      for (const IsoClass& c : enumerate(n, d, Family::Multigraph)) {
        const Multigraph g = c.representative(n);
        if (g.isolatedCount() == 0 && g.isConnected()) continue;
        auto r = isAlgReconstructible(g, n, Variant::Full);
        REQUIRE(r.certificate);
        CHECK(r.certificate->verified);
      }
    }
  }
}

TEST_CASE("budgets and the weight-gcd reduction") {
  RecBudget tiny;
  tiny.maxSpanningSet = 100;
  CHECK_THROWS_AS(recSpanningSet(4, 8, Variant::Full, tiny), BudgetExceeded);
  CHECK_THROWS_AS(isAlgReconstructible(parseMultigraph("4; 1 2; 2 3; 3 4; 1 4; 1 3 4"), 4, Variant::Full, tiny),
                  BudgetExceeded);
  // 2 C_4 has degree 8 (166 products); C_4 has degree 4 (13 products)
  const Multigraph doubled = scale(cycleGraph(4, 4), 2);
  auto r = isAlgReconstructible(doubled, 4, Variant::Full, tiny);
  REQUIRE(r.certificate);
  CHECK(r.certificate->verified);
  CHECK(r.method.starts_with("weights divided by 2"));
  for (const auto& t : r.certificate->combination) {
    for (const auto& p : t.pieces) CHECK(p.representative().maxWeight() % 2 == 0);
  }
  // the same target by the full route
  auto full = isAlgReconstructible(doubled, 4, Variant::Full);
  REQUIRE(full.certificate);
  CHECK(full.method.starts_with("spanning set of 166 products"));
}

TEST_CASE("certificate text round-trips and tampering is caught") {
  auto r = isAlgReconstructible(cycleGraph(4, 4), 4, Variant::Full);
  REQUIRE(r.certificate);
  const std::string text = serialize(*r.certificate);
  CHECK(text.rfind("target " + canonicalForm(cycleGraph(4, 4)).toString() + " n 4 variant full\n", 0) == 0);
  MembershipCertificate back = parseCertificate(text);
  CHECK(back.target == r.certificate->target);
  CHECK(back.n == 4);
  CHECK((back.variant == Variant::Full));
  CHECK(back.combination == r.certificate->combination);
  CHECK(verifyCertificate(back));
  CHECK(serialize(back) == text);

  MembershipCertificate tampered = back;
  tampered.combination[0].coefficient += 1;
  CHECK_FALSE(verifyCertificate(tampered));
  MembershipCertificate wrongTarget = back;
  wrongTarget.target = cls("4; 1 2; 2 3; 3 4");
  CHECK_FALSE(verifyCertificate(wrongTarget));
  // a connected piece on all n vertices is not allowed
  MembershipCertificate cheat{back.target, 4, Variant::Full, {{{back.target}, 1}}, false};
  CHECK_FALSE(verifyCertificate(cheat));

  auto constant = parseCertificate("target 0 n 3 variant simple\n1 :\n");
  CHECK(constant.combination.size() == 1);
  CHECK(verifyCertificate(constant));
  CHECK_THROWS_AS(parseCertificate(""), ParseError);
  CHECK_THROWS_AS(parseCertificate("goal 3; 1 2 n 3 variant full\n"), ParseError);
  CHECK_THROWS_AS(parseCertificate("target 3; 1 2 n x variant full\n"), ParseError);
  CHECK_THROWS_AS(parseCertificate("target 3; 1 2 n 3 variant full\n1 2; 1 2\n"), ParseError);
  CHECK_THROWS_AS(parseCertificate("target 3; 1 2 n 3 variant full\nabc : 2; 1 2\n"), ParseError);
}

TEST_CASE("minimal generator counts for n = 3 and n = 4") {
  auto r3 = minimalGeneratorCounts(3, 5);
  CHECK(newByDegree(r3) == std::vector<std::size_t>{1, 1, 1, 0, 0});
  CHECK(r3.beta == 3);
  // the power sums p_1, p_2, p_3
  std::vector<IsoClass> gens;
  for (const auto& d : r3.perDegree) gens.insert(gens.end(), d.generators.begin(), d.generators.end());
  CHECK(gens == std::vector<IsoClass>{cls("2; 1 2"), cls("2; 1 2 2"), cls("2; 1 2 3")});

  auto r4 = minimalGeneratorCounts(4, 6);
  CHECK(r4.total() == 9);
  CHECK(r4.beta == 5);
  CHECK(r4.perDegree[5].newGenerators == 0);
  CHECK(newByDegree(r4) == newGeneratorsByEvaluation(4, 6, 80));
  for (const auto& d : r4.perDegree) {
    CHECK(d.decomposables + d.newGenerators == d.dimInv);
    CHECK(d.generators.size() == d.newGenerators);
    CHECK(d.dimInv == hilbertSeries(4, d.degree, CountVariant::Full)[d.degree]);
  }
}

TEST_CASE("generator counts for n = 5 agree with evaluation ranks") {
  auto r5 = minimalGeneratorCounts(5, 7);
  CHECK(newByDegree(r5) == newGeneratorsByEvaluation(5, 7, 200));
}

TEST_CASE("generator checkpoints resume to the same report") {
  const auto path = std::filesystem::temp_directory_path() / "graphinv_gen_checkpoint.json";
  std::filesystem::remove(path);
  GeneratorOptions opt;
  opt.checkpoint = path;
  auto first = minimalGeneratorCounts(4, 3, opt);
  CHECK(std::filesystem::exists(path));
  auto resumed = minimalGeneratorCounts(4, 6, opt);
  auto direct = minimalGeneratorCounts(4, 6);
  CHECK(newByDegree(resumed) == newByDegree(direct));
  CHECK(resumed.beta == direct.beta);
  for (std::size_t i = 0; i < direct.perDegree.size(); ++i) {
    CHECK(resumed.perDegree[i].generators == direct.perDegree[i].generators);
  }
  {
    std::ofstream out(path);
    out << "{\"n\": 4, \"degrees\": [";
  }
  CHECK_THROWS_AS(minimalGeneratorCounts(4, 6, opt), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(minimalGeneratorCounts(7, 2), BudgetExceeded);
}

TEST_CASE("tree_incidence_matrix examples") {
  // labeled n = 3: trees are the paths with centre c, forests the single edges
  auto l3 = treeIncidenceMatrix(3, true);
  REQUIRE(l3.rows() == 3);
  REQUIRE(l3.cols() == 3);
  for (std::size_t r = 0; r < 3; ++r) {
    const Multigraph forest = parseMultigraph(l3.rowLabels()[r]);
    for (std::size_t c = 0; c < 3; ++c) {
      const Multigraph tree = parseMultigraph(l3.colLabels()[c]);
      int centre = 0;
      while (tree.vertexDegree(centre) != 2) ++centre;
      CHECK(l3.get(r, c) == (forest.isIsolated(centre) ? 0 : 1));
    }
  }
  CHECK(rankRational(l3) == 3);

  auto u4 = treeIncidenceMatrix(4, false);
  REQUIRE(u4.rows() == 2);
  REQUIRE(u4.cols() == 2);
  auto at = [&](std::string_view f, std::string_view t) {
    auto r = std::find(u4.rowLabels().begin(), u4.rowLabels().end(), cls(f).toString()) - u4.rowLabels().begin();
    auto c = std::find(u4.colLabels().begin(), u4.colLabels().end(), cls(t).toString()) - u4.colLabels().begin();
    return u4.get(r, c);
  };
  const std::string p3 = "3; 1 2; 2 3", twoK2 = "4; 1 2; 3 4", p4 = "4; 1 2; 2 3; 3 4", star = "4; 1 2; 1 3; 1 4";
  CHECK(at(p3, p4) == 2);
  CHECK(at(p3, star) == 3);
  CHECK(at(twoK2, p4) == 1);
  CHECK(at(twoK2, star) == 0);

  CHECK(treeIncidenceMatrix(6, true).cols() == 1296);
  CHECK_THROWS_AS(treeIncidenceMatrix(9, true), BudgetExceeded);
  CHECK_THROWS_AS(treeIncidenceMatrix(15, false), BudgetExceeded);
  CHECK_THROWS_AS(treeIncidenceMatrix(2, false), std::invalid_argument);
}

TEST_CASE("incidence column sums are n - 1") {
  auto check = [](const SparseExactMatrix& m, int n) {
    std::vector<mpq_class> sums(m.cols());
    for (const auto& e : m.entries()) {
      CHECK(e.value > 0);
      sums[e.col] += e.value;
    }
    for (const auto& s : sums) CHECK(s == n - 1);
  };
  for (int n = 3; n <= 6; ++n) check(treeIncidenceMatrix(n, true), n);
  for (int n = 3; n <= 11; ++n) check(treeIncidenceMatrix(n, false), n);
}

TEST_CASE("the unlabeled matrix is the orbit aggregation of the labeled one") {
  for (int n = 3; n <= 6; ++n) {
    const auto lab = treeIncidenceMatrix(n, true);
    const auto unl = treeIncidenceMatrix(n, false);
    std::vector<IsoClass> rowClass, colClass;
    for (const auto& s : lab.rowLabels()) rowClass.push_back(canonicalForm(parseMultigraph(s)));
    for (const auto& s : lab.colLabels()) colClass.push_back(canonicalForm(parseMultigraph(s)));
    for (std::size_t uc = 0; uc < unl.cols(); ++uc) {
      const IsoClass t = cls(unl.colLabels()[uc]);
      const std::size_t rep = std::find(colClass.begin(), colClass.end(), t) - colClass.begin();
      REQUIRE(rep < colClass.size());
      std::map<std::string, mpq_class> aggregated;
      for (std::size_t r = 0; r < lab.rows(); ++r) {
        const mpq_class v = lab.get(r, rep);
        if (v != 0) aggregated[rowClass[r].toString()] += v;
      }
      for (std::size_t ur = 0; ur < unl.rows(); ++ur) {
        const auto it = aggregated.find(unl.rowLabels()[ur]);
        CHECK(unl.get(ur, uc) == (it == aggregated.end() ? mpq_class(0) : it->second));
      }
    }
  }
}

TEST_CASE("tree matrices have full row rank") {
  for (int n = 4; n <= 10; ++n) {
    auto r = matrixRankReport(treeIncidenceMatrix(n, false), LinalgMode::modular(2));
    CHECK(r.fullRowRank);
    CHECK(r.exact);
  }
  for (int n = 3; n <= 6; ++n) CHECK(matrixRankReport(treeIncidenceMatrix(n, true), LinalgMode::rational()).fullRowRank);
}

TEST_CASE("pendant submatrix") {
  auto p4 = pendantSubmatrix(4);
  REQUIRE(p4.rows() == 1);
  CHECK(p4.rowLabels()[0] == cls("3; 1 2; 2 3").toString());
  std::vector<mpq_class> row;
  for (const auto& [c, v] : p4.row(0)) row.push_back(v);
  std::sort(row.begin(), row.end());
  CHECK(row == std::vector<mpq_class>{2, 3});
  CHECK(pendantSubmatrixRank(4, LinalgMode::rational()).rank == 1);
  auto p5 = pendantSubmatrixRank(5, LinalgMode::rational());
  CHECK(p5.rows == 2);
  CHECK(p5.fullRowRank);
  for (int n = 6; n <= 10; ++n) CHECK(pendantSubmatrixRank(n, LinalgMode::modular(2)).fullRowRank);
}

TEST_CASE("tree conjecture: rank and membership agree") {
  auto r4 = checkTreeConjecture(4, TreeMethod::Rank, LinalgMode::rational());
  CHECK(r4.holds);
  CHECK(r4.rank.rank == 2);
  CHECK(r4.rank.rows == 2);
  for (int n = 4; n <= 7; ++n) {
    auto rank = checkTreeConjecture(n, TreeMethod::Rank, LinalgMode::modular(2));
    auto member = checkTreeConjecture(n, TreeMethod::Membership, LinalgMode::modular(2));
    CHECK(rank.holds == member.holds);
    CHECK(member.holds);
    CHECK(member.treesChecked == treesOnVertices(n).size());
  }
  CHECK(parseTreeMethod("membership") == TreeMethod::Membership);
  CHECK_THROWS_AS(parseTreeMethod("guess"), std::invalid_argument);
  CHECK_THROWS_AS(checkTreeConjecture(8, TreeMethod::Membership, LinalgMode::modular(2)), BudgetExceeded);
}

TEST_CASE("the forest product by p_1 is the transposed incidence matrix") {
  // By hand at n = 4: <P3> p_1 = 2 <P4> + 3 <K_{1,3}>, <2K2> p_1 = <P4>.
  const Algebra forest{Variant::Forest, 4};
  const OrbitSumPoly p1 = reduce(powerSum(1, 4), Variant::Forest);
  const IsoClass p4 = cls("4; 1 2; 2 3; 3 4"), star = cls("4; 1 2; 1 3; 1 4");
  auto a = OrbitSumPoly::basis(cls("3; 1 2; 2 3"), forest) * p1;
  CHECK(a.size() == 2);
  CHECK(a.coefficient(p4) == 2);
  CHECK(a.coefficient(star) == 3);
  auto b = OrbitSumPoly::basis(cls("4; 1 2; 3 4"), forest) * p1;
  CHECK(b.size() == 1);
  CHECK(b.coefficient(p4) == 1);
  for (int n = 3; n <= 8; ++n) CHECK(transposeRelationMismatches(n) == 0);
}

TEST_CASE("dims_report") {
  for (int d = 0; d <= 8; ++d) {
    auto r = dimsReport(4, d, Variant::Full, true);
    REQUIRE(r.dimRecExact);
    CHECK(*r.dimRecExact == r.dimInv);
  }
  for (auto variant : {Variant::Full, Variant::Simple}) {
    for (int d = 0; d <= 7; ++d) {
      auto r = dimsReport(5, d, variant, true);
      CHECK(*r.dimRecExact <= r.dimInv);
      CHECK(*r.dimRecExact <= r.fBound);
    }
  }
  CHECK(dimsReport(11, 18, Variant::Full, false).strict);
  CHECK(dimsReport(13, 17, Variant::Simple, false).strict);
  CHECK_FALSE(dimsReport(11, 18, Variant::Full, false).dimRecExact);
  CHECK_FALSE(dimsReport(4, 4, Variant::Full, false).strict);
  CHECK_THROWS_AS(dimsReport(4, 3, Variant::Forest, false), std::invalid_argument);
}

TEST_CASE("closure_audit at low degree") {
  auto a = closureAudit(4, 2);
  CHECK(a.violations == 0);
  CHECK(a.entries.size() == 5);
  for (const auto& e : a.entries) {
    CHECK(e.certified);
    CHECK(e.doubledCertified);
    CHECK(e.complementCertified);
  }
  CHECK(a.entries[0].m == IsoClass());
  CHECK(a.entries[0].complement == canonicalForm(completeGraph(4)));
  const auto p3 = std::find_if(a.entries.begin(), a.entries.end(), [](const auto& e) { return e.m == cls("3; 1 2; 2 3"); });
  REQUIRE(p3 != a.entries.end());
  CHECK(p3->complement == canonicalForm(complement(parseMultigraph("4; 1 2; 2 3"))));
}

TEST_CASE("octopus classification") {
  CHECK(isOctopus(pathGraph(6, 6)));
  CHECK(isOctopus(starGraph(5, 6)));
  CHECK(isOctopus(parseMultigraph("7; 1 2; 2 3; 1 4; 4 5; 1 6; 6 7")));
  // two adjacent centres with two leaves each
  const Multigraph h = parseMultigraph("6; 1 2; 1 3; 1 4; 2 5; 2 6");
  CHECK_FALSE(isOctopus(h));
  CHECK(isStaredOctopus(h));
  // two adjacent centres with two legs of length two each: diameter 5
  const Multigraph far = parseMultigraph("10; 1 2; 1 3; 3 4; 1 5; 5 6; 2 7; 7 8; 2 9; 9 10");
  CHECK(treeDiameter(far) == 5);
  CHECK_FALSE(isStaredOctopus(far));
  CHECK_THROWS_AS(isOctopus(cycleGraph(4, 4)), std::invalid_argument);

  EnumerationBudget eb;
  for (int n = 2; n <= 9; ++n) {
    for (const IsoClass& t : treesOnVertices(n, eb)) {
      const Multigraph g = t.representative();
      if (isOctopus(g)) CHECK(isStaredOctopus(g));
      if (treeDiameter(g) <= 4) CHECK(isStaredOctopus(g));
      if (treeDiameter(g) <= 3) CHECK(isStaredOctopus(g));
    }
  }
}

TEST_CASE("octopi on at most five vertices are certified") {
  for (int n = 3; n <= 5; ++n) {
    for (const IsoClass& t : treesOnVertices(n)) {
      if (!isStaredOctopus(t.representative())) continue;
      auto r = isAlgReconstructible(t.representative(), n, Variant::Full);
      REQUIRE(r.certificate);
      CHECK(r.certificate->verified);
    }
  }
}

TEST_CASE("hypomorphy harness") {
  auto h3 = hypomorphyHarness(3, 2);
  CHECK(h3.graphsExamined == 10);  // weight multisets of size 3 from {0, 1, 2}
  CHECK(h3.hypomorphicPairs == 0);
  CHECK(h3.evaluationMismatches == 0);
  // n = 2: every deck is two empty graphs, so all three graphs collide and
  // only constants have an isolated vertex
  auto h2 = hypomorphyHarness(2, 2);
  CHECK(h2.graphsExamined == 3);
  CHECK(h2.hypomorphicPairs == 3);
  CHECK(h2.evaluationChecks == 3);
  CHECK(h2.evaluationMismatches == 0);
}
