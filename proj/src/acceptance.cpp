#include "graphinv/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "graphinv/counting.hpp"
#include "graphinv/enumerate.hpp"
#include "graphinv/errors.hpp"
#include "graphinv/reconstruction.hpp"

namespace ginv {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "FAILED: ";
      else detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

// --- brute-force class counts: minimum relabeled weight vector over S_n ---

std::vector<Weight> minKey(const std::vector<Weight>& w, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Weight> best = w, cur(w.size());
  do {
    for (int v = 1; v < n; ++v) {
      for (int u = 0; u < v; ++u) cur[pairIndex(perm[u], perm[v])] = w[pairIndex(u, v)];
    }
    if (cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Every weight vector on n vertices with total d (entries <= cap).
void weightings(int n, int d, Weight cap, const std::function<void(const std::vector<Weight>&)>& fn) {
  std::vector<Weight> w(pairCount(n), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == w.size() || w.empty()) {
      if (w.empty()) {
        if (left == 0) fn(w);
        return;
      }
      if (static_cast<Weight>(left) <= cap) {
        w[i] = left;
        fn(w);
        w[i] = 0;
      }
      return;
    }
    for (int x = 0; x <= left && static_cast<Weight>(x) <= cap; ++x) {
      w[i] = x;
      rec(i + 1, left - x);
    }
    w[i] = 0;
  };
  rec(0, d);
}

std::size_t bruteCount(int n, int d, bool simple, bool connectedOnSupportN) {
  std::set<std::vector<Weight>> keys;
  weightings(n, d, simple ? 1 : static_cast<Weight>(std::max(d, 1)), [&](const std::vector<Weight>& w) {
    if (connectedOnSupportN) {
      Multigraph m(n, w);
      if (m.isEmpty() || m.supportSize() != n || !m.isConnected()) return;
    }
    keys.insert(minKey(w, n));
  });
  return keys.size();
}

CriterionResult countingOracles() {
  Check c;
  int compared = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto full = hilbertSeries(n, 6, CountVariant::Full);
    const auto simple = hilbertSeries(n, 6, CountVariant::Simple);
    for (int d = 0; d <= 6; ++d) {
      c.require(full[d] == bruteCount(n, d, false, false), "h(" + std::to_string(n) + "," + std::to_string(d) + ")");
      c.require(simple[d] == bruteCount(n, d, true, false), "h_simple(" + std::to_string(n) + "," + std::to_string(d) + ")");
      compared += 2;
    }
  }
  for (auto v : {CountVariant::Full, CountVariant::Simple}) {
    const CountTable t = connectedCounts(5, 5, v);
    for (int m = 2; m <= 5; ++m) {
      for (int d = 1; d <= 5; ++d) {
        c.require(t.at(m, d) == bruteCount(m, d, v == CountVariant::Simple, true),
                  "c(" + std::to_string(m) + "," + std::to_string(d) + ")");
        ++compared;
      }
    }
  }
  if (c.ok) c.detail << compared << " counts equal to brute force";
  return {1, "oracle equivalence (counting)", c.ok, c.detail.str(), 0, 120};
}

CriterionResult separation(int id, int n, int d, Variant v, double limit) {
  const DimsReport r = dimsReport(n, d, v, false);
  std::ostringstream s;
  s << "n=" << n << " d=" << d << " " << toString(v) << ": fBound=" << r.fBound << " dimInv=" << r.dimInv;
  return {id, "dimension separation, " + std::string(v == Variant::Full ? "multigraphs" : "simple graphs"), r.strict,
          s.str(), 0, limit};
}

std::string split(const GeneratorReport& r) {
  std::string s;
  for (const auto& d : r.perDegree) s += (s.empty() ? "" : ",") + std::to_string(d.newGenerators);
  return s;
}

CriterionResult generators() {
  Check c;
  const GeneratorReport r4 = minimalGeneratorCounts(4, 6);
  c.require(r4.total() == 9, "n=4 total " + std::to_string(r4.total()) + " != 9");
  c.require(r4.beta == 5, "n=4 beta " + std::to_string(r4.beta) + " != 5");
  c.require(r4.perDegree[5].newGenerators == 0, "n=4 has a new generator in degree 6");
  const GeneratorReport r5 = minimalGeneratorCounts(5, 9);
  c.require(r5.total() == 57, "n=5 total " + std::to_string(r5.total()) + " != 57");
  c.require(r5.beta == 9, "n=5 beta " + std::to_string(r5.beta) + " != 9");
  c.detail << (c.ok ? "" : " | ") << "n=4 by degree " << split(r4) << " (total " << r4.total() << ", beta " << r4.beta
           << "); n=5 by degree " << split(r5) << " (total " << r5.total() << ", beta " << r5.beta << ")";
  return {4, "minimal generators", c.ok, c.detail.str(), 0, 120};
}

CriterionResult invEqualsRec() {
  Check c;
  std::string dims;
  for (int d = 0; d <= 8; ++d) {
    const DimsReport r = dimsReport(4, d, Variant::Full, true);
    c.require(r.dimRecExact && *r.dimRecExact == r.dimInv, "degree " + std::to_string(d));
    dims += (d ? "," : "") + r.dimInv.get_str();
  }
  c.detail << (c.ok ? "" : " | ") << "dim Rec = dim Inv = " << dims << " for d = 0..8";
  return {5, "Inv_4 = Rec_4 evidence", c.ok, c.detail.str(), 0, 600};
}

CriterionResult treeConjecture() {
  Check c;
  const LinalgMode mode = LinalgMode::modular(2);
  std::string shapes;
  for (int n = 4; n <= 12; ++n) {
    const TreeConjectureResult r = checkTreeConjecture(n, TreeMethod::Rank, mode);
    c.require(r.holds, "rank deficient at n=" + std::to_string(n));
    if (n == 12) shapes = std::to_string(r.rank.rows) + "x" + std::to_string(r.rank.cols) + " " + r.rank.certificate;
  }
  for (int n = 4; n <= 7; ++n) {
    const auto rank = checkTreeConjecture(n, TreeMethod::Rank, mode);
    const auto member = checkTreeConjecture(n, TreeMethod::Membership, mode);
    c.require(rank.holds == member.holds, "methods disagree at n=" + std::to_string(n));
    c.require(member.holds, std::to_string(member.treesChecked - member.treesCertified) + " trees uncertified at n=" +
                                std::to_string(n));
  }
  c.detail << (c.ok ? "" : " | ") << "full row rank for n=4..12 (n=12: " << shapes
           << "); membership agrees for n=4..7";
  return {6, "tree conjecture", c.ok, c.detail.str(), 0, 1800};
}

CriterionResult labeledMatrix() {
  Check c;
  for (int n = 3; n <= 6; ++n) {
    const RankReport r = matrixRankReport(treeIncidenceMatrix(n, true), LinalgMode::rational());
    c.require(r.fullRowRank, "n=" + std::to_string(n));
    if (n == 6) c.detail << (c.ok ? "" : " | ") << "exact rational rank; n=6: " << r.rows << "x" << r.cols << " rank " << r.rank;
  }
  return {7, "labeled matrix", c.ok, c.detail.str(), 0, 600};
}

CriterionResult pendant() {
  Check c;
  for (int n = 4; n <= 12; ++n) {
    c.require(pendantSubmatrixRank(n, LinalgMode::modular(2)).fullRowRank, "n=" + std::to_string(n));
  }
  if (c.ok) c.detail << "full row rank for n=4..12";
  return {8, "pendant submatrix", c.ok, c.detail.str(), 0, 600};
}

// Certificate survives a text round trip and re-expands exactly.
bool certified(const Multigraph& g, int n, std::size_t& count) {
  const MembershipResult r = isAlgReconstructible(g, n, Variant::Full);
  if (!r.certificate || !r.certificate->verified) return false;
  ++count;
  return verifyCertificate(parseCertificate(serialize(*r.certificate)));
}

CriterionResult membershipCertificates() {
  Check c;
  std::size_t count = 0;
  for (int n = 4; n <= 5; ++n) {
    for (int k = 2; k <= n; ++k) {
      c.require(certified(pathGraph(k, n), n, count), "path on " + std::to_string(k) + " vertices, n=" + std::to_string(n));
      if (k >= 3) {
        c.require(certified(cycleGraph(k, n), n, count), "cycle on " + std::to_string(k) + " vertices, n=" + std::to_string(n));
      }
    }
  }
  std::size_t disconnected = 0;
  for (int n = 3; n <= 5; ++n) {
    for (int d = 1; d <= 5; ++d) {
      for (const IsoClass& cls : enumerate(n, d, Family::Multigraph)) {
        const Multigraph g = cls.representative(n);
        if (g.isolatedCount() == 0 && g.isConnected()) continue;
        ++disconnected;
        c.require(certified(g, n, count), "disconnected " + toText(g));
      }
    }
  }
  std::size_t octopi = 0;
  for (int n = 3; n <= 6; ++n) {
    for (const IsoClass& t : treesOnVertices(n)) {
      const Multigraph g = t.representative();
      if (!isOctopus(g) && !isStaredOctopus(g)) continue;
      ++octopi;
      c.require(certified(g, n, count), "octopus " + toText(g));
    }
  }
  c.detail << (c.ok ? "" : " | ") << count << " certificates verified (" << disconnected << " disconnected, " << octopi
           << " octopi)";
  return {9, "membership certificates", c.ok, c.detail.str(), 0, 1200};
}

CriterionResult closure() {
  const ClosureAudit a = closureAudit(4, 4);
  std::size_t certifiedCount = 0;
  for (const auto& e : a.entries) certifiedCount += e.certified;
  std::ostringstream s;
  s << certifiedCount << " of " << a.entries.size() << " classes certified, " << a.violations << " closure violations";
  return {10, "closure audit", a.violations == 0 && certifiedCount > 0, s.str(), 0, 1200};
}

// --- property suites ---

OrbitSumPoly randomPoly(std::mt19937_64& rng, const std::vector<IsoClass>& basis, Algebra alg) {
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3), count(1, 3);
  OrbitSumPoly p(alg);
  for (int k = count(rng); k > 0; --k) p.addTerm(basis[pick(rng)], mpq_class(coef(rng), 1 + rng() % 2));
  return p;
}

Multigraph randomGraph(std::mt19937_64& rng, int n, Weight maxW) {
  Multigraph m(n);
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (rng() % 2) m.setWeight(u, v, 1 + static_cast<Weight>(rng() % maxW));
    }
  }
  return m;
}

CriterionResult properties() {
  Check c;
  std::mt19937_64 rng(20260415);
  const Algebra alg{Variant::Full, 4};
  std::vector<IsoClass> basis;
  for (int d = 0; d <= 3; ++d) {
    auto b = enumerate(4, d, Family::Multigraph);
    basis.insert(basis.end(), b.begin(), b.end());
  }
  int algebraCases = 0;
  for (int i = 0; i < 120; ++i, ++algebraCases) {
    const auto a = randomPoly(rng, basis, alg), b = randomPoly(rng, basis, alg), q = randomPoly(rng, basis, alg);
    c.require(a * b == b * a, "commutativity");
    c.require((a * b) * q == a * (b * q), "associativity");
    c.require(derivation(a * b) == derivation(a) * b + a * derivation(b), "Leibniz");
  }
  int deckCases = 0;
  for (int i = 0; i < 120; ++i, ++deckCases) {
    const int n = 4 + static_cast<int>(rng() % 2);
    const Multigraph g = randomGraph(rng, n, 2);
    const auto small = enumerate(n - 1, 1 + static_cast<int>(rng() % 3), Family::Multigraph);
    const IsoClass m = small[rng() % small.size()];
    const OrbitSumPoly p = OrbitSumPoly::basis(m, {Variant::Full, n});
    mpq_class sum = 0;
    for (int v = 0; v < n; ++v) sum += evaluate(p, WeightedGraph::fromMultigraph(deleteVertex(g, v)));
    c.require(sum == (n - m.vertices()) * evaluate(p, WeightedGraph::fromMultigraph(g)), "deck identity");
  }
  std::size_t separatedPairs = 0;
  for (int n = 2; n <= 5; ++n) {
    std::vector<IsoClass> simple;
    for (int d = 0; d <= static_cast<int>(pairCount(n)); ++d) {
      auto b = enumerate(n, d, Family::Simple);
      simple.insert(simple.end(), b.begin(), b.end());
    }
    for (std::size_t i = 0; i < simple.size(); ++i) {
      for (std::size_t j = i + 1; j < simple.size(); ++j) {
        const IsoClass& big = simple[i].edges() >= simple[j].edges() ? simple[i] : simple[j];
        const OrbitSumPoly p = OrbitSumPoly::basis(big, {Variant::Full, n});
        c.require(evaluate(p, WeightedGraph::fromMultigraph(simple[i].representative(n))) !=
                      evaluate(p, WeightedGraph::fromMultigraph(simple[j].representative(n))),
                  "separation");
        ++separatedPairs;
      }
    }
  }
  int canonCases = 0;
  for (int i = 0; i < 250; ++i, ++canonCases) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Multigraph g = randomGraph(rng, n, 3);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    c.require(canonicalForm(permute(g, perm)) == canonicalForm(g), "canonical form invariance");
  }
  c.detail << (c.ok ? "" : " | ") << algebraCases << " product/Leibniz cases, " << deckCases << " deck cases, "
           << separatedPairs << " separated pairs, " << canonCases << " relabelings";
  return {11, "property suites", c.ok, c.detail.str(), 0, 300};
}

CriterionResult sop() {
  Check c;
  for (int n = 3; n <= 10; ++n) {
    const auto cn2 = static_cast<int>(pairCount(n)), cn12 = static_cast<int>(pairCount(n - 1));
    c.require(n + cn12 - 1 == cn2, "parameter identity n=" + std::to_string(n));
    c.require(sopNumerator(n, 0).parameterCount == cn2, "parameter count n=" + std::to_string(n));
  }
  for (int n = 3; n <= 6; ++n) {
    c.require(sopNumerator(n, 20).allNonnegative, "negative numerator coefficient n=" + std::to_string(n));
  }
  if (c.ok) c.detail << "identity for n=3..10; numerators nonnegative to degree 20 for n=3..6";
  return {12, "sop numerator", c.ok, c.detail.str(), 0, 120};
}

CriterionResult transposeRelation() {
  std::size_t bad = 0;
  for (int n = 3; n <= 8; ++n) bad += transposeRelationMismatches(n);
  return {13, "transpose relation", bad == 0,
          std::to_string(bad) + " mismatching entries for n=3..8 (<f> p_1 = sum_t a_{f,t} <t>; "
                                "D<t> = sum_f |orb t|/|orb f| a_{f,t} <f>)",
          0, 300};
}

}  // namespace

std::vector<CriterionResult> runAcceptance(const std::vector<int>& only,
                                           const std::function<void(const CriterionResult&)>& onResult) {
  const std::vector<std::function<CriterionResult()>> all{
      countingOracles,
      [] { return separation(2, 11, 18, Variant::Full, 300); },
      [] { return separation(3, 13, 17, Variant::Simple, 300); },
      generators,
      invEqualsRec,
      treeConjecture,
      labeledMatrix,
      pendant,
      membershipCertificates,
      closure,
      properties,
      sop,
      transposeRelation,
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = all[i]();
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0, 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.limitSeconds > 0 && r.seconds > r.limitSeconds) {
      r.passed = false;
      r.detail += " | over the time limit of " + std::to_string(static_cast<int>(r.limitSeconds)) + " s";
    }
    if (onResult) onResult(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string formatResult(const CriterionResult& r) {
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.1f", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " " + (r.id < 10 ? " " : "") + std::to_string(r.id) + "  " + r.title +
         ": " + r.detail + " (" + seconds + " s)";
}

}  // namespace ginv
