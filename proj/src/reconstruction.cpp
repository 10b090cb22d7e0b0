#include "graphinv/reconstruction.hpp"

#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "graphinv/counting.hpp"
#include "graphinv/enumerate.hpp"
#include "graphinv/errors.hpp"
#include "graphinv/parallel.hpp"

namespace ginv {

namespace {

bool pieceLess(const IsoClass& a, const IsoClass& b) {
  if (a.edges() != b.edges()) return a.edges() < b.edges();
  return a < b;
}

std::vector<IsoClass> allPieces(int n, int d, Variant variant) {
  std::vector<IsoClass> out;
  for (int e = 1; e <= d; ++e) {
    auto p = connectedPieces(n, e, variant);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

// Counts multisets of pieces with total edge weight d, stopping past `limit`.
std::size_t countMultisets(const std::vector<IsoClass>& pieces, int d, std::size_t limit) {
  // ways[w] over pieces processed so far (unbounded knapsack)
  std::vector<std::size_t> ways(d + 1, 0);
  ways[0] = 1;
  for (const IsoClass& p : pieces) {
    const int e = static_cast<int>(p.edges());
    for (int w = e; w <= d; ++w) ways[w] = std::min(limit + 1, ways[w] + ways[w - e]);
  }
  return ways[d];
}

using Emit = std::function<void(const std::vector<IsoClass>&, const OrbitSumPoly&)>;

// Depth-first walk over sorted multisets; each node multiplies its parent's
// product by one more piece.
void walk(const std::vector<IsoClass>& pieces, const std::vector<OrbitSumPoly>& basis, std::size_t start, int remaining,
          std::uint64_t cap, std::vector<IsoClass>& chosen, const OrbitSumPoly& partial, const Emit& emit) {
  for (std::size_t i = start; i < pieces.size(); ++i) {
    const int e = static_cast<int>(pieces[i].edges());
    if (e > remaining) break;
    OrbitSumPoly next = multiply(partial, basis[i], cap);
    chosen.push_back(pieces[i]);
    if (e == remaining) {
      emit(chosen, next);
    } else {
      walk(pieces, basis, i, remaining - e, cap, chosen, next, emit);
    }
    chosen.pop_back();
  }
}

struct SpanningWalk {
  std::vector<IsoClass> pieces;
  std::vector<OrbitSumPoly> basis;
  Algebra alg;
  int d;
};

SpanningWalk prepareWalk(int n, int d, Variant variant, const RecBudget& budget) {
  if (n < 3) throw std::invalid_argument("spanning sets need n >= 3");
  if (d < 0) throw std::invalid_argument("negative degree");
  SpanningWalk w{allPieces(n, d, variant), {}, Algebra{variant, n}, d};
  const std::size_t count = d == 0 ? 1 : countMultisets(w.pieces, d, budget.maxSpanningSet);
  if (count > budget.maxSpanningSet) {
    throw BudgetExceeded("spanning set at n=" + std::to_string(n) + ", d=" + std::to_string(d) + " has more than " +
                         std::to_string(budget.maxSpanningSet) + " products");
  }
  for (const auto& p : w.pieces) w.basis.push_back(OrbitSumPoly::basis(p, w.alg));
  return w;
}

void walkFrom(const SpanningWalk& w, std::size_t first, const Emit& emit) {
  std::vector<IsoClass> chosen{w.pieces[first]};
  const int e = static_cast<int>(w.pieces[first].edges());
  if (e == w.d) {
    emit(chosen, w.basis[first]);
  } else if (e < w.d) {
    walk(w.pieces, w.basis, first, w.d - e, w.d, chosen, w.basis[first], emit);
  }
}

void walkAll(const SpanningWalk& w, const Emit& emit) {
  if (w.d == 0) {
    emit({}, OrbitSumPoly::constant(1, w.alg));
    return;
  }
  for (std::size_t i = 0; i < w.pieces.size(); ++i) walkFrom(w, i, emit);
}

bool isPiece(const IsoClass& c, int n, Variant v) {
  return c.vertices() >= 2 && c.vertices() <= n - 1 && c.representative().isConnected() && admissible(c, v);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Weight weightGcd(const Multigraph& m) {
  Weight g = 0;
  for (Weight w : m.pairWeights()) g = std::gcd(g, w);
  return g;
}

MembershipCertificate singleTerm(const IsoClass& target, int n, Variant v, std::vector<IsoClass> pieces) {
  MembershipCertificate c{target, n, v, {{std::move(pieces), 1}}, false};
  c.verified = verifyCertificate(c);
  if (!c.verified) throw std::logic_error("trivial certificate failed verification");
  return c;
}

// Full spanning-set solve: rows are the products, columns the classes met.
MembershipResult solveBySpanningSet(const IsoClass& target, int n, Variant variant, const LinalgMode* mode,
                                    const RecBudget& budget) {
  const SpanningWalk w = prepareWalk(n, static_cast<int>(target.edges()), variant, budget);
  std::unordered_map<IsoClass, std::uint32_t, IsoClassHash> index;
  auto col = [&](const IsoClass& c) { return index.try_emplace(c, static_cast<std::uint32_t>(index.size())).first->second; };
  std::vector<std::vector<IsoClass>> products;
  std::vector<SparseRow> rows;
  walkAll(w, [&](const std::vector<IsoClass>& pieces, const OrbitSumPoly& p) {
    SparseRow row;
    row.reserve(p.size());
    for (const auto& [cls, c] : p.terms()) row.emplace_back(col(cls), c);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    products.push_back(pieces);
    rows.push_back(std::move(row));
  });
  const SparseRow targetRow{{col(target), mpq_class(1)}};
  const LinalgMode chosen = mode ? *mode : LinalgMode::automatic(index.size());
  SolveResult s = solveInSpan(rows, targetRow, index.size(), chosen);
  MembershipResult result;
  result.method = "spanning set of " + std::to_string(rows.size()) + " products, " + chosen.describe();
  result.annotation = s.annotation;
  if (!s.coefficients) return result;
  MembershipCertificate cert{target, n, variant, {}, false};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if ((*s.coefficients)[i] != 0) cert.combination.push_back({products[i], (*s.coefficients)[i]});
  }
  cert.verified = verifyCertificate(cert);
  if (!cert.verified) throw std::logic_error("membership certificate failed re-expansion");
  result.certificate = std::move(cert);
  return result;
}

}  // namespace

std::vector<IsoClass> connectedPieces(int n, int edges, Variant variant) {
  if (n < 3 || edges < 1) return {};
  std::vector<IsoClass> out;
  switch (variant) {
    case Variant::Full: out = enumerate(n - 1, edges, Family::ConnectedMultigraph); break;
    case Variant::Simple: out = enumerate(n - 1, edges, Family::ConnectedSimple); break;
    case Variant::Forest:
      if (edges + 1 <= n - 1) out = enumerate(n - 1, edges, Family::Tree);
      break;
  }
  std::erase_if(out, [&](const IsoClass& c) { return !isPiece(c, n, variant); });
  std::sort(out.begin(), out.end(), pieceLess);
  return out;
}

std::vector<SpanningElement> recSpanningSet(int n, int d, Variant variant, const RecBudget& budget) {
  const SpanningWalk w = prepareWalk(n, d, variant, budget);
  if (d == 0) return {{{}, OrbitSumPoly::constant(1, w.alg)}};
  std::vector<std::size_t> firsts(w.pieces.size());
  std::iota(firsts.begin(), firsts.end(), 0);
  auto chunks = parallelMap(firsts, [&](std::size_t first) {
    std::vector<SpanningElement> out;
    walkFrom(w, first, [&](const std::vector<IsoClass>& pieces, const OrbitSumPoly& p) { out.push_back({pieces, p}); });
    return out;
  });
  std::vector<SpanningElement> all;
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(all));
  return all;
}

OrbitSumPoly expandPieces(const std::vector<IsoClass>& pieces, Algebra alg) {
  std::uint64_t total = 0;
  for (const auto& p : pieces) total += p.edges();
  OrbitSumPoly product = OrbitSumPoly::constant(1, alg);
  for (const auto& p : pieces) product = multiply(product, OrbitSumPoly::basis(p, alg), total);
  return product;
}

bool verifyCertificate(const MembershipCertificate& cert) {
  if (cert.n < 3 || cert.target.vertices() > cert.n) return false;
  const Algebra alg{cert.variant, cert.n};
  std::vector<const CertificateTerm*> terms;
  for (const auto& t : cert.combination) {
    for (const auto& p : t.pieces) {
      if (!isPiece(p, cert.n, cert.variant)) return false;
    }
    if (!std::is_sorted(t.pieces.begin(), t.pieces.end(), pieceLess)) return false;
    terms.push_back(&t);
  }
  // Sorted terms share prefixes; keep the prefix products of the previous term.
  std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) { return a->pieces < b->pieces; });
  OrbitSumPoly sum(alg);
  std::vector<IsoClass> prevPieces;
  std::vector<OrbitSumPoly> prefix{OrbitSumPoly::constant(1, alg)};
  for (const CertificateTerm* t : terms) {
    std::uint64_t total = 0;
    for (const auto& p : t->pieces) total += p.edges();
    std::size_t common = 0;
    while (common < prevPieces.size() && common < t->pieces.size() && prevPieces[common] == t->pieces[common]) ++common;
    prefix.resize(common + 1);
    for (std::size_t i = common; i < t->pieces.size(); ++i) {
      prefix.push_back(multiply(prefix.back(), OrbitSumPoly::basis(t->pieces[i], alg), total));
    }
    prevPieces = t->pieces;
    sum += t->coefficient * prefix.back();
  }
  return sum == OrbitSumPoly::basis(cert.target, alg);
}

std::string serialize(const MembershipCertificate& cert) {
  std::ostringstream out;
  out << "target " << cert.target.toString() << " n " << cert.n << " variant " << toString(cert.variant) << '\n';
  for (const auto& t : cert.combination) {
    out << t.coefficient.get_str() << " :";
    for (std::size_t i = 0; i < t.pieces.size(); ++i) out << (i ? " | " : " ") << t.pieces[i].toString();
    out << '\n';
  }
  return out.str();
}

MembershipCertificate parseCertificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  MembershipCertificate cert;
  bool header = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (!header) {
      if (!line.starts_with("target ")) throw ParseError("certificate must start with a target line");
      const auto v = line.rfind(" variant "), n = line.rfind(" n ", v);
      if (v == std::string::npos || n == std::string::npos || n < 7) throw ParseError("malformed certificate header");
      try {
        cert.target = IsoClass::parse(line.substr(7, n - 7));
        cert.n = std::stoi(line.substr(n + 3, v - n - 3));
        cert.variant = parseVariant(trim(line.substr(v + 9)));
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("malformed certificate header: ") + e.what());
      }
      header = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("certificate line without ':'");
    CertificateTerm t;
    try {
      t.coefficient = mpq_class(trim(line.substr(0, colon)));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad certificate coefficient: " + line.substr(0, colon));
    }
    t.coefficient.canonicalize();
    std::string rest = line.substr(colon + 1);
    std::size_t pos = 0;
    while (!trim(rest).empty()) {
      pos = rest.find('|');
      t.pieces.push_back(IsoClass::parse(trim(rest.substr(0, pos))));
      rest = pos == std::string::npos ? "" : rest.substr(pos + 1);
    }
    std::sort(t.pieces.begin(), t.pieces.end(), pieceLess);
    cert.combination.push_back(std::move(t));
  }
  if (!header) throw ParseError("empty certificate");
  return cert;
}

namespace {

MembershipResult membership(const Multigraph& m, int n, Variant variant, const LinalgMode* mode,
                            const RecBudget& budget) {
  if (n < 3) throw std::invalid_argument("membership needs n >= 3");
  if (m.supportSize() > n) throw std::invalid_argument("graph support exceeds the ambient vertex count");
  const IsoClass target = canonicalForm(m);
  if (!admissible(target, variant)) throw std::invalid_argument("graph vanishes in the " + toString(variant) + " algebra");
  if (target.edges() == 0) return {singleTerm(target, n, variant, {}), "constant", ""};
  if (target.vertices() <= n - 1 && target.representative().isConnected()) {
    return {singleTerm(target, n, variant, {target}), "single connected piece", ""};
  }
  try {
    return solveBySpanningSet(target, n, variant, mode, budget);
  } catch (const BudgetExceeded&) {
    const Weight k = weightGcd(m);
    if (variant != Variant::Full || k <= 1) throw;
    Multigraph reduced(m.order());
    for (const Edge& e : m.edges()) reduced.setWeight(e.u, e.v, e.w / k);
    MembershipResult sub = membership(reduced, n, variant, mode, budget);
    if (!sub.certificate) {
      throw BudgetExceeded("spanning set too large and the reduced graph is not certified");
    }
    MembershipCertificate cert{target, n, variant, {}, false};
    for (const auto& t : sub.certificate->combination) {
      CertificateTerm scaled{{}, t.coefficient};
      for (const auto& p : t.pieces) scaled.pieces.push_back(canonicalForm(scale(p.representative(), k)));
      std::sort(scaled.pieces.begin(), scaled.pieces.end(), pieceLess);
      cert.combination.push_back(std::move(scaled));
    }
    cert.verified = verifyCertificate(cert);
    if (!cert.verified) throw std::logic_error("scaled certificate failed re-expansion");
    return {std::move(cert), "weights divided by " + std::to_string(k) + ", then " + sub.method, ""};
  }
}

}  // namespace

MembershipResult isAlgReconstructible(const Multigraph& m, int n, Variant variant, const LinalgMode& mode,
                                      const RecBudget& budget) {
  return membership(m, n, variant, &mode, budget);
}

MembershipResult isAlgReconstructible(const Multigraph& m, int n, Variant variant, const RecBudget& budget) {
  return membership(m, n, variant, nullptr, budget);
}

// ---------------------------------------------------------------------------
// Minimal generators

std::size_t GeneratorReport::total() const {
  std::size_t t = 0;
  for (const auto& d : perDegree) t += d.newGenerators;
  return t;
}

namespace {

using nlohmann::json;

json toJson(const GeneratorDegree& g) {
  json gens = json::array();
  for (const auto& c : g.generators) gens.push_back(c.toString());
  return {{"degree", g.degree},
          {"dimInv", g.dimInv},
          {"decomposables", g.decomposables},
          {"newGenerators", g.newGenerators},
          {"generators", gens},
          {"rankCertificate", g.rankCertificate}};
}

GeneratorDegree fromJson(const json& j) {
  GeneratorDegree g;
  g.degree = j.at("degree").get<int>();
  g.dimInv = j.at("dimInv").get<std::size_t>();
  g.decomposables = j.at("decomposables").get<std::size_t>();
  g.newGenerators = j.at("newGenerators").get<std::size_t>();
  for (const auto& s : j.at("generators")) g.generators.push_back(IsoClass::parse(s.get<std::string>()));
  g.rankCertificate = j.at("rankCertificate").get<std::string>();
  if (g.generators.size() != g.newGenerators || g.decomposables + g.newGenerators != g.dimInv) {
    throw ParseError("inconsistent generator checkpoint entry");
  }
  return g;
}

std::vector<GeneratorDegree> loadCheckpoint(const std::filesystem::path& path, int n) {
  std::ifstream in(path);
  if (!in) return {};
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("unreadable generator checkpoint: " + std::string(e.what()));
  }
  if (j.at("n").get<int>() != n) throw std::invalid_argument("checkpoint belongs to another n");
  std::vector<GeneratorDegree> out;
  for (const auto& d : j.at("degrees")) out.push_back(fromJson(d));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].degree != static_cast<int>(i) + 1) throw ParseError("generator checkpoint degrees out of order");
  }
  return out;
}

void saveCheckpoint(const std::filesystem::path& path, int n, const std::vector<GeneratorDegree>& done) {
  json degrees = json::array();
  for (const auto& d : done) degrees.push_back(toJson(d));
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << json{{"n", n}, {"degrees", degrees}}.dump(1) << '\n';
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

GeneratorDegree generatorDegree(int n, int d, const std::vector<GeneratorDegree>& earlier, int primes) {
  const Algebra alg{Variant::Full, n};
  const std::vector<IsoClass> cols = enumerate(n, d, Family::Multigraph);
  std::unordered_map<IsoClass, std::uint32_t, IsoClassHash> index;
  for (const auto& c : cols) index.emplace(c, static_cast<std::uint32_t>(index.size()));

  std::vector<SparseRow> rows;
  for (int e = 1; 2 * e <= d; ++e) {
    const auto& gens = earlier[e - 1].generators;
    if (gens.empty()) continue;
    const std::vector<IsoClass> cofactors = enumerate(n, d - e, Family::Multigraph);
    for (const auto& g : gens) {
      for (const auto& b : cofactors) {
        SparseRow row;
        for (const auto& [cls, c] : basisProduct(g, b, alg)) row.emplace_back(index.at(cls), mpq_class(c));
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        rows.push_back(std::move(row));
      }
    }
  }

  // Small degrees are done over Q; larger ones modulo several primes.
  std::vector<std::optional<std::uint64_t>> fields;
  if (cols.size() < 100) {
    fields.push_back(std::nullopt);
  } else {
    for (std::uint64_t p : randomPrimes(primes, 0x5eed)) fields.push_back(p);
  }
  std::vector<IncrementalEchelon> echelons;
  std::vector<std::size_t> ranks;
  for (const auto& f : fields) {
    IncrementalEchelon e(cols.size(), f);
    for (const auto& r : rows) {
      if (e.rank() == cols.size()) break;
      e.insert(r);
    }
    ranks.push_back(e.rank());
    echelons.push_back(std::move(e));
  }
  const auto best = std::max_element(ranks.begin(), ranks.end()) - ranks.begin();
  GeneratorDegree out;
  out.degree = d;
  out.dimInv = cols.size();
  out.decomposables = ranks[best];
  if (!fields[0]) {
    out.rankCertificate = "exact rational rank";
  } else {
    const bool agree = std::all_of(ranks.begin(), ranks.end(), [&](std::size_t r) { return r == ranks[0]; });
    out.rankCertificate = out.decomposables == cols.size()
                              ? "full rank modulo a prime (exact)"
                              : std::string("rank modulo ") + std::to_string(fields.size()) + " primes" +
                                    (agree ? ", all agreeing (Monte Carlo)" : ", maximum taken (primes disagreed)");
  }
  IncrementalEchelon& e = echelons[best];
  for (std::uint32_t c = 0; c < cols.size() && e.rank() < cols.size(); ++c) {
    if (e.insert(SparseRow{{c, mpq_class(1)}})) out.generators.push_back(cols[c]);
  }
  out.newGenerators = out.generators.size();
  return out;
}

}  // namespace

GeneratorReport minimalGeneratorCounts(int n, int dMax, const GeneratorOptions& options) {
  if (n < 2) throw std::invalid_argument("generator counts need n >= 2");
  if (n > options.budget.maxGeneratorVertices) {
    throw BudgetExceeded("generator runs limited to n <= " + std::to_string(options.budget.maxGeneratorVertices));
  }
  std::vector<GeneratorDegree> done;
  if (!options.checkpoint.empty()) done = loadCheckpoint(options.checkpoint, n);
  if (static_cast<int>(done.size()) > dMax) done.resize(dMax);
  for (int d = static_cast<int>(done.size()) + 1; d <= dMax; ++d) {
    done.push_back(generatorDegree(n, d, done, options.primes));
    if (!options.checkpoint.empty()) saveCheckpoint(options.checkpoint, n, done);
  }
  GeneratorReport report{n, std::move(done), 0};
  for (const auto& d : report.perDegree) {
    if (d.newGenerators > 0) report.beta = d.degree;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tree incidence matrices

namespace {

struct TreeIncidence {
  std::vector<IsoClass> rows, cols;
  SparseExactMatrix matrix;
};

Multigraph disjointUnion(const IsoClass& a, const IsoClass& b, int n) {
  Multigraph g(n);
  for (const Edge& e : a.representative().edges()) g.setWeight(e.u, e.v, e.w);
  const int shift = a.vertices();
  for (const Edge& e : b.representative().edges()) g.setWeight(e.u + shift, e.v + shift, e.w);
  return g;
}

std::vector<std::string> labelsOf(const std::vector<IsoClass>& classes) {
  std::vector<std::string> out;
  for (const auto& c : classes) out.push_back(c.toString());
  return out;
}

TreeIncidence unlabeledIncidence(int n, const RecBudget& budget) {
  if (n < 3) throw std::invalid_argument("tree incidence matrices need n >= 3");
  if (n > budget.maxUnlabeledTreeVertices) {
    throw BudgetExceeded("unlabeled tree matrices limited to n <= " + std::to_string(budget.maxUnlabeledTreeVertices));
  }
  EnumerationBudget eb;
  eb.maxForestVertices = std::max(eb.maxForestVertices, n);
  TreeIncidence t;
  t.cols = treesOnVertices(n, eb);
  // Rows: one tree on n-1 vertices, or two trees with a + b = n, a, b >= 2.
  t.rows = treesOnVertices(n - 1, eb);
  for (int a = 2; 2 * a <= n; ++a) {
    const auto small = treesOnVertices(a, eb), large = treesOnVertices(n - a, eb);
    for (std::size_t i = 0; i < small.size(); ++i) {
      for (std::size_t j = a == n - a ? i : 0; j < large.size(); ++j) {
        t.rows.push_back(canonicalForm(disjointUnion(small[i], large[j], n)));
      }
    }
  }
  std::sort(t.rows.begin(), t.rows.end());
  std::sort(t.cols.begin(), t.cols.end());
  std::unordered_map<IsoClass, std::size_t, IsoClassHash> rowIndex;
  for (std::size_t i = 0; i < t.rows.size(); ++i) rowIndex.emplace(t.rows[i], i);
  if (rowIndex.size() != t.rows.size()) throw std::logic_error("duplicate forest row");
  t.matrix = SparseExactMatrix(labelsOf(t.rows), labelsOf(t.cols));
  for (std::size_t c = 0; c < t.cols.size(); ++c) {
    const Multigraph tree = t.cols[c].representative();
    for (const Edge& e : tree.edges()) {
      Multigraph f = tree;
      f.setWeight(e.u, e.v, 0);
      auto it = rowIndex.find(canonicalForm(f));
      if (it == rowIndex.end()) throw std::logic_error("edge deletion left the generated forest family");
      t.matrix.add(it->second, c, 1);
    }
  }
  return t;
}

// Labeled trees on {0..n-1} as bit masks over pair indices.
std::vector<std::uint32_t> labeledTrees(int n) {
  std::vector<std::uint32_t> out;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    // Prüfer decoding
    std::vector<int> degree(n, 1);
    for (int x : seq) ++degree[x];
    std::uint32_t mask = 0;
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 0; v < n; ++v) {
      if (degree[v] == 1) leaves.push(v);
    }
    for (int x : seq) {
      const int leaf = leaves.top();
      leaves.pop();
      mask |= 1u << pairIndex(leaf, x);
      if (--degree[x] == 1) leaves.push(x);
    }
    const int u = leaves.top();
    leaves.pop();
    mask |= 1u << pairIndex(u, leaves.top());
    out.push_back(mask);
    int k = n - 3;
    while (k >= 0 && seq[k] == n - 1) seq[k--] = 0;
    if (k < 0) break;
    ++seq[k];
  }
  return out;
}

std::string maskText(std::uint32_t mask, int n) {
  Multigraph g(n);
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (mask >> pairIndex(u, v) & 1) g.setWeight(u, v, 1);
    }
  }
  return toText(g);
}

SparseExactMatrix labeledIncidence(int n, const RecBudget& budget) {
  if (n < 3) throw std::invalid_argument("tree incidence matrices need n >= 3");
  if (n > budget.maxLabeledTreeVertices) {
    throw BudgetExceeded("labeled tree matrices limited to n <= " + std::to_string(budget.maxLabeledTreeVertices));
  }
  const auto trees = labeledTrees(n);
  std::set<std::uint32_t> forests;
  for (std::uint32_t t : trees) {
    for (std::uint32_t rest = t; rest; rest &= rest - 1) forests.insert(t & ~(rest & -rest));
  }
  std::vector<std::uint32_t> rows(forests.begin(), forests.end());
  std::vector<std::string> rl, cl;
  for (auto f : rows) rl.push_back(maskText(f, n));
  for (auto t : trees) cl.push_back(maskText(t, n));
  SparseExactMatrix m(std::move(rl), std::move(cl));
  for (std::size_t c = 0; c < trees.size(); ++c) {
    for (std::uint32_t rest = trees[c]; rest; rest &= rest - 1) {
      const std::uint32_t f = trees[c] & ~(rest & -rest);
      m.set(std::lower_bound(rows.begin(), rows.end(), f) - rows.begin(), c, 1);
    }
  }
  return m;
}

}  // namespace

SparseExactMatrix treeIncidenceMatrix(int n, bool labeled, const RecBudget& budget) {
  return labeled ? labeledIncidence(n, budget) : unlabeledIncidence(n, budget).matrix;
}

SparseExactMatrix pendantSubmatrix(int n, const RecBudget& budget) {
  TreeIncidence t = unlabeledIncidence(n, budget);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].vertices() == n - 1) keep.push_back(i);
  }
  return t.matrix.selectRows(keep);
}

RankReport matrixRankReport(const SparseExactMatrix& m, const LinalgMode& mode) {
  RankResult r = rank(m, mode);
  return {m.rows(), m.cols(), r.rank, r.rank == m.rows(), r.exact, r.certificate};
}

RankReport pendantSubmatrixRank(int n, const LinalgMode& mode, const RecBudget& budget) {
  return matrixRankReport(pendantSubmatrix(n, budget), mode);
}

TreeMethod parseTreeMethod(const std::string& s) {
  if (s == "rank") return TreeMethod::Rank;
  if (s == "membership") return TreeMethod::Membership;
  throw std::invalid_argument("unknown tree method: " + s);
}

TreeConjectureResult checkTreeConjecture(int n, TreeMethod method, const LinalgMode& mode, const RecBudget& budget) {
  TreeConjectureResult r;
  r.n = n;
  r.method = method;
  if (method == TreeMethod::Rank) {
    r.rank = matrixRankReport(treeIncidenceMatrix(n, false, budget), mode);
    r.holds = r.rank.fullRowRank;
    return r;
  }
  if (n < 3) throw std::invalid_argument("tree membership needs n >= 3");
  if (n > budget.maxMembershipTreeVertices) {
    throw BudgetExceeded("tree membership limited to n <= " + std::to_string(budget.maxMembershipTreeVertices));
  }
  EnumerationBudget eb;
  eb.maxForestVertices = std::max(eb.maxForestVertices, n);
  for (const IsoClass& t : treesOnVertices(n, eb)) {
    ++r.treesChecked;
    if (isAlgReconstructible(t.representative(), n, Variant::Forest, mode, budget).certificate) ++r.treesCertified;
  }
  r.holds = r.treesCertified == r.treesChecked;
  return r;
}

// ---------------------------------------------------------------------------

DimsReport dimsReport(int n, int d, Variant variant, bool exact, const RecBudget& budget) {
  if (variant == Variant::Forest) throw std::invalid_argument("dimension reports cover the full and simple algebras");
  const CountVariant cv = variant == Variant::Full ? CountVariant::Full : CountVariant::Simple;
  DimsReport r;
  r.n = n;
  r.d = d;
  r.variant = variant;
  r.dimInv = hilbertSeries(n, d, cv)[d];
  r.fBound = fCounts(n, d, cv)[d];
  r.strict = r.fBound < r.dimInv;
  if (exact) {
    const SpanningWalk w = prepareWalk(n, d, variant, budget);
    std::unordered_map<IsoClass, std::uint32_t, IsoClassHash> index;
    std::vector<SparseRow> rows;
    walkAll(w, [&](const std::vector<IsoClass>&, const OrbitSumPoly& p) {
      SparseRow row;
      for (const auto& [cls, c] : p.terms()) {
        row.emplace_back(index.try_emplace(cls, static_cast<std::uint32_t>(index.size())).first->second, c);
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    });
    SparseExactMatrix m(rows.size(), index.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& [c, v] : rows[i]) m.set(i, c, v);
    }
    const RankResult rr = rank(m, LinalgMode::automatic(index.size()));
    if (!rr.exact && rr.rank < std::min(m.rows(), m.cols())) {
      // modular ranks are lower bounds; settle the value over Q
      r.dimRecExact = rankRational(m);
    } else {
      r.dimRecExact = rr.rank;
    }
  }
  return r;
}

ClosureAudit closureAudit(int n, int dMax, const RecBudget& budget) {
  ClosureAudit audit{n, dMax, {}, 0};
  for (int d = 0; d <= dMax; ++d) {
    for (const IsoClass& cls : enumerate(n, d, Family::Multigraph)) {
      ClosureEntry e;
      e.m = cls;
      const Multigraph m = cls.representative(n);
      e.certified = isAlgReconstructible(m, n, Variant::Full, budget).certificate.has_value();
      if (!e.certified) {
        audit.entries.push_back(std::move(e));
        continue;
      }
      const Multigraph doubled = scale(m, 2), comp = complement(m);
      e.doubled = canonicalForm(doubled);
      e.complement = canonicalForm(comp);
      e.doubledCertified = isAlgReconstructible(doubled, n, Variant::Full, budget).certificate.has_value();
      e.complementCertified = isAlgReconstructible(comp, n, Variant::Full, budget).certificate.has_value();
      if (!e.doubledCertified || !e.complementCertified) ++audit.violations;
      audit.entries.push_back(std::move(e));
    }
  }
  return audit;
}

// ---------------------------------------------------------------------------
// Octopi

namespace {

using Adjacency = std::vector<std::vector<int>>;

Adjacency adjacency(const Multigraph& t) {
  if (!t.isForest() || !t.isConnected()) throw std::invalid_argument("expected a tree");
  Adjacency adj(t.order());
  for (const Edge& e : t.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

// Vertices of the branch of the tree entered from `root` through `start`.
std::vector<int> branch(const Adjacency& adj, int root, int start) {
  std::vector<int> out{start}, stack{start};
  std::vector<char> seen(adj.size(), 0);
  seen[root] = seen[start] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        out.push_back(w);
        stack.push_back(w);
      }
    }
  }
  return out;
}

// Degree of v inside its branch (the edge to the root is not counted).
int branchDegree(const Adjacency& adj, int root, int v) {
  int d = 0;
  for (int w : adj[v]) d += w != root;
  return d;
}

bool isLeg(const Adjacency& adj, int root, int start) {
  for (int v : branch(adj, root, start)) {
    if (branchDegree(adj, root, v) > (v == start ? 1 : 2)) return false;
  }
  return true;
}

bool isStar(const Adjacency& adj, int root, int start) {
  const auto b = branch(adj, root, start);
  if (b.size() < 3) return false;
  for (int v : b) {
    if (v != start && branchDegree(adj, root, v) != 1) return false;
  }
  return true;
}

bool octopusWith(const Multigraph& tree, bool stars) {
  const Adjacency adj = adjacency(tree);
  for (int r = 0; r < tree.order(); ++r) {
    if (adj[r].empty()) continue;
    const bool ok = std::all_of(adj[r].begin(), adj[r].end(),
                                [&](int s) { return isLeg(adj, r, s) || (stars && isStar(adj, r, s)); });
    if (ok) return true;
  }
  return tree.edges().empty();
}

}  // namespace

bool isOctopus(const Multigraph& tree) { return octopusWith(tree, false); }
bool isStaredOctopus(const Multigraph& tree) { return octopusWith(tree, true); }

int treeDiameter(const Multigraph& tree) {
  const Adjacency adj = adjacency(tree);
  auto farthest = [&](int s) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    int last = s;
    while (!q.empty()) {
      last = q.front();
      q.pop();
      for (int w : adj[last]) {
        if (dist[w] < 0) {
          dist[w] = dist[last] + 1;
          q.push(w);
        }
      }
    }
    return std::pair{last, dist[last]};
  };
  int start = 0;
  while (start < tree.order() && adj[start].empty()) ++start;
  if (start == tree.order()) return 0;
  return farthest(farthest(start).first).second;
}

// ---------------------------------------------------------------------------

HypomorphyHarness hypomorphyHarness(int n, Weight maxWeight) {
  if (n < 2) throw std::invalid_argument("hypomorphy search needs n >= 2");
  HypomorphyHarness h;
  std::vector<IsoClass> graphs;
  const int dMax = static_cast<int>(maxWeight * pairCount(n));
  for (int d = 0; d <= dMax; ++d) {
    for (const auto& c : enumerate(n, d, Family::Multigraph)) {
      if (c.representative().maxWeight() <= maxWeight) graphs.push_back(c);
    }
  }
  h.graphsExamined = graphs.size();
  std::vector<Deck> decks;
  for (const auto& g : graphs) decks.push_back(deck(g.representative(n)));
  const Algebra alg{Variant::Full, n};
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      if (decks[i] != decks[j]) continue;
      ++h.hypomorphicPairs;
      const auto a = WeightedGraph::fromMultigraph(graphs[i].representative(n));
      const auto b = WeightedGraph::fromMultigraph(graphs[j].representative(n));
      const auto top = std::max(graphs[i].edges(), graphs[j].edges());
          for (int d = 0; d <= static_cast<int>(top); ++d) {
        for (const auto& m : enumerate(n - 1, d, Family::Multigraph)) {
          const OrbitSumPoly p = OrbitSumPoly::basis(m, alg);
          ++h.evaluationChecks;
          if (evaluate(p, a) != evaluate(p, b)) ++h.evaluationMismatches;
        }
      }
    }
  }
  return h;
}

std::size_t transposeRelationMismatches(int n, const RecBudget& budget) {
  const TreeIncidence t = unlabeledIncidence(n, budget);
  std::size_t bad = 0;
  const Algebra forest{Variant::Forest, n}, full{Variant::Full, n};
  const OrbitSumPoly p1 = powerSum(1, n);
  const OrbitSumPoly p1Forest = reduce(p1, Variant::Forest);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const OrbitSumPoly prod = multiply(OrbitSumPoly::basis(t.rows[r], forest), p1Forest);
    std::size_t matched = 0;
    for (std::size_t c = 0; c < t.cols.size(); ++c) {
      const mpq_class a = t.matrix.get(r, c);
      if (prod.coefficient(t.cols[c]) != a) ++bad;
      matched += a != 0;
    }
    if (prod.size() != matched) ++bad;
  }
  for (std::size_t c = 0; c < t.cols.size(); ++c) {
    const OrbitSumPoly dt = derivation(OrbitSumPoly::basis(t.cols[c], full));
    const mpz_class orbitT = orbitSize(t.cols[c], n);
    std::size_t matched = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      mpq_class expected = mpq_class(orbitT, orbitSize(t.rows[r], n)) * t.matrix.get(r, c);
      expected.canonicalize();
      if (dt.coefficient(t.rows[r]) != expected) ++bad;
      matched += expected != 0;
    }
    if (dt.size() != matched) ++bad;
  }
  return bad;
}

}  // namespace ginv
