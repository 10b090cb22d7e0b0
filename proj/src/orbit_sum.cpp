#include "graphinv/orbit_sum.hpp"

#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "graphinv/errors.hpp"

namespace ginv {

std::string toString(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::Simple: return "simple";
    case Variant::Forest: return "forest";
  }
  return "?";
}

Variant parseVariant(const std::string& name) {
  if (name == "full") return Variant::Full;
  if (name == "simple") return Variant::Simple;
  if (name == "forest") return Variant::Forest;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

namespace {

// Acyclicity of a weight vector on n vertices (weights assumed 0/1).
bool acyclic(int n, const std::vector<Weight>& w) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (w[pairIndex(u, v)] == 0) continue;
      int a = find(u), b = find(v);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

bool admissibleWeights(int n, const std::vector<Weight>& w, Variant v) {
  if (v == Variant::Full) return true;
  for (Weight x : w) {
    if (x > 1) return false;
  }
  return v == Variant::Simple || acyclic(n, w);
}

}  // namespace

bool admissible(const IsoClass& cls, Variant v) {
  if (v == Variant::Full) return true;
  const auto& code = cls.code();
  return admissibleWeights(cls.vertices(), std::vector<Weight>(code.begin() + 1, code.end()), v);
}

// ---------------------------------------------------------------------------

OrbitSumPoly OrbitSumPoly::basis(const IsoClass& cls, Algebra alg) {
  OrbitSumPoly p(alg);
  p.addTerm(cls, 1);
  return p;
}

OrbitSumPoly OrbitSumPoly::constant(mpq_class c, Algebra alg) {
  OrbitSumPoly p(alg);
  p.addTerm(IsoClass(), c);
  return p;
}

mpq_class OrbitSumPoly::coefficient(const IsoClass& cls) const {
  auto it = terms_.find(cls);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void OrbitSumPoly::addTerm(const IsoClass& cls, const mpq_class& c) {
  if (cls.vertices() > alg_.n) {
    throw std::invalid_argument("class on " + std::to_string(cls.vertices()) + " vertices exceeds ambient n = " +
                                std::to_string(alg_.n));
  }
  if (c == 0 || !admissible(cls, alg_.variant)) return;
  mpq_class v = c;
  v.canonicalize();
  auto [it, fresh] = terms_.try_emplace(cls, v);
  if (fresh) return;
  it->second += v;
  if (it->second == 0) terms_.erase(it);
}

void OrbitSumPoly::checkCompatible(const OrbitSumPoly& o) const {
  if (!(alg_ == o.alg_)) {
    throw std::invalid_argument("algebra mismatch: " + toString(alg_.variant) + "/" + std::to_string(alg_.n) +
                                " vs " + toString(o.alg_.variant) + "/" + std::to_string(o.alg_.n));
  }
}

OrbitSumPoly& OrbitSumPoly::operator+=(const OrbitSumPoly& o) {
  checkCompatible(o);
  for (const auto& [cls, c] : o.terms_) addTerm(cls, c);
  return *this;
}

OrbitSumPoly& OrbitSumPoly::operator-=(const OrbitSumPoly& o) {
  checkCompatible(o);
  for (const auto& [cls, c] : o.terms_) addTerm(cls, -c);
  return *this;
}

OrbitSumPoly& OrbitSumPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [cls, coef] : terms_) {
    coef *= c;
    coef.canonicalize();
  }
  return *this;
}

OrbitSumPoly OrbitSumPoly::homogeneousPart(std::uint64_t d) const {
  OrbitSumPoly out(alg_);
  for (const auto& [cls, c] : terms_) {
    if (cls.edges() == d) out.terms_.emplace(cls, c);
  }
  return out;
}

bool OrbitSumPoly::isHomogeneous() const {
  if (terms_.empty()) return true;
  const auto d = terms_.begin()->first.edges();
  for (const auto& [cls, c] : terms_) {
    if (cls.edges() != d) return false;
  }
  return true;
}

std::optional<std::uint64_t> OrbitSumPoly::maxDegree() const {
  std::optional<std::uint64_t> best;
  for (const auto& [cls, c] : terms_) {
    if (!best || cls.edges() > *best) best = cls.edges();
  }
  return best;
}

OrbitSumPoly operator+(OrbitSumPoly a, const OrbitSumPoly& b) { return a += b; }
OrbitSumPoly operator-(OrbitSumPoly a, const OrbitSumPoly& b) { return a -= b; }
OrbitSumPoly operator*(mpq_class c, OrbitSumPoly p) { return p *= c; }

OrbitSumPoly orbitSum(const Multigraph& m, Algebra alg) {
  if (m.supportSize() > alg.n) throw std::invalid_argument("support of m exceeds ambient n");
  OrbitSumPoly p(alg);
  if (admissibleWeights(m.order(), m.pairWeights(), alg.variant)) p.addTerm(canonicalForm(m), 1);
  return p;
}

// ---------------------------------------------------------------------------
// Basis products

namespace {

struct ProductKey {
  IsoClass a, b;
  Variant variant;
  int n;
  bool operator==(const ProductKey&) const = default;
};

struct ProductKeyHash {
  std::size_t operator()(const ProductKey& k) const noexcept {
    IsoClassHash h;
    std::size_t x = h(k.a) * 0x9e3779b97f4a7c15ULL ^ h(k.b);
    return x ^ (static_cast<std::size_t>(k.variant) << 56) ^ (static_cast<std::size_t>(k.n) << 48);
  }
};

using Expansion = std::vector<std::pair<IsoClass, mpz_class>>;

std::shared_mutex cacheMutex;
std::unordered_map<ProductKey, Expansion, ProductKeyHash> productCache;

Expansion expandProduct(const IsoClass& a, const IsoClass& b, Algebra alg) {
  if (a.vertices() == 0) return {{b, 1}};
  if (b.vertices() == 0) return {{a, 1}};
  // Walk the smaller orbit; the other factor stays a fixed representative.
  mpz_class orbA = orbitSize(a, alg.n), orbB = orbitSize(b, alg.n);
  const IsoClass& walked = orbA <= orbB ? a : b;
  const IsoClass& fixed = orbA <= orbB ? b : a;
  const mpz_class& fixedOrbit = orbA <= orbB ? orbB : orbA;

  const std::vector<Weight> base = fixed.representative(alg.n).pairWeights();
  std::map<IsoClass, std::uint64_t> hits;
  std::vector<Weight> w = base;
  for (const SparseGraph& s : orbitMembers(walked, alg.n)) {
    bool keep = true;
    for (auto [idx, x] : s) {
      w[idx] += x;
      if (alg.variant != Variant::Full && w[idx] > 1) keep = false;
    }
    if (keep && alg.variant == Variant::Forest) keep = acyclic(alg.n, w);
    if (keep) ++hits[canonicalForm(Multigraph(alg.n, w))];
    for (auto [idx, x] : s) w[idx] = base[idx];
  }
  Expansion out;
  out.reserve(hits.size());
  for (const auto& [r, count] : hits) {
    mpz_class num = fixedOrbit * count;
    mpz_class orbR = orbitSize(r, alg.n);
    if (!mpz_divisible_p(num.get_mpz_t(), orbR.get_mpz_t())) {
      throw std::logic_error("non-integral product coefficient for " + r.toString());
    }
    out.emplace_back(r, num / orbR);
  }
  return out;
}

}  // namespace

const std::vector<std::pair<IsoClass, mpz_class>>& basisProduct(const IsoClass& a, const IsoClass& b, Algebra alg) {
  ProductKey key{a <= b ? a : b, a <= b ? b : a, alg.variant, alg.n};
  {
    std::shared_lock lock(cacheMutex);
    auto it = productCache.find(key);
    if (it != productCache.end()) return it->second;
  }
  Expansion e = expandProduct(key.a, key.b, alg);
  std::unique_lock lock(cacheMutex);
  return productCache.try_emplace(std::move(key), std::move(e)).first->second;
}

void clearProductCache() {
  std::unique_lock lock(cacheMutex);
  productCache.clear();
}

OrbitSumPoly multiply(const OrbitSumPoly& p, const OrbitSumPoly& q, std::optional<std::uint64_t> degreeCap) {
  if (!(p.algebra() == q.algebra())) throw std::invalid_argument("multiply: algebra mismatch");
  const Algebra alg = p.algebra();
  bool integral = true;
  for (const auto* poly : {&p, &q}) {
    for (const auto& [cls, c] : poly->terms()) integral = integral && c.get_den() == 1;
  }

  OrbitSumPoly out(alg);
  if (integral) {
    std::map<IsoClass, mpz_class> acc;
    for (const auto& [a, ca] : p.terms()) {
      for (const auto& [b, cb] : q.terms()) {
        if (degreeCap && a.edges() + b.edges() > *degreeCap) continue;
        mpz_class scale = ca.get_num() * cb.get_num();
        for (const auto& [r, c] : basisProduct(a, b, alg)) acc[r] += scale * c;
      }
    }
    for (const auto& [r, c] : acc) out.addTerm(r, mpq_class(c));
    return out;
  }
  std::map<IsoClass, mpq_class> acc;
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) {
      if (degreeCap && a.edges() + b.edges() > *degreeCap) continue;
      mpq_class scale = ca * cb;
      for (const auto& [r, c] : basisProduct(a, b, alg)) acc[r] += scale * c;
    }
  }
  for (const auto& [r, c] : acc) out.addTerm(r, c);
  return out;
}

OrbitSumPoly operator*(const OrbitSumPoly& p, const OrbitSumPoly& q) { return multiply(p, q); }

// ---------------------------------------------------------------------------

OrbitSumPoly derivation(const OrbitSumPoly& p) {
  const Algebra alg = p.algebra();
  if (alg.variant != Variant::Full) throw std::invalid_argument("derivation is defined on the full algebra only");
  OrbitSumPoly out(alg);
  for (const auto& [m, coef] : p.terms()) {
    if (m.vertices() == 0) continue;
    Multigraph rep = m.representative(alg.n);
    std::map<IsoClass, mpz_class> sums;
    for (const Edge& e : rep.edges()) {
      rep.setWeight(e.u, e.v, e.w - 1);
      sums[canonicalForm(rep)] += e.w;
      rep.setWeight(e.u, e.v, e.w);
    }
    const mpz_class orbM = orbitSize(m, alg.n);
    for (const auto& [r, s] : sums) {
      out.addTerm(r, coef * ratio(orbM * s, orbitSize(r, alg.n)));
    }
  }
  return out;
}

mpq_class evaluate(const OrbitSumPoly& p, const WeightedGraph& g) {
  if (g.order() != p.algebra().n) throw std::invalid_argument("evaluate: ambient vertex count mismatch");
  mpq_class total = 0;
  for (const auto& [m, coef] : p.terms()) {
    mpq_class sum = 0;
    for (const SparseGraph& s : orbitMembers(m, g.order())) {
      mpq_class term = 1;
      for (auto [idx, x] : s) {
        mpq_class f;
        mpz_pow_ui(f.get_num_mpz_t(), g.pairWeights()[idx].get_num_mpz_t(), x);
        mpz_pow_ui(f.get_den_mpz_t(), g.pairWeights()[idx].get_den_mpz_t(), x);
        term *= f;
        if (term == 0) break;
      }
      sum += term;
    }
    total += coef * sum;
  }
  return total;
}

OrbitSumPoly powerSum(int k, int n) {
  if (k < 1 || n < 2) throw std::invalid_argument("powerSum needs k >= 1 and n >= 2");
  return OrbitSumPoly::basis(canonicalForm(singleEdge(n, static_cast<Weight>(k))), {Variant::Full, n});
}

OrbitSumPoly degreePowerSum(int d, int n) {
  if (d < 1 || n < 2) throw std::invalid_argument("degreePowerSum needs d >= 1 and n >= 2");
  // (x_{01} + ... + x_{0,n-1})^d: each monomial is a star centred at 0 whose
  // leaf weights form a partition of d. Per partition, the coefficient is the
  // multinomial and the number of labeled placements is (n-1)!/((n-1-p)! prod mult!).
  // Summing over centres spreads n * T_r evenly over the orbit of r.
  const Algebra alg{Variant::Full, n};
  std::map<IsoClass, mpz_class> starTotals;
  std::vector<int> parts;
  auto emit = [&] {
    const int p = static_cast<int>(parts.size());
    if (p > n - 1) return;
    mpz_class multinomial = factorial(d);
    for (int x : parts) multinomial /= factorial(x);
    mpz_class placements = factorial(n - 1) / factorial(n - 1 - p);
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      placements /= factorial(static_cast<int>(j - i));
      i = j;
    }
    Multigraph star(n);
    for (int i = 0; i < p; ++i) star.setWeight(0, i + 1, static_cast<Weight>(parts[i]));
    starTotals[canonicalForm(star)] += multinomial * placements;
  };
  auto rec = [&](auto&& self, int left, int maxPart) -> void {
    if (left == 0) {
      emit();
      return;
    }
    for (int x = std::min(left, maxPart); x >= 1; --x) {
      parts.push_back(x);
      self(self, left - x, x);
      parts.pop_back();
    }
  };
  rec(rec, d, d);
  OrbitSumPoly out(alg);
  for (const auto& [r, t] : starTotals) out.addTerm(r, ratio(mpz_class(n) * t, orbitSize(r, n)));
  return out;
}

OrbitSumPoly reduce(const OrbitSumPoly& p, Variant target) {
  OrbitSumPoly out({target, p.algebra().n});
  for (const auto& [cls, c] : p.terms()) out.addTerm(cls, c);
  return out;
}

// ---------------------------------------------------------------------------

std::string serialize(const OrbitSumPoly& p) {
  std::ostringstream os;
  os << "# " << toString(p.algebra().variant) << " n " << p.algebra().n << '\n';
  for (const auto& [cls, c] : p.terms()) os << c.get_str() << " * " << cls.toString() << '\n';
  return os.str();
}

OrbitSumPoly parseOrbitSumPoly(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<OrbitSumPoly> out;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string variant, nTag;
      int n = -1;
      if (!(h >> variant >> nTag >> n) || nTag != "n" || n < 0) throw ParseError("bad header: " + line);
      out.emplace(Algebra{parseVariant(variant), n});
      continue;
    }
    if (!out) throw ParseError("missing '# <variant> n <n>' header");
    auto star = line.find(" * ");
    if (star == std::string::npos) throw ParseError("expected 'coeff * key': " + line);
    mpq_class c;
    std::string coeff = line.substr(0, star);
    coeff.erase(0, coeff.find_first_not_of(" \t"));
    if (c.set_str(coeff, 10) != 0) throw ParseError("bad coefficient '" + coeff + "'");
    c.canonicalize();
    out->addTerm(IsoClass::parse(line.substr(star + 3)), c);
  }
  if (!out) throw ParseError("empty polynomial text");
  return *out;
}

}  // namespace ginv
