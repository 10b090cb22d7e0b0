#include "graphinv/iso_class.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "graphinv/errors.hpp"

namespace ginv {

IsoClass::IsoClass(std::vector<Weight> code) : code_(std::move(code)) {
  if (code_.empty() || code_.size() != 1 + pairCount(static_cast<int>(code_[0]))) {
    throw std::invalid_argument("malformed isomorphism class code");
  }
  edges_ = std::accumulate(code_.begin() + 1, code_.end(), std::uint64_t{0});
}

bool IsoClass::isSimple() const {
  return std::all_of(code_.begin() + 1, code_.end(), [](Weight w) { return w <= 1; });
}

Multigraph IsoClass::representative() const {
  return Multigraph(vertices(), std::vector<Weight>(code_.begin() + 1, code_.end()));
}

Multigraph IsoClass::representative(int n) const { return pad(representative(), n); }

std::string IsoClass::toString() const { return toText(representative()); }

IsoClass IsoClass::parse(std::string_view text) { return canonicalForm(parseMultigraph(text)); }

std::size_t IsoClassHash::operator()(const IsoClass& c) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Weight w : c.code()) {
    h ^= w;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

// ---------------------------------------------------------------------------
// General multigraphs: colour refinement, then exhaustive minimization over
// colour-preserving orderings with prefix pruning.

struct GeneralCanonizer {
  int k;
  std::vector<Weight> mat;  // k x k, symmetric
  std::vector<int> color;
  std::vector<int> cellColor;  // colour required at each position
  std::vector<int> perm;
  std::vector<char> used;
  std::vector<Weight> cur;
  std::vector<Weight> best;
  std::vector<char> eq;  // eq[j]: first j columns equal to best
  bool haveBest = false;
  std::vector<int> bestPerm;
  std::uint64_t aut = 0;

  Weight at(int a, int b) const { return mat[static_cast<std::size_t>(a) * k + b]; }

  void refine() {
    color.assign(k, 0);
    std::vector<std::vector<std::uint64_t>> keys(k);
    for (int v = 0; v < k; ++v) {
      std::uint64_t deg = 0;
      std::vector<std::uint64_t> ws;
      for (int u = 0; u < k; ++u) {
        if (u != v && at(v, u)) {
          deg += at(v, u);
          ws.push_back(at(v, u));
        }
      }
      std::sort(ws.begin(), ws.end());
      keys[v] = {deg, ws.size()};
      keys[v].insert(keys[v].end(), ws.begin(), ws.end());
    }
    int classes = assign(keys);
    while (true) {
      for (int v = 0; v < k; ++v) {
        std::vector<std::uint64_t> nb;
        for (int u = 0; u < k; ++u) {
          if (u != v && at(v, u)) nb.push_back((std::uint64_t{at(v, u)} << 32) | static_cast<std::uint32_t>(color[u]));
        }
        std::sort(nb.begin(), nb.end());
        keys[v] = {static_cast<std::uint64_t>(color[v])};
        keys[v].insert(keys[v].end(), nb.begin(), nb.end());
      }
      int next = assign(keys);
      if (next == classes) break;
      classes = next;
    }
  }

  int assign(const std::vector<std::vector<std::uint64_t>>& keys) {
    std::vector<std::vector<std::uint64_t>> sorted(keys);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < k; ++v) {
      color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    }
    return static_cast<int>(sorted.size());
  }

  void search(int j) {
    if (j == k) {
      if (!haveBest || !eq[k]) {
        best = cur;
        bestPerm = perm;
        haveBest = true;
        aut = 1;
        std::fill(eq.begin(), eq.end(), 1);
      } else {
        ++aut;
      }
      return;
    }
    const std::size_t off = static_cast<std::size_t>(j) * (j - 1) / 2;
    for (int v = 0; v < k; ++v) {
      if (used[v] || color[v] != cellColor[j]) continue;
      for (int i = 0; i < j; ++i) cur[off + i] = at(perm[i], v);
      if (haveBest && eq[j]) {
        int cmp = 0;
        for (int i = 0; i < j && cmp == 0; ++i) {
          if (cur[off + i] != best[off + i]) cmp = cur[off + i] < best[off + i] ? -1 : 1;
        }
        if (cmp > 0) continue;
        eq[j + 1] = cmp == 0;
      } else {
        eq[j + 1] = 0;
      }
      perm[j] = v;
      used[v] = 1;
      search(j + 1);
      used[v] = 0;
    }
  }

  void run() {
    refine();
    cellColor = color;
    std::sort(cellColor.begin(), cellColor.end());
    perm.assign(k, -1);
    used.assign(k, 0);
    cur.assign(pairCount(k), 0);
    eq.assign(k + 1, 0);
    search(0);
  }
};

// ---------------------------------------------------------------------------
// Simple forests: centre-rooted recursive encodings.

struct RootedCode {
  std::string enc;
  std::uint64_t aut = 1;
  std::vector<int> order;  // preorder, children by ascending encoding
};

std::uint64_t factorialU64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

RootedCode encodeRooted(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<RootedCode> kids;
  for (int u : adj[v]) {
    if (u != parent) kids.push_back(encodeRooted(adj, u, v));
  }
  std::sort(kids.begin(), kids.end(), [](const RootedCode& a, const RootedCode& b) { return a.enc < b.enc; });
  RootedCode out;
  out.enc = "(";
  out.order.push_back(v);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    out.enc += kids[i].enc;
    out.aut *= kids[i].aut;
    out.order.insert(out.order.end(), kids[i].order.begin(), kids[i].order.end());
  }
  out.enc += ")";
  for (std::size_t i = 0; i < kids.size();) {
    std::size_t j = i;
    while (j < kids.size() && kids[j].enc == kids[i].enc) ++j;
    out.aut *= factorialU64(static_cast<int>(j - i));
    i = j;
  }
  return out;
}

RootedCode encodeTree(const std::vector<std::vector<int>>& adj, const std::vector<int>& vertices) {
  // Peel leaves down to one or two centres.
  std::unordered_map<int, int> degree;
  std::vector<int> layer;
  for (int v : vertices) {
    degree[v] = static_cast<int>(adj[v].size());
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = vertices.size();
  while (remaining > 2) {
    std::vector<int> next;
    remaining -= layer.size();
    for (int v : layer) {
      for (int u : adj[v]) {
        if (--degree[u] == 1) next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  if (layer.size() == 1) {
    RootedCode r = encodeRooted(adj, layer[0], -1);
    r.enc = "U" + r.enc;
    return r;
  }
  RootedCode a = encodeRooted(adj, layer[0], layer[1]);
  RootedCode b = encodeRooted(adj, layer[1], layer[0]);
  if (b.enc < a.enc) std::swap(a, b);
  RootedCode r;
  r.enc = "B" + a.enc + b.enc;
  r.aut = a.aut * b.aut * (a.enc == b.enc ? 2 : 1);
  r.order = a.order;
  r.order.insert(r.order.end(), b.order.begin(), b.order.end());
  return r;
}

CanonicalLabeling forestLabeling(const Multigraph& m, const std::vector<int>& support) {
  const int n = m.order();
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : m.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<RootedCode> trees;
  for (int s : support) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (int u : adj[comp[i]]) {
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
      }
    }
    trees.push_back(encodeTree(adj, comp));
  }
  std::sort(trees.begin(), trees.end(), [](const RootedCode& a, const RootedCode& b) { return a.enc < b.enc; });
  CanonicalLabeling out;
  for (std::size_t i = 0; i < trees.size();) {
    std::size_t j = i;
    while (j < trees.size() && trees[j].enc == trees[i].enc) {
      out.automorphisms *= trees[j].aut;
      out.order.insert(out.order.end(), trees[j].order.begin(), trees[j].order.end());
      ++j;
    }
    out.automorphisms *= factorialU64(static_cast<int>(j - i));
    i = j;
  }
  const int k = static_cast<int>(out.order.size());
  std::vector<Weight> code(1 + pairCount(k), 0);
  code[0] = static_cast<Weight>(k);
  for (int j = 1; j < k; ++j) {
    for (int i = 0; i < j; ++i) code[1 + pairIndex(i, j)] = m.weight(out.order[i], out.order[j]);
  }
  out.cls = IsoClass(std::move(code));
  return out;
}

}  // namespace

CanonicalLabeling canonicalLabeling(const Multigraph& m) {
  std::vector<int> support;
  for (int v = 0; v < m.order(); ++v) {
    if (!m.isIsolated(v)) support.push_back(v);
  }
  if (support.empty()) return {};
  if (m.isForest()) return forestLabeling(m, support);

  GeneralCanonizer c;
  c.k = static_cast<int>(support.size());
  c.mat.assign(static_cast<std::size_t>(c.k) * c.k, 0);
  for (int a = 0; a < c.k; ++a) {
    for (int b = 0; b < c.k; ++b) {
      if (a != b) c.mat[static_cast<std::size_t>(a) * c.k + b] = m.weight(support[a], support[b]);
    }
  }
  c.run();
  CanonicalLabeling out;
  std::vector<Weight> code(1 + c.best.size());
  code[0] = static_cast<Weight>(c.k);
  std::copy(c.best.begin(), c.best.end(), code.begin() + 1);
  out.cls = IsoClass(std::move(code));
  for (int j = 0; j < c.k; ++j) out.order.push_back(support[c.bestPerm[j]]);
  out.automorphisms = c.aut;
  return out;
}

IsoClass canonicalForm(const Multigraph& m) { return canonicalLabeling(m).cls; }

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

namespace {

std::uint64_t supportAutomorphisms(const IsoClass& cls) {
  static std::shared_mutex mutex;
  static std::unordered_map<IsoClass, std::uint64_t, IsoClassHash> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(cls);
    if (it != cache.end()) return it->second;
  }
  std::uint64_t aut = canonicalLabeling(cls.representative()).automorphisms;
  std::unique_lock lock(mutex);
  if (cache.size() > 2'000'000) cache.clear();
  cache.emplace(cls, aut);
  return aut;
}

}  // namespace

OrbitData orbitData(const IsoClass& cls, int n) {
  const int k = cls.vertices();
  if (k > n) {
    throw std::invalid_argument("graph support (" + std::to_string(k) + ") exceeds ambient n=" + std::to_string(n));
  }
  OrbitData d;
  d.autCount = mpz_class(static_cast<unsigned long>(supportAutomorphisms(cls))) * factorial(n - k);
  d.orbitSize = factorial(n) / d.autCount;
  return d;
}

OrbitData orbitData(const Multigraph& m, int n) { return orbitData(canonicalForm(m), n); }

mpz_class orbitSize(const IsoClass& cls, int n) { return orbitData(cls, n).orbitSize; }

std::vector<SparseGraph> orbitMembers(const IsoClass& cls, int n) {
  const int k = cls.vertices();
  if (k > n) {
    throw std::invalid_argument("graph support (" + std::to_string(k) + ") exceeds ambient n=" + std::to_string(n));
  }
  mpz_class injections = factorial(n) / factorial(n - k);
  if (injections > 50'000'000) {
    throw BudgetExceeded("orbit enumeration of a " + std::to_string(k) + "-vertex class on n=" + std::to_string(n) +
                         " is beyond the labeled-orbit budget");
  }
  const std::vector<Edge> edges = cls.representative().edges();
  std::vector<SparseGraph> out;
  out.reserve(injections.get_ui());
  std::vector<int> image(k, -1);
  std::vector<char> taken(n, 0);
  std::function<void(int)> place = [&](int j) {
    if (j == k) {
      SparseGraph g;
      g.reserve(edges.size());
      for (const Edge& e : edges) g.emplace_back(static_cast<std::uint32_t>(pairIndex(image[e.u], image[e.v])), e.w);
      std::sort(g.begin(), g.end());
      out.push_back(std::move(g));
      return;
    }
    for (int t = 0; t < n; ++t) {
      if (taken[t]) continue;
      taken[t] = 1;
      image[j] = t;
      place(j + 1);
      taken[t] = 0;
    }
  };
  place(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void forEachOrbitMember(const Multigraph& m, int n, const std::function<void(const Multigraph&)>& fn) {
  for (const SparseGraph& g : orbitMembers(canonicalForm(m), n)) {
    Multigraph member(n);
    std::vector<Weight> w(pairCount(n), 0);
    for (auto [idx, wt] : g) w[idx] = wt;
    fn(Multigraph(n, std::move(w)));
  }
}

Deck deck(const Multigraph& g) {
  Deck d;
  for (int v = 0; v < g.order(); ++v) d.push_back(canonicalForm(deleteVertex(g, v)));
  std::sort(d.begin(), d.end());
  return d;
}

bool hypomorphic(const Multigraph& a, const Multigraph& b) {
  return a.order() == b.order() && deck(a) == deck(b);
}

bool isomorphic(const Multigraph& a, const Multigraph& b) {
  return a.order() == b.order() && canonicalForm(a) == canonicalForm(b);
}

std::uint64_t embeddings(const Multigraph& m, const Multigraph& g) {
  if (!m.isSimple()) throw std::invalid_argument("embeddings requires a simple pattern graph");
  if (m.order() != g.order()) throw std::invalid_argument("embeddings requires a common ambient vertex count");
  std::uint64_t count = 0;
  for (const SparseGraph& member : orbitMembers(canonicalForm(m), g.order())) {
    bool inside = std::all_of(member.begin(), member.end(),
                              [&](const auto& e) { return g.pairWeights()[e.first] != 0; });
    count += inside ? 1 : 0;
  }
  return count;
}

}  // namespace ginv
