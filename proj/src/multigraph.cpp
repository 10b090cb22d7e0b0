#include "graphinv/multigraph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "graphinv/errors.hpp"

namespace ginv {

namespace {

void checkVertex(int n, int v) {
  if (v < 0 || v >= n) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n=" +
                                std::to_string(n));
  }
}

// Minimal union-find used for connectivity and cycle detection.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

Multigraph::Multigraph(int n) : n_(n), w_(pairCount(n), 0) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
}

Multigraph::Multigraph(int n, std::initializer_list<Edge> edges)
    : Multigraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

Multigraph::Multigraph(int n, std::span<const Edge> edges) : Multigraph(n) {
  for (const Edge& e : edges) {
    checkVertex(n, e.u);
    checkVertex(n, e.v);
    if (e.u == e.v) throw std::invalid_argument("loops are not allowed");
    addWeight(e.u, e.v, e.w);
  }
}

Multigraph::Multigraph(int n, std::vector<Weight> pairWeights) : n_(n), w_(std::move(pairWeights)) {
  if (w_.size() != pairCount(n)) throw std::invalid_argument("pair weight vector has wrong size");
}

void Multigraph::setWeight(int u, int v, Weight w) {
  checkVertex(n_, u);
  checkVertex(n_, v);
  if (u == v) throw std::invalid_argument("loops are not allowed");
  w_[pairIndex(u, v)] = w;
}

std::uint64_t Multigraph::edgeCount() const {
  return std::accumulate(w_.begin(), w_.end(), std::uint64_t{0});
}

Weight Multigraph::maxWeight() const {
  return w_.empty() ? 0 : *std::max_element(w_.begin(), w_.end());
}

bool Multigraph::isSimple() const {
  return std::all_of(w_.begin(), w_.end(), [](Weight w) { return w <= 1; });
}

bool Multigraph::isEmpty() const {
  return std::all_of(w_.begin(), w_.end(), [](Weight w) { return w == 0; });
}

std::vector<Edge> Multigraph::edges() const {
  std::vector<Edge> out;
  for (int v = 1; v < n_; ++v) {
    for (int u = 0; u < v; ++u) {
      if (Weight w = w_[pairIndex(u, v)]) out.push_back({u, v, w});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return out;
}

std::uint64_t Multigraph::vertexDegree(int v) const {
  std::uint64_t d = 0;
  for (int u = 0; u < n_; ++u) {
    if (u != v) d += w_[pairIndex(u, v)];
  }
  return d;
}

bool Multigraph::isIsolated(int v) const {
  for (int u = 0; u < n_; ++u) {
    if (u != v && w_[pairIndex(u, v)] != 0) return false;
  }
  return true;
}

int Multigraph::supportSize() const {
  int k = 0;
  for (int v = 0; v < n_; ++v) k += isIsolated(v) ? 0 : 1;
  return k;
}

bool Multigraph::isConnected() const {
  DisjointSets sets(n_);
  int support = 0;
  int merges = 0;
  for (int v = 0; v < n_; ++v) {
    if (!isIsolated(v)) ++support;
    for (int u = 0; u < v; ++u) {
      if (w_[pairIndex(u, v)] && sets.unite(u, v)) ++merges;
    }
  }
  return support == 0 || merges == support - 1;
}

bool Multigraph::isForest() const {
  if (!isSimple()) return false;
  DisjointSets sets(n_);
  for (int v = 0; v < n_; ++v) {
    for (int u = 0; u < v; ++u) {
      if (w_[pairIndex(u, v)] && !sets.unite(u, v)) return false;
    }
  }
  return true;
}

WeightedGraph WeightedGraph::fromMultigraph(const Multigraph& m) {
  WeightedGraph g(m.order());
  for (std::size_t i = 0; i < m.pairWeights().size(); ++i) g.w_[i] = m.pairWeights()[i];
  return g;
}

Multigraph complement(const Multigraph& m) {
  const Weight level = std::max<Weight>(1, m.maxWeight());
  std::vector<Weight> w(m.pairWeights());
  for (Weight& x : w) x = level - x;
  return Multigraph(m.order(), std::move(w));
}

Multigraph scale(const Multigraph& m, Weight factor) {
  std::vector<Weight> w(m.pairWeights());
  for (Weight& x : w) x *= factor;
  return Multigraph(m.order(), std::move(w));
}

Multigraph pad(const Multigraph& m, int n) {
  if (n < m.order()) throw std::invalid_argument("pad target smaller than current vertex count");
  std::vector<Weight> w(m.pairWeights());
  w.resize(pairCount(n), 0);
  return Multigraph(n, std::move(w));
}

Multigraph deleteVertex(const Multigraph& m, int v) {
  checkVertex(m.order(), v);
  Multigraph out(m);
  for (int u = 0; u < m.order(); ++u) {
    if (u != v) out.setWeight(u, v, 0);
  }
  return out;
}

Multigraph permute(const Multigraph& m, std::span<const int> perm) {
  const int n = m.order();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
  Multigraph out(n);
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (Weight w = m.weight(u, v)) out.setWeight(perm[u], perm[v], w);
    }
  }
  return out;
}

Multigraph add(const Multigraph& a, const Multigraph& b) {
  if (a.order() != b.order()) throw std::invalid_argument("vertex count mismatch in add");
  std::vector<Weight> w(a.pairWeights());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += b.pairWeights()[i];
  return Multigraph(a.order(), std::move(w));
}

Multigraph dropIsolated(const Multigraph& m) {
  std::vector<int> keep;
  for (int v = 0; v < m.order(); ++v) {
    if (!m.isIsolated(v)) keep.push_back(v);
  }
  Multigraph out(static_cast<int>(keep.size()));
  for (std::size_t j = 1; j < keep.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (Weight w = m.weight(keep[i], keep[j])) out.setWeight(static_cast<int>(i), static_cast<int>(j), w);
    }
  }
  return out;
}

std::vector<Multigraph> components(const Multigraph& m) {
  const int n = m.order();
  DisjointSets sets(n);
  for (const Edge& e : m.edges()) sets.unite(e.u, e.v);
  std::vector<int> rootToComponent(n, -1);
  std::vector<Multigraph> out;
  for (int v = 0; v < n; ++v) {
    if (m.isIsolated(v)) continue;
    int r = sets.find(v);
    if (rootToComponent[r] < 0) {
      rootToComponent[r] = static_cast<int>(out.size());
      out.emplace_back(n);
    }
  }
  for (const Edge& e : m.edges()) out[rootToComponent[sets.find(e.u)]].setWeight(e.u, e.v, e.w);
  return out;
}

std::string toText(const Multigraph& m) {
  std::ostringstream os;
  os << m.order();
  for (const Edge& e : m.edges()) os << "; " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w;
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<long long> parseInts(std::string_view field, std::string_view whole) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos < field.size()) {
    while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
    if (pos == field.size()) break;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(field.data() + pos, field.data() + field.size(), value);
    if (ec != std::errc()) throw ParseError("malformed number in graph '" + std::string(whole) + "'");
    pos = static_cast<std::size_t>(ptr - field.data());
    out.push_back(value);
  }
  return out;
}

}  // namespace

Multigraph parseMultigraph(std::string_view text) {
  text = trim(text);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = text.find(';', start);
    fields.push_back(trim(text.substr(start, semi == std::string_view::npos ? semi : semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  auto head = parseInts(fields.front(), text);
  if (head.size() != 1 || head[0] < 0 || head[0] > 64) {
    throw ParseError("graph must start with a vertex count: '" + std::string(text) + "'");
  }
  const int n = static_cast<int>(head[0]);
  Multigraph m(n);
  for (std::size_t f = 1; f < fields.size(); ++f) {
    if (fields[f].empty()) continue;
    auto nums = parseInts(fields[f], text);
    if (nums.size() != 2 && nums.size() != 3) {
      throw ParseError("edge entries are 'i j' or 'i j w': '" + std::string(text) + "'");
    }
    const long long i = nums[0], j = nums[1], w = nums.size() == 3 ? nums[2] : 1;
    if (i < 1 || j < 1 || i > n || j > n || i >= j) {
      throw ParseError("edge endpoints must satisfy 1 <= i < j <= n: '" + std::string(text) + "'");
    }
    if (w <= 0) throw ParseError("edge weights must be positive: '" + std::string(text) + "'");
    if (m.weight(static_cast<int>(i - 1), static_cast<int>(j - 1)) != 0) {
      throw ParseError("duplicate pair in graph '" + std::string(text) + "'");
    }
    m.setWeight(static_cast<int>(i - 1), static_cast<int>(j - 1), static_cast<Weight>(w));
  }
  return m;
}

std::vector<Multigraph> parseMultigraphList(std::string_view text) {
  std::vector<Multigraph> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    auto line = trim(text.substr(start, nl == std::string_view::npos ? nl : nl - start));
    if (!line.empty() && line.front() != '#') out.push_back(parseMultigraph(line));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

Multigraph singleEdge(int n, Weight w) { return Multigraph(n, {{0, 1, w}}); }

Multigraph pathGraph(int vertices, int n) {
  Multigraph m(n);
  for (int v = 0; v + 1 < vertices; ++v) m.setWeight(v, v + 1, 1);
  return m;
}

Multigraph cycleGraph(int vertices, int n) {
  Multigraph m = pathGraph(vertices, n);
  m.setWeight(0, vertices - 1, 1);
  return m;
}

Multigraph completeGraph(int n) {
  return Multigraph(n, std::vector<Weight>(pairCount(n), 1));
}

Multigraph starGraph(int leaves, int n) {
  Multigraph m(n);
  for (int v = 1; v <= leaves; ++v) m.setWeight(0, v, 1);
  return m;
}

}  // namespace ginv
