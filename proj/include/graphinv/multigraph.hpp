#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ginv {

using Weight = std::uint32_t;

/// Index of the unordered pair {u, v} (0-based, u != v) in column-major
/// upper-triangular order: {0,1}, {0,2}, {1,2}, {0,3}, ...
/// Indices of a graph on n vertices are a prefix of those on n+1 vertices.
constexpr std::size_t pairIndex(int u, int v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(v) * (v - 1) / 2 + u;
}

constexpr std::size_t pairCount(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

struct Edge {
  int u = 0;  // 0-based, u < v
  int v = 0;
  Weight w = 1;
  bool operator==(const Edge&) const = default;
};

/// Labeled multigraph on vertices {0..n-1}: a nonnegative integer weight on
/// every unordered pair. Loops do not exist.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n);
  Multigraph(int n, std::initializer_list<Edge> edges);
  Multigraph(int n, std::span<const Edge> edges);
  Multigraph(int n, std::vector<Weight> pairWeights);

  int order() const { return n_; }
  Weight weight(int u, int v) const { return w_[pairIndex(u, v)]; }
  void setWeight(int u, int v, Weight w);
  void addWeight(int u, int v, Weight w) { setWeight(u, v, weight(u, v) + w); }

  /// Weights indexed by pairIndex.
  const std::vector<Weight>& pairWeights() const { return w_; }

  /// Total edge weight (the degree of the monomial x^m).
  std::uint64_t edgeCount() const;
  Weight maxWeight() const;
  bool isSimple() const;
  bool isEmpty() const;
  std::vector<Edge> edges() const;
  std::uint64_t vertexDegree(int v) const;
  bool isIsolated(int v) const;
  int supportSize() const;
  int isolatedCount() const { return n_ - supportSize(); }
  bool isConnected() const;  // on its support; the edgeless graph counts as connected
  bool isForest() const;     // simple and acyclic

  bool operator==(const Multigraph&) const = default;

 private:
  int n_ = 0;
  std::vector<Weight> w_;
};

/// Graph with exact rational values on pairs: an evaluation point.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n) : n_(n), w_(pairCount(n)) {}
  static WeightedGraph fromMultigraph(const Multigraph& m);

  int order() const { return n_; }
  const mpq_class& weight(int u, int v) const { return w_[pairIndex(u, v)]; }
  void setWeight(int u, int v, mpq_class w) {
    w.canonicalize();
    w_[pairIndex(u, v)] = std::move(w);
  }
  const std::vector<mpq_class>& pairWeights() const { return w_; }

 private:
  int n_ = 0;
  std::vector<mpq_class> w_;
};

// Structural transforms. All return new graphs.

/// Pairwise k - m_{ij} over all pairs, with k = max(1, max weight).
Multigraph complement(const Multigraph& m);
Multigraph scale(const Multigraph& m, Weight factor);
/// Same weights on a larger vertex set.
Multigraph pad(const Multigraph& m, int n);
/// Zeroes every pair containing v; the vertex set is kept.
Multigraph deleteVertex(const Multigraph& m, int v);
/// Vertex v of m becomes vertex perm[v].
Multigraph permute(const Multigraph& m, std::span<const int> perm);
/// Pointwise sum; graphs must share the vertex count.
Multigraph add(const Multigraph& a, const Multigraph& b);
/// Relabels the support to {0..k-1} preserving vertex order.
Multigraph dropIsolated(const Multigraph& m);

/// Connected components on the support, each on the ambient vertex set.
std::vector<Multigraph> components(const Multigraph& m);

/// Text form `n; i j w; i j w` with 1-based vertices.
std::string toText(const Multigraph& m);
/// Accepts `n; i j [w]; ...` and tolerates whitespace; throws ParseError.
Multigraph parseMultigraph(std::string_view text);
/// One graph per non-empty, non-comment line.
std::vector<Multigraph> parseMultigraphList(std::string_view text);

// Frequently used small graphs.
Multigraph singleEdge(int n, Weight w = 1);
Multigraph pathGraph(int vertices, int n);
Multigraph cycleGraph(int vertices, int n);
Multigraph completeGraph(int n);
Multigraph starGraph(int leaves, int n);

}  // namespace ginv
