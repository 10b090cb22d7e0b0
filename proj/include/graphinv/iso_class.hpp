#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "graphinv/multigraph.hpp"

namespace ginv {

/// Isomorphism class of a multigraph, isolated vertices discarded.
///
/// The key is `[k, w_{01}, w_{02}, w_{12}, ...]`: the support size followed by
/// the pair weights of a canonical relabeling of the support, in pairIndex
/// order. Keys compare lexicographically. General multigraphs use the
/// lexicographically smallest relabeling; simple forests use a relabeling
/// derived from centre-rooted subtree encodings (both are isomorphism
/// invariants, and a forest key can never coincide with a non-forest key).
class IsoClass {
 public:
  /// The class of the edgeless graph (the constant 1 in the algebra).
  IsoClass() : code_{0} {}
  explicit IsoClass(std::vector<Weight> code);

  int vertices() const { return static_cast<int>(code_[0]); }
  std::uint64_t edges() const { return edges_; }
  bool isSimple() const;
  const std::vector<Weight>& code() const { return code_; }

  /// Canonical representative on exactly vertices() vertices.
  Multigraph representative() const;
  /// Canonical representative padded to n >= vertices().
  Multigraph representative(int n) const;

  /// Multigraph text format of the representative.
  std::string toString() const;
  static IsoClass parse(std::string_view text);

  std::strong_ordering operator<=>(const IsoClass& o) const { return code_ <=> o.code_; }
  bool operator==(const IsoClass& o) const { return code_ == o.code_; }

 private:
  std::vector<Weight> code_;
  std::uint64_t edges_ = 0;
};

struct IsoClassHash {
  std::size_t operator()(const IsoClass& c) const noexcept;
};

/// Canonical class plus the relabeling that produced it.
struct CanonicalLabeling {
  IsoClass cls;
  /// order[j] = original vertex placed at canonical position j (support only).
  std::vector<int> order;
  /// |Aut| of the support graph.
  std::uint64_t automorphisms = 1;
};

CanonicalLabeling canonicalLabeling(const Multigraph& m);
IsoClass canonicalForm(const Multigraph& m);

/// Sizes attached to an S_n orbit: orbitSize * autCount = n!.
struct OrbitData {
  mpz_class orbitSize;
  mpz_class autCount;
};

OrbitData orbitData(const IsoClass& cls, int n);
OrbitData orbitData(const Multigraph& m, int n);
mpz_class orbitSize(const IsoClass& cls, int n);

/// Sparse labeled graph: (pairIndex, weight) pairs sorted by pair index.
using SparseGraph = std::vector<std::pair<std::uint32_t, Weight>>;

/// Every labeled member of the S_n-orbit of the class, each exactly once,
/// in a deterministic order. Throws if the support exceeds n.
std::vector<SparseGraph> orbitMembers(const IsoClass& cls, int n);

/// Calls fn(member) for each labeled multigraph in the S_n-orbit of m.
void forEachOrbitMember(const Multigraph& m, int n, const std::function<void(const Multigraph&)>& fn);

/// Multiset of classes of g_{-i}, sorted.
using Deck = std::vector<IsoClass>;
Deck deck(const Multigraph& g);
bool hypomorphic(const Multigraph& a, const Multigraph& b);
bool isomorphic(const Multigraph& a, const Multigraph& b);

/// Number of labeled copies of the simple graph m (in S_n) whose edges all lie in g.
std::uint64_t embeddings(const Multigraph& m, const Multigraph& g);

/// n! as a big integer.
mpz_class factorial(int n);

}  // namespace ginv
