#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ginv {

/// Full: multigraphs (the invariant ring). Simple: simple graphs.
enum class CountVariant { Full, Simple };

using Partition = std::vector<int>;  // parts in nonincreasing order

/// All partitions of n, parts nonincreasing, in reverse lexicographic order.
std::vector<Partition> partitions(int n);

/// Number of permutations of cycle type lambda: n! / prod(l^{m_l} m_l!).
mpz_class conjugacyClassSize(const Partition& lambda);

/// Cycle lengths of the induced permutation on the C(n,2) vertex pairs, sorted.
std::vector<int> pairCycleType(const Partition& lambda);

/// dim of degree-d piece for d = 0..dMax: unlabeled multigraphs (Full) or
/// simple graphs (Simple) with at most n vertices and d edges.
std::vector<mpz_class> hilbertSeries(int n, int dMax, CountVariant variant);

/// Truncated power series in x (vertices) and z (edges). Access outside the
/// truncation throws std::out_of_range.
class BiSeries {
 public:
  BiSeries(int nMax, int dMax) : nMax_(nMax), dMax_(dMax), c_((nMax + 1) * (dMax + 1)) {}
  int nMax() const { return nMax_; }
  int dMax() const { return dMax_; }
  mpz_class& at(int m, int d);
  const mpz_class& at(int m, int d) const;
  bool operator==(const BiSeries&) const = default;

 private:
  std::size_t index(int m, int d) const;
  int nMax_, dMax_;
  std::vector<mpz_class> c_;
};

enum class CountKind { H, HSimple, C, CSimple, F, FSimple };
std::string toString(CountKind k);
CountKind parseCountKind(std::string_view s);

/// Table of counts indexed by (vertices m, edges d), 0 <= m <= nMax, 0 <= d <= dMax.
class CountTable {
 public:
  CountTable(CountKind kind, int nMax, int dMax);
  CountKind kind() const { return kind_; }
  int nMax() const { return nMax_; }
  int dMax() const { return dMax_; }
  const mpz_class& at(int m, int d) const;
  void set(int m, int d, mpz_class v);

  /// `kind,nMax,dMax` header then `m,d,value` rows in lexicographic order.
  std::string toCsv() const;
  static CountTable fromCsv(std::string_view text);
  bool operator==(const CountTable&) const = default;

 private:
  CountKind kind_;
  int nMax_, dMax_;
  std::map<std::pair<int, int>, mpz_class> entries_;
};

/// h_{m,d} for all m <= nMax, d <= dMax.
CountTable hilbertTable(int nMax, int dMax, CountVariant variant);

/// Step 1: h'_{m,d} = h_{m,d} - h_{m-1,d}, graphs without isolated vertices on exactly m vertices.
BiSeries noIsolatedSeries(const CountTable& h);

/// Steps 2-3: connected counts c_{m,d} from the series of graphs without
/// isolated vertices, by inverting the multiset (Euler) transform.
CountTable connectedCounts(int nMax, int dMax, CountVariant variant);
CountTable connectedFromSeries(const BiSeries& noIsolated, CountVariant variant);

/// Forward multiset transform prod (1 - x^m z^d)^{-c_{m,d}}, truncated.
BiSeries eulerTransform(const CountTable& connected, int nMax, int dMax);

/// f_{n,d} for d = 0..dMax: multisets of connected pieces with 2..n-1 vertices
/// and total weight d (an upper bound for the reconstructible piece).
std::vector<mpz_class> fCounts(int n, int dMax, CountVariant variant);

/// f_{m,d} for all m <= nMax (f is 1 at d = 0 and 0 elsewhere when m < 3).
CountTable fTable(int nMax, int dMax, CountVariant variant);

struct SopNumerator {
  std::vector<mpz_class> coefficients;  // degrees 0..dMax
  bool allNonnegative = true;
  int parameterCount = 0;
  std::vector<int> parameterDegrees;
};

/// Hilbert series of the full invariant ring on n vertices times
/// prod_{d=1..n} (1 - z^d) * prod_{d=2..C(n-1,2)} (1 - z^d), truncated at dMax.
SopNumerator sopNumerator(int n, int dMax);

}  // namespace ginv
