#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ginv {

/// Sparse vector: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<std::uint32_t, mpq_class>>;

struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  mpq_class value;
};

/// Sparse matrix with exact entries and opaque string labels on rows and
/// columns. When prime() is set the entries are read modulo that prime.
class SparseExactMatrix {
 public:
  SparseExactMatrix() = default;
  SparseExactMatrix(std::vector<std::string> rowLabels, std::vector<std::string> colLabels,
                    std::optional<std::uint64_t> prime = std::nullopt);
  /// Unlabeled matrix; labels default to 1-based indices.
  SparseExactMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rowLabels_.size(); }
  std::size_t cols() const { return colLabels_.size(); }
  const std::vector<std::string>& rowLabels() const { return rowLabels_; }
  const std::vector<std::string>& colLabels() const { return colLabels_; }
  std::optional<std::uint64_t> prime() const { return prime_; }

  mpq_class get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const mpq_class& v);
  void add(std::size_t r, std::size_t c, const mpq_class& v);
  SparseRow row(std::size_t r) const;
  std::vector<MatrixEntry> entries() const;  // row-major
  std::size_t nonzeros() const;

  SparseExactMatrix transpose() const;
  /// Keeps the listed rows, in the given order.
  SparseExactMatrix selectRows(const std::vector<std::size_t>& keep) const;
  /// Row i of the result is row perm[i] of this; column j is column colPerm[j].
  SparseExactMatrix permuted(const std::vector<std::size_t>& rowPerm, const std::vector<std::size_t>& colPerm) const;

  bool operator==(const SparseExactMatrix&) const = default;

 private:
  void check(std::size_t r, std::size_t c) const;
  std::vector<std::string> rowLabels_, colLabels_;
  std::vector<std::map<std::uint32_t, mpq_class>> rows_;
  std::optional<std::uint64_t> prime_;
};

/// How rank and solving are carried out.
struct LinalgMode {
  enum class Kind { Rational, Modular };
  Kind kind = Kind::Modular;
  std::vector<std::uint64_t> primes;

  static LinalgMode rational() { return {Kind::Rational, {}}; }
  /// `count` random primes just below 2^62, reproducible from the seed.
  static LinalgMode modular(int count = 2, std::uint64_t seed = 0x5eed);
  /// Rational below 500 columns, otherwise modular with two primes.
  static LinalgMode automatic(std::size_t columns);
  std::string describe() const;
};

std::vector<std::uint64_t> randomPrimes(int count, std::uint64_t seed);

struct RankResult {
  std::size_t rank = 0;
  /// True for rational elimination, or when a modular rank is already maximal.
  bool exact = false;
  std::string certificate;
  std::vector<std::size_t> perPrime;  // modular mode only
};

/// Rational: exact rank. Modular: the maximum over the primes, a lower bound
/// on the rational rank (equal unless every prime is unlucky).
RankResult rank(const SparseExactMatrix& m, const LinalgMode& mode);

/// Rank over the integers mod p.
std::size_t rankModP(const SparseExactMatrix& m, std::uint64_t p);
std::size_t rankRational(const SparseExactMatrix& m);

/// Indices of a maximal set of linearly independent rows found mod p, in
/// elimination order.
std::vector<std::size_t> independentRowsModP(const std::vector<SparseRow>& rows, std::size_t cols, std::uint64_t p);

/// Row echelon form grown one vector at a time, over Q or modulo a prime.
class IncrementalEchelon {
 public:
  IncrementalEchelon(std::size_t cols, std::optional<std::uint64_t> prime);
  IncrementalEchelon(IncrementalEchelon&&) noexcept;
  IncrementalEchelon& operator=(IncrementalEchelon&&) noexcept;
  ~IncrementalEchelon();

  /// True when the row was independent of everything inserted so far.
  bool insert(const SparseRow& row);
  bool inSpan(const SparseRow& row);
  std::size_t rank() const;
  std::size_t cols() const { return cols_; }

 private:
  struct Impl;
  std::size_t cols_;
  std::unique_ptr<Impl> impl_;
};

struct SolveResult {
  /// target = sum coefficients[i] * basis[i], checked exactly; empty optional if not in the span.
  std::optional<std::vector<mpq_class>> coefficients;
  /// For "not in span": exact, or the primes that agreed.
  std::string annotation;
};

/// Expresses target in the span of the basis vectors (columns < cols).
SolveResult solveInSpan(const std::vector<SparseRow>& basis, const SparseRow& target, std::size_t cols,
                        const LinalgMode& mode);

/// Labeled variant: every label must belong to the universe.
template <class Key>
SolveResult solveInSpan(const std::vector<Key>& universe, const std::vector<std::map<Key, mpq_class>>& basis,
                        const std::map<Key, mpq_class>& target, const LinalgMode& mode) {
  std::map<Key, std::uint32_t> index;
  for (const Key& k : universe) index.emplace(k, static_cast<std::uint32_t>(index.size()));
  if (index.size() != universe.size()) throw std::invalid_argument("duplicate label in universe");
  auto toRow = [&](const std::map<Key, mpq_class>& v) {
    SparseRow row;
    for (const auto& [k, c] : v) {
      auto it = index.find(k);
      if (it == index.end()) throw std::invalid_argument("vector label outside the label universe");
      if (c != 0) row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return row;
  };
  std::vector<SparseRow> rows;
  rows.reserve(basis.size());
  for (const auto& v : basis) rows.push_back(toRow(v));
  return solveInSpan(rows, toRow(target), universe.size(), mode);
}

/// Header `rows cols field` (field `Q` or the prime), entries `i j num/den`
/// 1-based, terminated by `0 0 0`. Labels go to a sidecar CSV `index,key`
/// whose indices are `r<i>` and `c<j>`.
void writeMatrix(const SparseExactMatrix& m, std::ostream& matrix, std::ostream& labels);
SparseExactMatrix readMatrix(std::istream& matrix, std::istream& labels);
/// Matrix body without labels (labels become indices).
SparseExactMatrix readMatrix(std::istream& matrix);

}  // namespace ginv
