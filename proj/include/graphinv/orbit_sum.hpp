#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "graphinv/iso_class.hpp"

namespace ginv {

/// Which graded algebra a polynomial lives in.
///  Full:   the invariant ring itself.
///  Simple: modulo the squares x_{ij}^2 (only simple graphs survive).
///  Forest: additionally modulo cycles (only forests survive).
enum class Variant { Full, Simple, Forest };

std::string toString(Variant v);
Variant parseVariant(const std::string& name);

struct Algebra {
  Variant variant = Variant::Full;
  int n = 0;  // ambient vertex count
  bool operator==(const Algebra&) const = default;
};

/// True when the class survives in the quotient.
bool admissible(const IsoClass& cls, Variant v);

/// Linear combination of orbit sums <m> with exact rational coefficients.
/// Zero coefficients are never stored.
class OrbitSumPoly {
 public:
  using Terms = std::map<IsoClass, mpq_class>;

  OrbitSumPoly() = default;
  explicit OrbitSumPoly(Algebra alg) : alg_(alg) {}

  static OrbitSumPoly basis(const IsoClass& cls, Algebra alg);
  static OrbitSumPoly constant(mpq_class c, Algebra alg);

  const Algebra& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  mpq_class coefficient(const IsoClass& cls) const;

  /// Adds c * <cls>; classes outside the quotient are dropped.
  void addTerm(const IsoClass& cls, const mpq_class& c);
  OrbitSumPoly& operator+=(const OrbitSumPoly& o);
  OrbitSumPoly& operator-=(const OrbitSumPoly& o);
  OrbitSumPoly& operator*=(const mpq_class& c);

  /// Terms of total degree d.
  OrbitSumPoly homogeneousPart(std::uint64_t d) const;
  bool isHomogeneous() const;
  std::optional<std::uint64_t> maxDegree() const;

  bool operator==(const OrbitSumPoly& o) const { return alg_ == o.alg_ && terms_ == o.terms_; }

 private:
  void checkCompatible(const OrbitSumPoly& o) const;

  Algebra alg_;
  Terms terms_;
};

OrbitSumPoly operator+(OrbitSumPoly a, const OrbitSumPoly& b);
OrbitSumPoly operator-(OrbitSumPoly a, const OrbitSumPoly& b);
OrbitSumPoly operator*(mpq_class c, OrbitSumPoly p);

/// <m> in the algebra; zero when m does not survive the quotient.
OrbitSumPoly orbitSum(const Multigraph& m, Algebra alg);

/// Expansion of <a><b> in the orbit-sum basis as (class, integer coefficient)
/// pairs sorted by class. Memoized; safe for concurrent callers.
const std::vector<std::pair<IsoClass, mpz_class>>& basisProduct(const IsoClass& a, const IsoClass& b, Algebra alg);

/// Bilinear product; terms above degreeCap (when given) are never formed.
OrbitSumPoly multiply(const OrbitSumPoly& p, const OrbitSumPoly& q,
                      std::optional<std::uint64_t> degreeCap = std::nullopt);
OrbitSumPoly operator*(const OrbitSumPoly& p, const OrbitSumPoly& q);

/// D = sum of all partial derivatives d/dx_{ij}. Full variant only.
OrbitSumPoly derivation(const OrbitSumPoly& p);

/// Value at a graph with rational weights (terms are lifted as-is from quotients).
mpq_class evaluate(const OrbitSumPoly& p, const WeightedGraph& g);

/// p_k = sum of x_{ij}^k.
OrbitSumPoly powerSum(int k, int n);
/// E_d = sum over vertices i of (sum_{j != i} x_{ij})^d.
OrbitSumPoly degreePowerSum(int d, int n);

/// Image of p in a quotient (or the same algebra): inadmissible terms dropped.
OrbitSumPoly reduce(const OrbitSumPoly& p, Variant target);

/// One term per line: `coeff * key`, key in the multigraph text format.
/// The first line is a comment header `# <variant> n <n>`.
std::string serialize(const OrbitSumPoly& p);
OrbitSumPoly parseOrbitSumPoly(std::string_view text);

/// Drops the memoized basis products (memory control for long runs).
void clearProductCache();

}  // namespace ginv
