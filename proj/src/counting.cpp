#include "graphinv/counting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "graphinv/errors.hpp"
#include "graphinv/iso_class.hpp"

namespace ginv {

std::vector<Partition> partitions(int n) {
  if (n < 0) throw std::invalid_argument("partitions of a negative number");
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int left, int maxPart) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int x = std::min(left, maxPart); x >= 1; --x) {
      cur.push_back(x);
      self(self, left - x, x);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

namespace {

void validatePartition(const Partition& lambda) {
  for (int x : lambda) {
    if (x <= 0) throw std::invalid_argument("partition parts must be positive");
  }
}

}  // namespace

mpz_class conjugacyClassSize(const Partition& lambda) {
  validatePartition(lambda);
  const int n = std::accumulate(lambda.begin(), lambda.end(), 0);
  std::map<int, int> mult;
  for (int x : lambda) ++mult[x];
  mpz_class denom = 1;
  for (auto [len, m] : mult) {
    mpz_class lm;
    mpz_ui_pow_ui(lm.get_mpz_t(), len, m);
    denom *= lm * factorial(m);
  }
  return factorial(n) / denom;
}

std::vector<int> pairCycleType(const Partition& lambda) {
  validatePartition(lambda);
  std::vector<int> out;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const int l = lambda[i];
    for (int k = 0; k < (l - 1) / 2; ++k) out.push_back(l);
    if (l % 2 == 0) out.push_back(l / 2);
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      const int g = std::gcd(l, lambda[j]);
      for (int k = 0; k < g; ++k) out.push_back(l / g * lambda[j]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> hilbertSeries(int n, int dMax, CountVariant variant) {
  if (n < 0 || dMax < 0) throw std::invalid_argument("hilbertSeries needs n >= 0 and dMax >= 0");
  std::vector<mpz_class> total(dMax + 1);
  for (const Partition& lambda : partitions(n)) {
    std::vector<mpz_class> poly(dMax + 1);
    poly[0] = 1;
    for (int l : pairCycleType(lambda)) {
      if (variant == CountVariant::Full) {
        for (int d = l; d <= dMax; ++d) poly[d] += poly[d - l];
      } else {
        for (int d = dMax; d >= l; --d) poly[d] += poly[d - l];
      }
    }
    const mpz_class size = conjugacyClassSize(lambda);
    for (int d = 0; d <= dMax; ++d) total[d] += size * poly[d];
  }
  const mpz_class nf = factorial(n);
  for (auto& t : total) {
    if (!mpz_divisible_p(t.get_mpz_t(), nf.get_mpz_t())) throw std::logic_error("cycle index sum not divisible by n!");
    t /= nf;
  }
  return total;
}

// ---------------------------------------------------------------------------

std::size_t BiSeries::index(int m, int d) const {
  if (m < 0 || m > nMax_ || d < 0 || d > dMax_) {
    throw std::out_of_range("series coefficient (" + std::to_string(m) + "," + std::to_string(d) +
                            ") outside truncation (" + std::to_string(nMax_) + "," + std::to_string(dMax_) + ")");
  }
  return static_cast<std::size_t>(m) * (dMax_ + 1) + d;
}

mpz_class& BiSeries::at(int m, int d) { return c_[index(m, d)]; }
const mpz_class& BiSeries::at(int m, int d) const { return c_[index(m, d)]; }

std::string toString(CountKind k) {
  switch (k) {
    case CountKind::H: return "h";
    case CountKind::HSimple: return "h_simple";
    case CountKind::C: return "c";
    case CountKind::CSimple: return "c_simple";
    case CountKind::F: return "f";
    case CountKind::FSimple: return "f_simple";
  }
  return "?";
}

CountKind parseCountKind(std::string_view s) {
  for (CountKind k : {CountKind::H, CountKind::HSimple, CountKind::C, CountKind::CSimple, CountKind::F,
                      CountKind::FSimple}) {
    if (toString(k) == s) return k;
  }
  throw ParseError("unknown count kind '" + std::string(s) + "'");
}

CountTable::CountTable(CountKind kind, int nMax, int dMax) : kind_(kind), nMax_(nMax), dMax_(dMax) {
  if (nMax < 0 || dMax < 0) throw std::invalid_argument("negative table bounds");
  for (int m = 0; m <= nMax; ++m) {
    for (int d = 0; d <= dMax; ++d) entries_[{m, d}] = 0;
  }
}

const mpz_class& CountTable::at(int m, int d) const {
  auto it = entries_.find({m, d});
  if (it == entries_.end()) {
    throw std::out_of_range("count table has no entry (" + std::to_string(m) + "," + std::to_string(d) + ")");
  }
  return it->second;
}

void CountTable::set(int m, int d, mpz_class v) {
  auto it = entries_.find({m, d});
  if (it == entries_.end()) throw std::out_of_range("count table entry outside bounds");
  if (v < 0) throw std::logic_error("negative count at (" + std::to_string(m) + "," + std::to_string(d) + ")");
  it->second = std::move(v);
}

std::string CountTable::toCsv() const {
  std::ostringstream os;
  os << toString(kind_) << ',' << nMax_ << ',' << dMax_ << '\n';
  for (const auto& [key, v] : entries_) os << key.first << ',' << key.second << ',' << v.get_str() << '\n';
  return os.str();
}

CountTable CountTable::fromCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty count table");
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  auto head = split(line);
  if (head.size() != 3) throw ParseError("count table header must be kind,nMax,dMax");
  CountTable t(parseCountKind(head[0]), std::stoi(head[1]), std::stoi(head[2]));
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != 3) throw ParseError("bad count row: " + line);
    mpz_class v;
    if (v.set_str(cells[2], 10) != 0) throw ParseError("bad count value: " + cells[2]);
    t.set(std::stoi(cells[0]), std::stoi(cells[1]), v);
    ++rows;
  }
  if (rows != t.entries_.size()) throw ParseError("count table is missing rows");
  return t;
}

// ---------------------------------------------------------------------------

CountTable hilbertTable(int nMax, int dMax, CountVariant variant) {
  CountTable t(variant == CountVariant::Full ? CountKind::H : CountKind::HSimple, nMax, dMax);
  for (int m = 0; m <= nMax; ++m) {
    auto h = hilbertSeries(m, dMax, variant);
    for (int d = 0; d <= dMax; ++d) t.set(m, d, h[d]);
  }
  return t;
}

BiSeries noIsolatedSeries(const CountTable& h) {
  BiSeries s(h.nMax(), h.dMax());
  for (int m = 0; m <= h.nMax(); ++m) {
    for (int d = 0; d <= h.dMax(); ++d) s.at(m, d) = m == 0 ? h.at(0, d) : h.at(m, d) - h.at(m - 1, d);
  }
  return s;
}

namespace {

using QPoly = std::vector<mpq_class>;  // in x, truncated

// log of a series with constant term 1, graded by z: L_d as polynomials in x.
std::vector<QPoly> logByDegree(const BiSeries& s) {
  const int nMax = s.nMax(), dMax = s.dMax();
  if (s.at(0, 0) != 1) throw std::invalid_argument("series must start with 1");
  std::vector<QPoly> H(dMax + 1, QPoly(nMax + 1)), L(dMax + 1, QPoly(nMax + 1));
  for (int d = 0; d <= dMax; ++d) {
    for (int m = 0; m <= nMax; ++m) H[d][m] = s.at(m, d);
  }
  for (int d = 1; d <= dMax; ++d) {
    QPoly acc(nMax + 1);
    for (int m = 0; m <= nMax; ++m) acc[m] = d * H[d][m];
    for (int j = 1; j < d; ++j) {
      for (int a = 0; a <= nMax; ++a) {
        if (L[j][a] == 0) continue;
        for (int b = 0; a + b <= nMax; ++b) acc[a + b] -= j * L[j][a] * H[d - j][b];
      }
    }
    for (int m = 0; m <= nMax; ++m) L[d][m] = acc[m] / d;
  }
  return L;
}

}  // namespace

CountTable connectedFromSeries(const BiSeries& noIsolated, CountVariant variant) {
  const int nMax = noIsolated.nMax(), dMax = noIsolated.dMax();
  if (nMax < 2 || dMax < 1) throw std::invalid_argument("truncation too small to invert (need nMax >= 2, dMax >= 1)");
  for (int m = 1; m <= nMax; ++m) {
    if (noIsolated.at(m, 0) != 0) throw std::invalid_argument("graphs without edges must have no vertices");
  }
  auto L = logByDegree(noIsolated);
  CountTable c(variant == CountVariant::Full ? CountKind::C : CountKind::CSimple, nMax, dMax);
  std::vector<std::vector<mpq_class>> cq(nMax + 1, std::vector<mpq_class>(dMax + 1));
  for (int d = 1; d <= dMax; ++d) {
    for (int m = 0; m <= nMax; ++m) {
      mpq_class v = L[d][m];
      for (int k = 2; k <= std::min(m, d); ++k) {
        if (m % k == 0 && d % k == 0) v -= cq[m / k][d / k] / k;
      }
      if (v.get_den() != 1) throw std::logic_error("non-integral connected count");
      if (v < 0) throw std::logic_error("negative connected count");
      if (m < 2 && v != 0) throw std::logic_error("connected count on fewer than two vertices");
      cq[m][d] = v;
      c.set(m, d, v.get_num());
    }
  }
  return c;
}

CountTable connectedCounts(int nMax, int dMax, CountVariant variant) {
  return connectedFromSeries(noIsolatedSeries(hilbertTable(nMax, dMax, variant)), variant);
}

BiSeries eulerTransform(const CountTable& connected, int nMax, int dMax) {
  // log H = sum_k C(x^k, z^k)/k, then exponentiate degree by degree in z.
  std::vector<QPoly> L(dMax + 1, QPoly(nMax + 1));
  for (int m = 0; m <= std::min(nMax, connected.nMax()); ++m) {
    for (int d = 1; d <= std::min(dMax, connected.dMax()); ++d) {
      const mpz_class& c = connected.at(m, d);
      if (c == 0) continue;
      for (int k = 1; k * m <= nMax && k * d <= dMax; ++k) {
        mpq_class term(c, k);
        term.canonicalize();
        L[k * d][k * m] += term;
      }
    }
  }
  std::vector<QPoly> H(dMax + 1, QPoly(nMax + 1));
  H[0][0] = 1;
  for (int d = 1; d <= dMax; ++d) {
    for (int j = 1; j <= d; ++j) {
      for (int a = 0; a <= nMax; ++a) {
        if (L[j][a] == 0) continue;
        for (int b = 0; a + b <= nMax; ++b) H[d][a + b] += j * L[j][a] * H[d - j][b];
      }
    }
    for (auto& v : H[d]) v /= d;
  }
  BiSeries out(nMax, dMax);
  for (int d = 0; d <= dMax; ++d) {
    for (int m = 0; m <= nMax; ++m) {
      if (H[d][m].get_den() != 1) throw std::logic_error("non-integral Euler transform coefficient");
      out.at(m, d) = H[d][m].get_num();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Univariate multiset transform of a_d (d >= 1): prod (1 - z^d)^{-a_d}.
std::vector<mpz_class> multisetTransform(const std::vector<mpz_class>& a, int dMax) {
  std::vector<mpz_class> b(dMax + 1), F(dMax + 1);
  for (int j = 1; j <= dMax; ++j) {
    for (int k = 1; k <= j; ++k) {
      if (j % k == 0) b[j] += k * a[k];
    }
  }
  F[0] = 1;
  for (int d = 1; d <= dMax; ++d) {
    mpz_class s = 0;
    for (int j = 1; j <= d; ++j) s += b[j] * F[d - j];
    if (!mpz_divisible_ui_p(s.get_mpz_t(), d)) throw std::logic_error("non-integral multiset transform");
    F[d] = s / d;
  }
  return F;
}

std::vector<mpz_class> fFromConnected(const CountTable& c, int n, int dMax) {
  std::vector<mpz_class> a(dMax + 1);
  for (int d = 1; d <= dMax; ++d) {
    for (int m = 2; m <= n - 1; ++m) a[d] += c.at(m, d);
  }
  return multisetTransform(a, dMax);
}

}  // namespace

std::vector<mpz_class> fCounts(int n, int dMax, CountVariant variant) {
  if (n < 3) throw std::invalid_argument("f counts need n >= 3");
  if (dMax < 1) return std::vector<mpz_class>(dMax + 1, 1);
  return fFromConnected(connectedCounts(n - 1, dMax, variant), n, dMax);
}

CountTable fTable(int nMax, int dMax, CountVariant variant) {
  CountTable t(variant == CountVariant::Full ? CountKind::F : CountKind::FSimple, nMax, dMax);
  for (int m = 0; m < std::min(nMax + 1, 3); ++m) t.set(m, 0, 1);
  if (nMax < 3) return t;
  if (dMax == 0) {
    for (int m = 3; m <= nMax; ++m) t.set(m, 0, 1);
    return t;
  }
  CountTable c = connectedCounts(nMax - 1, dMax, variant);
  for (int m = 3; m <= nMax; ++m) {
    auto f = fFromConnected(c, m, dMax);
    for (int d = 0; d <= dMax; ++d) t.set(m, d, f[d]);
  }
  return t;
}

SopNumerator sopNumerator(int n, int dMax) {
  if (n < 3) throw std::invalid_argument("sop numerator needs n >= 3");
  SopNumerator out;
  for (int d = 1; d <= n; ++d) out.parameterDegrees.push_back(d);
  const int top = (n - 1) * (n - 2) / 2;
  for (int d = 2; d <= top; ++d) out.parameterDegrees.push_back(d);
  out.parameterCount = static_cast<int>(out.parameterDegrees.size());
  if (out.parameterCount != static_cast<int>(pairCount(n))) {
    throw std::logic_error("parameter count differs from the number of variables");
  }
  auto h = hilbertSeries(n, dMax, CountVariant::Full);
  for (int deg : out.parameterDegrees) {
    for (int d = dMax; d >= deg; --d) h[d] -= h[d - deg];
  }
  out.allNonnegative = std::all_of(h.begin(), h.end(), [](const mpz_class& v) { return v >= 0; });
  out.coefficients = std::move(h);
  return out;
}

}  // namespace ginv
