#include "graphinv/linalg.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "graphinv/errors.hpp"

namespace ginv {

SparseExactMatrix::SparseExactMatrix(std::vector<std::string> rowLabels, std::vector<std::string> colLabels,
                                     std::optional<std::uint64_t> prime)
    : rowLabels_(std::move(rowLabels)), colLabels_(std::move(colLabels)), rows_(rowLabels_.size()), prime_(prime) {
  for (const auto* labels : {&rowLabels_, &colLabels_}) {
    std::vector<std::string> sorted = *labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate matrix label");
    }
  }
  if (colLabels_.size() > UINT32_MAX) throw std::invalid_argument("too many columns");
}

namespace {
std::vector<std::string> indexLabels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i + 1);
  return out;
}
}  // namespace

SparseExactMatrix::SparseExactMatrix(std::size_t rows, std::size_t cols)
    : SparseExactMatrix(indexLabels(rows), indexLabels(cols)) {}

void SparseExactMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols()) throw std::out_of_range("matrix index out of range");
}

mpq_class SparseExactMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  auto it = rows_[r].find(static_cast<std::uint32_t>(c));
  return it == rows_[r].end() ? mpq_class(0) : it->second;
}

void SparseExactMatrix::set(std::size_t r, std::size_t c, const mpq_class& v) {
  check(r, c);
  mpq_class x = v;
  x.canonicalize();
  if (x == 0) {
    rows_[r].erase(static_cast<std::uint32_t>(c));
  } else {
    rows_[r][static_cast<std::uint32_t>(c)] = x;
  }
}

void SparseExactMatrix::add(std::size_t r, std::size_t c, const mpq_class& v) { set(r, c, get(r, c) + v); }

SparseRow SparseExactMatrix::row(std::size_t r) const {
  if (r >= rows()) throw std::out_of_range("matrix row out of range");
  return {rows_[r].begin(), rows_[r].end()};
}

std::vector<MatrixEntry> SparseExactMatrix::entries() const {
  std::vector<MatrixEntry> out;
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& [c, v] : rows_[r]) out.push_back({r, c, v});
  }
  return out;
}

std::size_t SparseExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

SparseExactMatrix SparseExactMatrix::transpose() const {
  SparseExactMatrix t(colLabels_, rowLabels_, prime_);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& [c, v] : rows_[r]) t.rows_[c][static_cast<std::uint32_t>(r)] = v;
  }
  return t;
}

SparseExactMatrix SparseExactMatrix::selectRows(const std::vector<std::size_t>& keep) const {
  std::vector<std::string> labels;
  for (std::size_t r : keep) {
    check(r, 0);
    labels.push_back(rowLabels_[r]);
  }
  SparseExactMatrix out(labels, colLabels_, prime_);
  for (std::size_t i = 0; i < keep.size(); ++i) out.rows_[i] = rows_[keep[i]];
  return out;
}

SparseExactMatrix SparseExactMatrix::permuted(const std::vector<std::size_t>& rowPerm,
                                              const std::vector<std::size_t>& colPerm) const {
  if (rowPerm.size() != rows() || colPerm.size() != cols()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> colInverse(cols());
  for (std::size_t j = 0; j < cols(); ++j) colInverse.at(colPerm[j]) = j;
  std::vector<std::string> rl, cl;
  for (std::size_t i : rowPerm) rl.push_back(rowLabels_.at(i));
  for (std::size_t j : colPerm) cl.push_back(colLabels_.at(j));
  SparseExactMatrix out(rl, cl, prime_);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (const auto& [c, v] : rows_[rowPerm[i]]) out.rows_[i][static_cast<std::uint32_t>(colInverse[c])] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fields

namespace {

struct ModField {
  std::uint64_t p;
  using Elem = std::uint64_t;

  static bool isZero(Elem a) { return a == 0; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p); }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (p - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const { return pow(a, p - 2); }
  std::optional<Elem> fromRational(const mpq_class& q) const {
    const Elem den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (den == 0) return std::nullopt;
    return mul(mpz_fdiv_ui(q.get_num_mpz_t(), p), inv(den));
  }
};

struct RationalField {
  using Elem = mpq_class;
  static bool isZero(const Elem& a) { return sgn(a) == 0; }
  static Elem inv(const Elem& a) { return 1 / a; }
  static Elem neg(const Elem& a) { return -a; }
  static std::optional<Elem> fromRational(const mpq_class& q) { return q; }
};

// In-place acc -= f * v for either field.
inline void subMul(const ModField& F, std::uint64_t& acc, std::uint64_t f, std::uint64_t v) {
  acc = F.sub(acc, F.mul(f, v));
}
inline void subMul(const RationalField&, mpq_class& acc, const mpq_class& f, const mpq_class& v) { acc -= f * v; }
inline std::uint64_t mulBy(const ModField& F, std::uint64_t a, std::uint64_t b) { return F.mul(a, b); }
inline mpq_class mulBy(const RationalField&, const mpq_class& a, const mpq_class& b) { return a * b; }

// Left-looking row echelon form built one row at a time. Each new row is
// reduced by the existing pivot rows in creation order (a pivot row is
// already reduced by every earlier pivot, so one pass suffices). The pivot
// of a surviving row is its nonzero in the column with the fewest entries in
// the whole matrix, ties broken by column index.
template <class Field>
class Echelon {
 public:
  using Elem = typename Field::Elem;
  using Row = std::vector<std::pair<std::uint32_t, Elem>>;

  Echelon(Field f, std::size_t cols, std::vector<std::size_t> colCount, bool trackHistory)
      : F_(std::move(f)), colCount_(std::move(colCount)), acc_(cols), mark_(cols, 0),
        track_(trackHistory) {}

  std::size_t rank() const { return pivots_.size(); }
  const Field& field() const { return F_; }
  const std::vector<std::size_t>& origins() const { return origins_; }

  /// Reduces the row; returns true if it became a new pivot.
  bool insert(const Row& row, std::size_t origin) {
    Row hist;
    if (track_) hist.emplace_back(static_cast<std::uint32_t>(origin), Elem(1));
    Row residual = reduce(row, hist);
    if (residual.empty()) return false;
    std::size_t best = 0;
    for (std::size_t i = 1; i < residual.size(); ++i) {
      if (colCount_[residual[i].first] < colCount_[residual[best].first]) best = i;
    }
    const std::uint32_t col = residual[best].first;
    const Elem scale = F_.inv(residual[best].second);
    for (auto& [c, v] : residual) v = mulBy(F_, v, scale);
    for (auto& [c, v] : hist) v = mulBy(F_, v, scale);
    pivots_.push_back({col, std::move(residual), std::move(hist)});
    origins_.push_back(origin);
    return true;
  }

  /// If row lies in the span, its expression in terms of inserted origins.
  std::optional<Row> express(const Row& row) {
    Row hist;
    Row residual = reduce(row, hist);
    if (!residual.empty()) return std::nullopt;
    // row - sum f_k pivot_k = 0, and hist accumulated -f_k * history_k
    for (auto& [c, v] : hist) v = F_.neg(v);
    return hist;
  }

 private:
  struct Pivot {
    std::uint32_t col;
    Row row;
    Row hist;
  };

  Row reduce(const Row& row, Row& hist) {
    std::vector<std::uint32_t> touched;
    for (const auto& [c, v] : row) {
      acc_[c] = v;
      mark_[c] = 1;
      touched.push_back(c);
    }
    std::map<std::uint32_t, Elem> h;
    for (auto& [o, v] : hist) h[o] = v;
    for (const Pivot& p : pivots_) {
      if (!mark_[p.col] || Field::isZero(acc_[p.col])) continue;
      const Elem f = acc_[p.col];
      for (const auto& [c, v] : p.row) {
        if (!mark_[c]) {
          mark_[c] = 1;
          acc_[c] = Elem(0);
          touched.push_back(c);
        }
        subMul(F_, acc_[c], f, v);
      }
      if (track_) {
        for (const auto& [o, v] : p.hist) subMul(F_, h[o], f, v);
      }
    }
    std::sort(touched.begin(), touched.end());
    Row out;
    for (std::uint32_t c : touched) {
      if (!Field::isZero(acc_[c])) out.emplace_back(c, acc_[c]);
      acc_[c] = Elem(0);
      mark_[c] = 0;
    }
    hist.clear();
    for (auto& [o, v] : h) {
      if (!Field::isZero(v)) hist.emplace_back(o, v);
    }
    return out;
  }

  Field F_;
  std::vector<std::size_t> colCount_;
  std::vector<Elem> acc_;
  std::vector<char> mark_;
  std::vector<Pivot> pivots_;
  std::vector<std::size_t> origins_;
  bool track_;
};

template <class Field>
std::optional<typename Echelon<Field>::Row> convert(const Field& F, const SparseRow& row) {
  typename Echelon<Field>::Row out;
  for (const auto& [c, v] : row) {
    auto x = F.fromRational(v);
    if (!x) return std::nullopt;
    if (!Field::isZero(*x)) out.emplace_back(c, *x);
  }
  return out;
}

template <class Field>
const Field& fieldOf(const Echelon<Field>& e) {
  return e.field();
}

std::vector<std::size_t> columnCounts(const std::vector<SparseRow>& rows, std::size_t cols) {
  std::vector<std::size_t> count(cols, 0);
  for (const auto& r : rows) {
    for (const auto& [c, v] : r) {
      if (c >= cols) throw std::invalid_argument("vector entry beyond the column count");
      ++count[c];
    }
  }
  return count;
}

std::vector<std::size_t> sparsestFirst(const std::vector<SparseRow>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
  return order;
}

template <class Field>
Echelon<Field> eliminate(const Field& F, const std::vector<SparseRow>& rows, std::size_t cols, bool track) {
  Echelon<Field> e(F, cols, columnCounts(rows, cols), track);
  for (std::size_t i : sparsestFirst(rows)) {
    auto r = convert(F, rows[i]);
    if (!r) throw std::domain_error("denominator divisible by the prime");
    e.insert(*r, i);
  }
  return e;
}

std::vector<SparseRow> allRows(const SparseExactMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = m.row(r);
  return rows;
}

bool isPrime(std::uint64_t p) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof p, 0, 0, &p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

std::string joinPrimes(const std::vector<std::uint64_t>& primes) {
  std::string s;
  for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
  return s;
}

}  // namespace

std::vector<std::uint64_t> randomPrimes(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 61, (std::uint64_t{1} << 62) - 1);
  std::vector<std::uint64_t> out;
  while (static_cast<int>(out.size()) < count) {
    std::uint64_t p = dist(rng) | 1;
    while (!isPrime(p)) p += 2;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

LinalgMode LinalgMode::modular(int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("modular mode needs at least one prime");
  return {Kind::Modular, randomPrimes(count, seed)};
}

LinalgMode LinalgMode::automatic(std::size_t columns) { return columns < 500 ? rational() : modular(2); }

std::string LinalgMode::describe() const {
  if (kind == Kind::Rational) return "rational";
  return "modular primes=" + joinPrimes(primes);
}

std::size_t rankModP(const SparseExactMatrix& m, std::uint64_t p) {
  return eliminate(ModField{p}, allRows(m), m.cols(), false).rank();
}

std::size_t rankRational(const SparseExactMatrix& m) {
  return eliminate(RationalField{}, allRows(m), m.cols(), false).rank();
}

RankResult rank(const SparseExactMatrix& m, const LinalgMode& mode) {
  RankResult out;
  const std::size_t cap = std::min(m.rows(), m.cols());
  std::vector<std::uint64_t> primes = mode.primes;
  if (m.prime()) primes = {*m.prime()};
  if (mode.kind == LinalgMode::Kind::Rational && !m.prime()) {
    out.rank = rankRational(m);
    out.exact = true;
    out.certificate = "rational elimination";
    return out;
  }
  if (primes.empty()) throw std::invalid_argument("modular rank needs at least one prime");
  std::vector<std::uint64_t> used;
  for (std::uint64_t p : primes) {
    try {
      out.perPrime.push_back(rankModP(m, p));
      used.push_back(p);
    } catch (const std::domain_error&) {
      // an entry's denominator vanishes mod p; try the next prime
    }
  }
  if (used.empty()) throw std::runtime_error("every prime divides a denominator of the matrix");
  out.rank = *std::max_element(out.perPrime.begin(), out.perPrime.end());
  out.exact = m.prime().has_value() || out.rank == cap;
  out.certificate = "modular primes=" + joinPrimes(used) +
                    (out.exact ? (m.prime() ? " (field rank)" : " (maximal, exact)") : " (lower bound)");
  return out;
}

std::vector<std::size_t> independentRowsModP(const std::vector<SparseRow>& rows, std::size_t cols, std::uint64_t p) {
  return eliminate(ModField{p}, rows, cols, false).origins();
}

struct IncrementalEchelon::Impl {
  std::variant<Echelon<ModField>, Echelon<RationalField>> e;
  std::size_t inserted = 0;
};

IncrementalEchelon::IncrementalEchelon(std::size_t cols, std::optional<std::uint64_t> prime) : cols_(cols) {
  std::vector<std::size_t> zero(cols, 0);
  if (prime) {
    impl_ = std::make_unique<Impl>(Impl{Echelon<ModField>(ModField{*prime}, cols, zero, false)});
  } else {
    impl_ = std::make_unique<Impl>(Impl{Echelon<RationalField>(RationalField{}, cols, zero, false)});
  }
}

IncrementalEchelon::IncrementalEchelon(IncrementalEchelon&&) noexcept = default;
IncrementalEchelon& IncrementalEchelon::operator=(IncrementalEchelon&&) noexcept = default;
IncrementalEchelon::~IncrementalEchelon() = default;

bool IncrementalEchelon::insert(const SparseRow& row) {
  columnCounts({row}, cols_);
  return std::visit(
      [&](auto& e) {
        auto r = convert(fieldOf(e), row);
        if (!r) throw std::domain_error("denominator divisible by the prime");
        return e.insert(*r, impl_->inserted++);
      },
      impl_->e);
}

bool IncrementalEchelon::inSpan(const SparseRow& row) {
  columnCounts({row}, cols_);
  return std::visit(
      [&](auto& e) {
        auto r = convert(fieldOf(e), row);
        if (!r) throw std::domain_error("denominator divisible by the prime");
        return e.express(*r).has_value();
      },
      impl_->e);
}

std::size_t IncrementalEchelon::rank() const {
  return std::visit([](const auto& e) { return e.rank(); }, impl_->e);
}

namespace {

std::optional<std::vector<mpq_class>> rationalSolve(const std::vector<SparseRow>& basis,
                                                    const std::vector<std::size_t>& subset, const SparseRow& target,
                                                    std::size_t cols) {
  std::vector<SparseRow> rows;
  for (std::size_t i : subset) rows.push_back(basis[i]);
  auto e = eliminate(RationalField{}, rows, cols, true);
  auto hist = e.express(*convert(RationalField{}, target));
  if (!hist) return std::nullopt;
  std::vector<mpq_class> coeffs(basis.size());
  for (const auto& [o, v] : *hist) coeffs[subset[o]] = v;
  return coeffs;
}

bool verifies(const std::vector<SparseRow>& basis, const std::vector<mpq_class>& coeffs, const SparseRow& target) {
  std::map<std::uint32_t, mpq_class> sum;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (const auto& [c, v] : basis[i]) sum[c] += coeffs[i] * v;
  }
  std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
  SparseRow canonicalTarget;
  for (const auto& [c, v] : target) {
    mpq_class x = v;
    x.canonicalize();
    if (x != 0) canonicalTarget.emplace_back(c, x);
  }
  return SparseRow(sum.begin(), sum.end()) == canonicalTarget;
}

}  // namespace

SolveResult solveInSpan(const std::vector<SparseRow>& basis, const SparseRow& target, std::size_t cols,
                        const LinalgMode& mode) {
  columnCounts(basis, cols);
  columnCounts({target}, cols);
  std::vector<std::size_t> everything(basis.size());
  std::iota(everything.begin(), everything.end(), 0);
  auto finish = [&](std::optional<std::vector<mpq_class>> c, std::string note) {
    if (c && !verifies(basis, *c, target)) throw std::logic_error("span solution failed exact verification");
    return SolveResult{std::move(c), std::move(note)};
  };
  if (mode.kind == LinalgMode::Kind::Rational) {
    auto c = rationalSolve(basis, everything, target, cols);
    return finish(std::move(c), c ? "exact rational solution" : "not in span (exact rational elimination)");
  }
  if (mode.primes.empty()) throw std::invalid_argument("modular solve needs at least one prime");
  std::vector<std::uint64_t> agreeing;
  bool disagreement = false;
  for (std::uint64_t p : mode.primes) {
    const ModField F{p};
    auto t = convert(F, target);
    if (!t) {
      disagreement = true;
      continue;
    }
    Echelon<ModField> e(F, cols, columnCounts(basis, cols), false);
    bool usable = true;
    for (std::size_t i : sparsestFirst(basis)) {
      auto r = convert(F, basis[i]);
      if (!r) {
        usable = false;
        break;
      }
      e.insert(*r, i);
    }
    if (!usable) {
      disagreement = true;
      continue;
    }
    if (!e.express(*t)) {
      agreeing.push_back(p);
      continue;
    }
    // In the span mod p: solve exactly on the rows that were independent mod p.
    auto c = rationalSolve(basis, e.origins(), target, cols);
    if (c) return finish(std::move(c), "exact solution on rows independent modulo " + std::to_string(p));
    disagreement = true;
  }
  if (!disagreement) {
    return SolveResult{std::nullopt, "not in span modulo primes " + joinPrimes(agreeing) + " (Monte Carlo)"};
  }
  auto c = rationalSolve(basis, everything, target, cols);
  return finish(std::move(c), c ? "exact rational solution (primes disagreed)"
                                 : "not in span (exact rational elimination after prime disagreement)");
}

// ---------------------------------------------------------------------------
// Files

namespace {

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csvSplit(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote in label file");
  return out;
}

struct MatrixBody {
  std::size_t rows = 0, cols = 0;
  std::optional<std::uint64_t> prime;
  std::vector<MatrixEntry> entries;
};

MatrixBody readBody(std::istream& in) {
  MatrixBody b;
  std::string field;
  if (!(in >> b.rows >> b.cols >> field)) throw ParseError("matrix header must be 'rows cols field'");
  if (field != "Q") {
    try {
      b.prime = std::stoull(field);
    } catch (const std::exception&) {
      throw ParseError("unknown matrix field '" + field + "'");
    }
  }
  while (true) {
    std::string i, j, v;
    if (!(in >> i >> j >> v)) throw ParseError("matrix body is missing the '0 0 0' terminator");
    if (i == "0" && j == "0" && v == "0") break;
    MatrixEntry e;
    try {
      e.row = std::stoull(i);
      e.col = std::stoull(j);
    } catch (const std::exception&) {
      throw ParseError("bad matrix indices '" + i + " " + j + "'");
    }
    if (e.row < 1 || e.row > b.rows || e.col < 1 || e.col > b.cols) throw ParseError("matrix index out of range");
    --e.row;
    --e.col;
    if (e.value.set_str(v, 10) != 0) throw ParseError("bad matrix value '" + v + "'");
    e.value.canonicalize();
    b.entries.push_back(std::move(e));
  }
  return b;
}

SparseExactMatrix fill(SparseExactMatrix m, const MatrixBody& b) {
  for (const auto& e : b.entries) {
    if (m.get(e.row, e.col) != 0) throw ParseError("duplicate matrix entry");
    if (e.value == 0) throw ParseError("explicit zero matrix entry");
    m.set(e.row, e.col, e.value);
  }
  return m;
}

}  // namespace

void writeMatrix(const SparseExactMatrix& m, std::ostream& matrix, std::ostream& labels) {
  matrix << m.rows() << ' ' << m.cols() << ' ' << (m.prime() ? std::to_string(*m.prime()) : "Q") << '\n';
  for (const auto& e : m.entries()) {
    matrix << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value.get_num().get_str() << '/' << e.value.get_den().get_str()
           << '\n';
  }
  matrix << "0 0 0\n";
  labels << "index,key\n";
  for (std::size_t i = 0; i < m.rows(); ++i) labels << 'r' << i + 1 << ',' << csvField(m.rowLabels()[i]) << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j) labels << 'c' << j + 1 << ',' << csvField(m.colLabels()[j]) << '\n';
}

SparseExactMatrix readMatrix(std::istream& matrix, std::istream& labels) {
  MatrixBody b = readBody(matrix);
  std::vector<std::string> rl(b.rows), cl(b.cols);
  std::vector<char> seenR(b.rows, 0), seenC(b.cols, 0);
  std::string line;
  if (!std::getline(labels, line) || line != "index,key") throw ParseError("label file must start with 'index,key'");
  while (std::getline(labels, line)) {
    if (line.empty()) continue;
    auto cells = csvSplit(line);
    if (cells.size() != 2 || cells[0].size() < 2) throw ParseError("bad label row: " + line);
    std::size_t idx = 0;
    try {
      idx = std::stoull(cells[0].substr(1));
    } catch (const std::exception&) {
      throw ParseError("bad label index: " + cells[0]);
    }
    auto& target = cells[0][0] == 'r' ? rl : cl;
    auto& seen = cells[0][0] == 'r' ? seenR : seenC;
    if ((cells[0][0] != 'r' && cells[0][0] != 'c') || idx < 1 || idx > target.size()) {
      throw ParseError("label index out of range: " + cells[0]);
    }
    target[idx - 1] = cells[1];
    seen[idx - 1] = 1;
  }
  if (std::count(seenR.begin(), seenR.end(), 0) || std::count(seenC.begin(), seenC.end(), 0)) {
    throw ParseError("label file does not cover every row and column");
  }
  return fill(SparseExactMatrix(rl, cl, b.prime), b);
}

SparseExactMatrix readMatrix(std::istream& matrix) {
  MatrixBody b = readBody(matrix);
  SparseExactMatrix m(b.rows, b.cols);
  if (b.prime) m = SparseExactMatrix(m.rowLabels(), m.colLabels(), b.prime);
  return fill(std::move(m), b);
}

}  // namespace ginv
