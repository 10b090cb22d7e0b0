#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "graphinv/linalg.hpp"
#include "graphinv/orbit_sum.hpp"

namespace ginv {

/// Size limits for the reconstruction computations.
struct RecBudget {
  std::size_t maxSpanningSet = 20'000;  // products in one flat spanning set
  int maxUnlabeledTreeVertices = 14;
  int maxLabeledTreeVertices = 8;
  int maxMembershipTreeVertices = 7;
  int maxGeneratorVertices = 6;
};

/// Connected classes with 2..n-1 vertices and `edges` edges that survive in the variant.
std::vector<IsoClass> connectedPieces(int n, int edges, Variant variant);

struct SpanningElement {
  std::vector<IsoClass> pieces;  // sorted by (edges, key)
  OrbitSumPoly product;
};

/// One expanded product per multiset of connected pieces (2..n-1 vertices
/// each) with total edge weight d. Throws BudgetExceeded past maxSpanningSet.
std::vector<SpanningElement> recSpanningSet(int n, int d, Variant variant, const RecBudget& budget = {});

/// Product of the pieces' orbit sums, each padded to n vertices.
OrbitSumPoly expandPieces(const std::vector<IsoClass>& pieces, Algebra alg);

struct CertificateTerm {
  std::vector<IsoClass> pieces;
  mpq_class coefficient;
  bool operator==(const CertificateTerm&) const = default;
};

/// <target> = sum coefficient * prod <piece>, in the given algebra.
struct MembershipCertificate {
  IsoClass target;
  int n = 0;
  Variant variant = Variant::Full;
  std::vector<CertificateTerm> combination;
  bool verified = false;
};

/// Re-expands every product from scratch and compares with <target>. Also
/// rejects pieces that are not connected graphs on 2..n-1 vertices.
bool verifyCertificate(const MembershipCertificate& cert);

/// `target <key> n <n> variant <v>`, then `coeff : piece1 | piece2 | ...`.
std::string serialize(const MembershipCertificate& cert);
MembershipCertificate parseCertificate(std::string_view text);

struct MembershipResult {
  std::optional<MembershipCertificate> certificate;
  std::string method;      // how the answer was obtained
  std::string annotation;  // confidence note for negative answers
};

/// Decides whether <m> lies in the reconstructible subalgebra, degree by
/// degree: the graded piece of degree d is spanned by recSpanningSet(n, d).
/// Full-variant targets whose weights share a factor k are reduced to m/k
/// (substituting x^k for every variable maps the subalgebra into itself).
MembershipResult isAlgReconstructible(const Multigraph& m, int n, Variant variant, const LinalgMode& mode,
                                      const RecBudget& budget = {});
MembershipResult isAlgReconstructible(const Multigraph& m, int n, Variant variant, const RecBudget& budget = {});

// ---------------------------------------------------------------------------

struct GeneratorDegree {
  int degree = 0;
  std::size_t dimInv = 0;
  std::size_t decomposables = 0;
  std::size_t newGenerators = 0;
  std::vector<IsoClass> generators;
  std::string rankCertificate;
};

struct GeneratorReport {
  int n = 0;
  std::vector<GeneratorDegree> perDegree;
  int beta = 0;  // highest degree with a new generator
  std::size_t total() const;
};

struct GeneratorOptions {
  int primes = 2;
  /// Resumable progress file (JSON); empty disables checkpointing.
  std::filesystem::path checkpoint;
  RecBudget budget;
};

/// Degree by degree: decomposables are spanned by g * <b> with g a chosen
/// generator of degree e <= d/2 and b any class of degree d - e; new
/// generators complete that span greedily in key order.
GeneratorReport minimalGeneratorCounts(int n, int dMax, const GeneratorOptions& options = {});

// ---------------------------------------------------------------------------

/// Unlabeled (rows: forests with n-2 edges on <= n vertices, generated as a
/// tree on n-1 vertices or a pair of trees; columns: trees on n vertices) or
/// labeled (labeled forests and trees on {1..n}). Entry = number of edges of
/// the tree whose deletion gives the forest.
SparseExactMatrix treeIncidenceMatrix(int n, bool labeled, const RecBudget& budget = {});

/// Rows of the unlabeled matrix whose forest is one tree on n-1 vertices.
SparseExactMatrix pendantSubmatrix(int n, const RecBudget& budget = {});

struct RankReport {
  std::size_t rows = 0, cols = 0, rank = 0;
  bool fullRowRank = false;
  bool exact = false;
  std::string certificate;
};

RankReport matrixRankReport(const SparseExactMatrix& m, const LinalgMode& mode);
RankReport pendantSubmatrixRank(int n, const LinalgMode& mode, const RecBudget& budget = {});

enum class TreeMethod { Rank, Membership };
TreeMethod parseTreeMethod(const std::string& s);

struct TreeConjectureResult {
  int n = 0;
  TreeMethod method = TreeMethod::Rank;
  bool holds = false;
  RankReport rank;                  // rank method
  std::size_t treesChecked = 0;     // membership method
  std::size_t treesCertified = 0;
};

/// Rank: full row rank of the unlabeled matrix counts as "holds".
/// Membership: every tree on n vertices is certified in the forest algebra.
TreeConjectureResult checkTreeConjecture(int n, TreeMethod method, const LinalgMode& mode, const RecBudget& budget = {});

struct DimsReport {
  int n = 0, d = 0;
  Variant variant = Variant::Full;
  mpz_class dimInv, fBound;
  std::optional<std::size_t> dimRecExact;
  bool strict = false;
};

/// variant: Full or Simple.
DimsReport dimsReport(int n, int d, Variant variant, bool exact, const RecBudget& budget = {});

struct ClosureEntry {
  IsoClass m;
  bool certified = false;
  IsoClass doubled, complement;
  bool doubledCertified = false;
  bool complementCertified = false;
};

struct ClosureAudit {
  int n = 0, dMax = 0;
  std::vector<ClosureEntry> entries;
  std::size_t violations = 0;
};

ClosureAudit closureAudit(int n, int dMax, const RecBudget& budget = {});

/// Trees built from paths sharing one root.
bool isOctopus(const Multigraph& tree);
/// Octopi with extra stars K_{1,k} (k >= 2) whose centres hang off the root.
bool isStaredOctopus(const Multigraph& tree);
int treeDiameter(const Multigraph& tree);

struct HypomorphyHarness {
  std::size_t graphsExamined = 0;
  std::size_t hypomorphicPairs = 0;  // non-isomorphic pairs with equal decks
  std::size_t evaluationChecks = 0;
  std::size_t evaluationMismatches = 0;
};

/// Exhaustive search over multigraphs on n vertices with weights <= maxWeight;
/// for each hypomorphic pair found, every orbit sum with an isolated vertex
/// up to the pair's degree is evaluated on both.
HypomorphyHarness hypomorphyHarness(int n, Weight maxWeight);

/// <f> * p_1 in the forest algebra for every row forest f, compared with the
/// row of the unlabeled matrix (identity normalization), and D<t> in the full
/// algebra compared with (|orbit t| / |orbit f|) * a_{f,t}. Returns the number
/// of mismatching entries.
std::size_t transposeRelationMismatches(int n, const RecBudget& budget = {});

}  // namespace ginv
