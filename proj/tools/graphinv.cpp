// graphinv: command-line front end for the graph invariant computations.

#include <sys/file.h>
#include <fcntl.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphinv/acceptance.hpp"
#include "graphinv/counting.hpp"
#include "graphinv/enumerate.hpp"
#include "graphinv/errors.hpp"
#include "graphinv/reconstruction.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace ginv;

namespace {

constexpr const char* kVersion = GRAPHINV_VERSION;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ordered_json bigNumber(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

// ---------------------------------------------------------------------------
// Options shared by all commands.

struct Options {
  int n = 0;
  int d = 0;
  int dmax = 0;
  std::string variant = "full";
  bool labeled = false;
  std::string method = "rank";
  std::string mode = "auto";
  int primes = 2;
  std::string graph;
  std::string format = "jsonl";
  std::string cacheDir;
  bool noCache = false;
  std::string kind = "h";
  bool exact = false;
  std::string checkpoint;
  std::string out;
  std::string certificateOut;
  std::string file;
  bool rank = false;
  bool pendant = false;
  std::string what = "closure";
  std::vector<int> only;
  RecBudget budget;
};

LinalgMode linalgMode(const Options& o, std::size_t columns) {
  if (o.mode == "rational") return LinalgMode::rational();
  if (o.mode == "modular") return LinalgMode::modular(o.primes);
  if (o.mode == "auto") return LinalgMode::automatic(columns);
  throw std::invalid_argument("unknown mode: " + o.mode);
}

Multigraph readGraph(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("--graph is required");
  if (spec[0] != '@') return parseMultigraph(spec);
  std::ifstream in(spec.substr(1));
  if (!in) throw std::invalid_argument("cannot read graph file " + spec.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  auto graphs = parseMultigraphList(ss.str());
  if (graphs.size() != 1) throw ParseError("graph file must contain exactly one graph");
  return graphs[0];
}

// ---------------------------------------------------------------------------
// Reports: a header plus rows, rendered as json-lines, csv or text.

struct Report {
  std::string command;
  std::string commandLine;  // normalized, so cached bytes replay exactly
  std::string inputHash;
  std::vector<ordered_json> rows;
  std::string csvBody;  // used verbatim for csv when set
  std::vector<std::string> lines;  // extra human-readable lines
};

std::string csvCell(const ordered_json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Report& r, const std::string& format) {
  std::ostringstream out;
  if (format == "jsonl") {
    ordered_json header{{"type", "header"},
                        {"command", r.command},
                        {"commandLine", r.commandLine},
                        {"version", kVersion},
                        {"inputHash", r.inputHash}};
    out << header.dump() << '\n';
    for (const auto& row : r.rows) {
      ordered_json line{{"type", "row"}};
      line.update(row);
      out << line.dump() << '\n';
    }
  } else if (format == "csv") {
    out << "# command: " << r.commandLine << "\n# version: " << kVersion << "\n# input-hash: " << r.inputHash << '\n';
    if (!r.csvBody.empty()) {
      out << r.csvBody;
    } else if (!r.rows.empty()) {
      std::vector<std::string> keys;
      for (const auto& row : r.rows) {
        for (const auto& [k, v] : row.items()) {
          if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        }
      }
      for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
      out << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
          out << (i ? "," : "");
          if (row.contains(keys[i])) out << csvCell(row[keys[i]]);
        }
        out << '\n';
      }
    }
  } else {
    out << r.commandLine << "  (graphinv " << kVersion << ", input " << r.inputHash << ")\n";
    for (const auto& row : r.rows) {
      bool first = true;
      for (const auto& [k, v] : row.items()) {
        out << (first ? "" : "  ") << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        first = false;
      }
      out << '\n';
    }
    for (const auto& l : r.lines) out << l << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Cache: <dir>/<input hash>.entry holding a header line and the report bytes.

class Cache {
 public:
  explicit Cache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::optional<std::string> load(const std::string& key) {
    Lock lock(dir_);
    std::ifstream in(path(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    std::stringstream body;
    body << in.rdbuf();
    const std::string bytes = body.str();
    const std::string expected = "graphinv-cache " + std::string(kVersion) + " input " + key + " content " + hex(fnv1a(bytes));
    if (header != expected) return std::nullopt;  // stale version or corruption: recompute
    return bytes;
  }

  void store(const std::string& key, const std::string& bytes) {
    Lock lock(dir_);
    const fs::path tmp = path(key).string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      out << "graphinv-cache " << kVersion << " input " << key << " content " << hex(fnv1a(bytes)) << '\n' << bytes;
    }
    fs::rename(tmp, path(key));
  }

 private:
  struct Lock {
    int fd;
    explicit Lock(const fs::path& dir) : fd(::open((dir / "lock").c_str(), O_CREAT | O_RDWR, 0644)) {
      if (fd >= 0) ::flock(fd, LOCK_EX);
    }
    ~Lock() {
      if (fd >= 0) {
        ::flock(fd, LOCK_UN);
        ::close(fd);
      }
    }
    Lock(const Lock&) = delete;
    Lock& operator=(const Lock&) = delete;
  };

  fs::path path(const std::string& key) const { return dir_ / (key + ".entry"); }
  fs::path dir_;
};

// ---------------------------------------------------------------------------
// Commands

Report countCommand(const Options& o) {
  Report r;
  const CountKind kind = parseCountKind(o.kind);
  const bool simple = kind == CountKind::HSimple || kind == CountKind::CSimple || kind == CountKind::FSimple;
  const CountVariant v = simple ? CountVariant::Simple : CountVariant::Full;
  CountTable t = [&] {
    switch (kind) {
      case CountKind::H:
      case CountKind::HSimple: return hilbertTable(o.n, o.dmax, v);
      case CountKind::C:
      case CountKind::CSimple: return connectedCounts(o.n, o.dmax, v);
      default: return fTable(o.n, o.dmax, v);
    }
  }();
  r.csvBody = t.toCsv();
  const int first = kind == CountKind::F || kind == CountKind::FSimple ? 3 : 0;
  for (int m = first; m <= o.n; ++m) {
    for (int d = 0; d <= o.dmax; ++d) r.rows.push_back({{"kind", o.kind}, {"n", m}, {"d", d}, {"value", bigNumber(t.at(m, d))}});
  }
  return r;
}

Report hilbertCommand(const Options& o) {
  Report r;
  const CountVariant v = parseVariant(o.variant) == Variant::Simple ? CountVariant::Simple : CountVariant::Full;
  if (parseVariant(o.variant) == Variant::Forest) throw std::invalid_argument("hilbert covers full and simple");
  const auto h = hilbertSeries(o.n, o.dmax, v);
  for (int d = 0; d <= o.dmax; ++d) r.rows.push_back({{"n", o.n}, {"d", d}, {"variant", o.variant}, {"dim", bigNumber(h[d])}});
  return r;
}

Report dimsCommand(const Options& o) {
  Report r;
  const DimsReport d = dimsReport(o.n, o.d, parseVariant(o.variant), o.exact, o.budget);
  ordered_json row{{"n", d.n},
                   {"d", d.d},
                   {"variant", toString(d.variant)},
                   {"dimInv", bigNumber(d.dimInv)},
                   {"fBound", bigNumber(d.fBound)}};
  if (d.dimRecExact) row["dimRecExact"] = *d.dimRecExact;
  row["strict"] = d.strict;
  r.rows.push_back(row);
  return r;
}

Report membershipCommand(const Options& o, const std::optional<fs::path>& cacheDir) {
  Report r;
  const Multigraph g = readGraph(o.graph);
  const int n = o.n > 0 ? o.n : g.order();
  const Variant v = parseVariant(o.variant);
  const MembershipResult m = o.mode == "auto" ? isAlgReconstructible(g, n, v, o.budget)
                                               : isAlgReconstructible(g, n, v, linalgMode(o, 0), o.budget);
  ordered_json row{{"target", canonicalForm(g).toString()},
                   {"n", n},
                   {"variant", toString(v)},
                   {"member", m.certificate.has_value()},
                   {"method", m.method}};
  if (!m.annotation.empty()) row["annotation"] = m.annotation;
  if (m.certificate) {
    row["terms"] = m.certificate->combination.size();
    row["verified"] = m.certificate->verified;
    const std::string text = serialize(*m.certificate);
    fs::path path;
    if (!o.certificateOut.empty()) {
      path = o.certificateOut;
    } else if (cacheDir) {
      path = *cacheDir / "certificates" / (hex(fnv1a(text)) + ".cert");
    }
    if (!path.empty()) {
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      std::ofstream(path) << text;
      row["certificatePath"] = path.string();
    } else {
      row["certificate"] = text;
    }
  }
  r.rows.push_back(row);
  return r;
}

Report generatorsCommand(const Options& o) {
  Report r;
  GeneratorOptions opt;
  opt.primes = o.primes;
  opt.checkpoint = o.checkpoint;
  opt.budget = o.budget;
  const GeneratorReport g = minimalGeneratorCounts(o.n, o.dmax, opt);
  for (const auto& d : g.perDegree) {
    ordered_json gens = ordered_json::array();
    for (const auto& c : d.generators) gens.push_back(c.toString());
    r.rows.push_back({{"n", o.n},
                      {"degree", d.degree},
                      {"dimInv", d.dimInv},
                      {"decomposables", d.decomposables},
                      {"newGenerators", d.newGenerators},
                      {"rank", d.rankCertificate},
                      {"generators", gens}});
  }
  r.rows.push_back({{"n", o.n}, {"total", g.total()}, {"beta", g.beta}});
  return r;
}

Report treematrixCommand(const Options& o) {
  Report r;
  const SparseExactMatrix m = o.pendant ? pendantSubmatrix(o.n, o.budget) : treeIncidenceMatrix(o.n, o.labeled, o.budget);
  std::vector<mpq_class> sums(m.cols());
  for (const auto& e : m.entries()) sums[e.col] += e.value;
  const bool sumsOk = std::all_of(sums.begin(), sums.end(), [&](const mpq_class& s) { return s == o.n - 1; });
  ordered_json row{{"n", o.n},
                   {"labeled", o.labeled},
                   {"pendant", o.pendant},
                   {"rows", m.rows()},
                   {"cols", m.cols()},
                   {"nonzeros", m.nonzeros()}};
  if (!o.pendant) row["columnSumsNMinus1"] = sumsOk;
  if (o.rank) {
    const RankReport rk = matrixRankReport(m, linalgMode(o, m.cols()));
    row["rank"] = rk.rank;
    row["fullRowRank"] = rk.fullRowRank;
    row["exact"] = rk.exact;
    row["rankCertificate"] = rk.certificate;
  }
  if (!o.out.empty()) {
    std::ofstream body(o.out + ".mat"), labels(o.out + ".labels.csv");
    writeMatrix(m, body, labels);
    if (!body || !labels) throw std::runtime_error("cannot write matrix files with prefix " + o.out);
    row["matrixFile"] = o.out + ".mat";
    row["labelsFile"] = o.out + ".labels.csv";
  }
  r.rows.push_back(row);
  return r;
}

Report conjectureCommand(const Options& o) {
  Report r;
  const TreeMethod method = parseTreeMethod(o.method);
  const TreeConjectureResult t = checkTreeConjecture(o.n, method, linalgMode(o, 500), o.budget);
  ordered_json row{{"n", t.n}, {"method", o.method}, {"holds", t.holds}};
  if (method == TreeMethod::Rank) {
    row["rows"] = t.rank.rows;
    row["cols"] = t.rank.cols;
    row["rank"] = t.rank.rank;
    row["exact"] = t.rank.exact;
    row["rankCertificate"] = t.rank.certificate;
  } else {
    row["treesChecked"] = t.treesChecked;
    row["treesCertified"] = t.treesCertified;
  }
  r.rows.push_back(row);
  return r;
}

Report auditCommand(const Options& o) {
  Report r;
  if (o.what == "closure") {
    const ClosureAudit a = closureAudit(o.n, o.dmax, o.budget);
    for (const auto& e : a.entries) {
      ordered_json row{{"m", e.m.toString()}, {"certified", e.certified}};
      if (e.certified) {
        row["doubled"] = e.doubled.toString();
        row["doubledCertified"] = e.doubledCertified;
        row["complement"] = e.complement.toString();
        row["complementCertified"] = e.complementCertified;
      }
      r.rows.push_back(row);
    }
    r.rows.push_back({{"n", o.n}, {"dmax", o.dmax}, {"classes", a.entries.size()}, {"violations", a.violations}});
  } else if (o.what == "octopus") {
    EnumerationBudget eb;
    for (const IsoClass& t : treesOnVertices(o.n, eb)) {
      const Multigraph g = t.representative();
      const bool oct = isOctopus(g), stared = isStaredOctopus(g);
      ordered_json row{{"tree", t.toString()}, {"diameter", treeDiameter(g)}, {"octopus", oct}, {"staredOctopus", stared}};
      if (oct || stared) row["certified"] = isAlgReconstructible(g, o.n, Variant::Full, o.budget).certificate.has_value();
      r.rows.push_back(row);
    }
  } else if (o.what == "hypomorphy") {
    const HypomorphyHarness h = hypomorphyHarness(o.n, static_cast<Weight>(std::max(1, o.dmax)));
    r.rows.push_back({{"n", o.n},
                      {"maxWeight", std::max(1, o.dmax)},
                      {"graphs", h.graphsExamined},
                      {"hypomorphicPairs", h.hypomorphicPairs},
                      {"evaluationChecks", h.evaluationChecks},
                      {"evaluationMismatches", h.evaluationMismatches}});
  } else if (o.what == "transpose") {
    r.rows.push_back({{"n", o.n}, {"mismatches", transposeRelationMismatches(o.n, o.budget)}});
  } else {
    throw std::invalid_argument("unknown audit: " + o.what);
  }
  return r;
}

int verifyCommand(const Options& o) {
  int failed = 0;
  runAcceptance(o.only, [&](const CriterionResult& c) {
    failed += !c.passed;
    if (o.format == "human") {
      std::cout << formatResult(c) << std::endl;
    } else {
      std::cout << ordered_json{{"type", "row"},
                                {"criterion", c.id},
                                {"title", c.title},
                                {"passed", c.passed},
                                {"detail", c.detail},
                                {"seconds", c.seconds}}
                       .dump()
                << std::endl;
    }
  });
  return failed ? 1 : 0;
}

int verifyCertificateCommand(const Options& o) {
  std::ifstream in(o.file);
  if (!in) throw std::invalid_argument("cannot read certificate " + o.file);
  std::stringstream ss;
  ss << in.rdbuf();
  const MembershipCertificate cert = parseCertificate(ss.str());
  const bool ok = verifyCertificate(cert);
  std::cout << ordered_json{{"type", "row"},
                            {"target", cert.target.toString()},
                            {"n", cert.n},
                            {"variant", toString(cert.variant)},
                            {"terms", cert.combination.size()},
                            {"valid", ok}}
                   .dump()
            << std::endl;
  return ok ? 0 : 1;
}

// Normalized description of the inputs of a cacheable command.
std::string normalizedCommandLine(const std::string& command, const CLI::App& sub) {
  std::string s = "graphinv " + command;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help" || name == "--cache-dir" || name == "--no-cache" || opt->count() == 0) continue;
    s += " " + name;
    for (const auto& v : opt->results()) s += " " + v;
  }
  return s;
}

void addCommon(CLI::App& sub, Options& o) {
  sub.add_option("--format", o.format, "csv | jsonl | human")->check(CLI::IsMember({"csv", "jsonl", "human"}));
  sub.add_option("--cache-dir", o.cacheDir, "result cache directory (default: $GRAPHINV_CACHE_DIR)");
  sub.add_flag("--no-cache", o.noCache, "always recompute");
  sub.add_option("--budget-spanning", o.budget.maxSpanningSet, "max products in one spanning set");
  sub.add_option("--budget-tree-n", o.budget.maxUnlabeledTreeVertices, "max n for unlabeled tree matrices");
  sub.add_option("--budget-labeled-n", o.budget.maxLabeledTreeVertices, "max n for labeled tree matrices");
  sub.add_option("--budget-membership-n", o.budget.maxMembershipTreeVertices, "max n for tree membership runs");
  sub.add_option("--budget-generator-n", o.budget.maxGeneratorVertices, "max n for generator runs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph invariant algebras: counts, generators, reconstructibility certificates, tree matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  auto n = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--n", o.n, "number of vertices");
    if (required) opt->required();
    return s;
  };

  auto* count = n(app.add_subcommand("count", "count tables (h, c, f, and simple variants)"));
  count->add_option("--kind", o.kind, "h | h_simple | c | c_simple | f | f_simple");
  count->add_option("--d,--dmax", o.dmax, "maximum degree")->required();

  auto* hilbert = n(app.add_subcommand("hilbert", "Hilbert series of the invariant algebra"));
  hilbert->add_option("--d,--dmax", o.dmax, "maximum degree")->required();
  hilbert->add_option("--variant", o.variant, "full | simple");

  auto* dims = n(app.add_subcommand("dims", "dimension of Inv against the bound on Rec"));
  dims->add_option("--d", o.d, "degree")->required();
  dims->add_option("--variant", o.variant, "full | simple");
  dims->add_flag("--exact", o.exact, "also compute dim Rec from the spanning set");

  auto* membership = n(app.add_subcommand("membership", "certify algebraic reconstructibility"), false);
  membership->add_option("--graph", o.graph, "graph text or @file")->required();
  membership->add_option("--variant", o.variant, "full | simple | forest");
  membership->add_option("--mode", o.mode, "rational | modular | auto");
  membership->add_option("--primes", o.primes, "number of primes in modular mode");
  membership->add_option("--certificate-out", o.certificateOut, "write the certificate here");

  auto* gens = n(app.add_subcommand("generators", "minimal generator counts by degree"));
  gens->add_option("--d,--dmax", o.dmax, "maximum degree")->required();
  gens->add_option("--primes", o.primes, "number of primes for large ranks");
  gens->add_option("--checkpoint", o.checkpoint, "resumable progress file");

  auto* treematrix = n(app.add_subcommand("treematrix", "forest/tree incidence matrix"));
  treematrix->add_flag("--labeled", o.labeled, "labeled trees");
  treematrix->add_flag("--pendant", o.pendant, "rows whose forest has an isolated vertex");
  treematrix->add_flag("--rank", o.rank, "compute the rank");
  treematrix->add_option("--mode", o.mode, "rational | modular | auto");
  treematrix->add_option("--primes", o.primes, "number of primes in modular mode");
  treematrix->add_option("--out", o.out, "write <out>.mat and <out>.labels.csv");

  auto* conjecture = n(app.add_subcommand("conjecture", "tree reconstructibility check"));
  conjecture->add_option("--method", o.method, "rank | membership");
  conjecture->add_option("--mode", o.mode, "rational | modular | auto");
  conjecture->add_option("--primes", o.primes, "number of primes in modular mode");

  auto* audit = n(app.add_subcommand("audit", "closure, octopus, hypomorphy and transpose audits"));
  audit->add_option("--what", o.what, "closure | octopus | hypomorphy | transpose");
  audit->add_option("--d,--dmax", o.dmax, "maximum degree (closure) or maximum weight (hypomorphy)");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--only", o.only, "criterion numbers");
  verify->add_option("--format", o.format, "jsonl | human");

  auto* verifyCert = app.add_subcommand("verify-certificate", "re-expand and check a certificate file");
  verifyCert->add_option("--file", o.file, "certificate file")->required();

  for (CLI::App* s : std::vector<CLI::App*>{count, hilbert, dims, membership, gens, treematrix, conjecture, audit}) addCommon(*s, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed()) return verifyCommand(o);
    if (verifyCert->parsed()) return verifyCertificateCommand(o);

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const std::string line = normalizedCommandLine(command, *sub);
    // graph files are hashed by content, not by name
    std::string inputs = line;
    if (!o.graph.empty()) inputs += "\n" + toText(readGraph(o.graph));
    const std::string key = hex(fnv1a(std::string(kVersion) + "\n" + inputs));

    std::optional<fs::path> cacheDir;
    if (!o.noCache) {
      if (!o.cacheDir.empty()) {
        cacheDir = o.cacheDir;
      } else if (const char* env = std::getenv("GRAPHINV_CACHE_DIR"); env && *env) {
        cacheDir = env;
      }
    }
    // membership writes a certificate file, so it is never replayed
    const bool cacheable = cacheDir && command != "membership" && o.checkpoint.empty() && o.out.empty();
    std::optional<Cache> cache;
    if (cacheable) {
      cache.emplace(*cacheDir);
      if (auto hit = cache->load(key)) {
        std::cout << *hit;
        return 0;
      }
    }

    Report r;
    if (command == "count") r = countCommand(o);
    else if (command == "hilbert") r = hilbertCommand(o);
    else if (command == "dims") r = dimsCommand(o);
    else if (command == "membership") r = membershipCommand(o, cacheDir);
    else if (command == "generators") r = generatorsCommand(o);
    else if (command == "treematrix") r = treematrixCommand(o);
    else if (command == "conjecture") r = conjectureCommand(o);
    else r = auditCommand(o);
    r.command = command;
    r.commandLine = line;
    r.inputHash = key;
    const std::string bytes = render(r, o.format);
    if (cache) cache->store(key, bytes);
    std::cout << bytes;
    return 0;
  } catch (const BudgetExceeded& e) {
    std::cout << ordered_json{{"type", "error"}, {"error", "budget_exceeded"}, {"message", e.what()}}.dump() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "graphinv: " << e.what() << std::endl;
    return 1;
  }
}
