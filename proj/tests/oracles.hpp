#pragma once
// Brute-force reference implementations used only by tests. They share no
// code path with the library algorithms they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "graphinv/multigraph.hpp"

namespace oracle {

using ginv::Multigraph;
using ginv::Weight;

inline std::vector<std::vector<int>> allPermutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Lex-min pair-weight vector over all of S_n (isolated vertices kept).
inline std::vector<Weight> bruteKey(const Multigraph& m) {
  std::vector<Weight> best;
  for (const auto& p : allPermutations(m.order())) {
    auto w = ginv::permute(m, p).pairWeights();
    if (best.empty() || w < best) best = w;
  }
  return best;
}

/// Distinct labeled images of m under S_n.
inline std::set<std::vector<Weight>> bruteOrbit(const Multigraph& m) {
  std::set<std::vector<Weight>> out;
  for (const auto& p : allPermutations(m.order())) out.insert(ginv::permute(m, p).pairWeights());
  return out;
}

/// Every weight vector on n vertices with total weight d (entries <= cap).
inline std::vector<Multigraph> allWeightings(int n, int d, Weight cap) {
  const std::size_t pairs = ginv::pairCount(n);
  std::vector<Multigraph> out;
  std::vector<Weight> w(pairs, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == pairs) {
      if (left == 0) out.emplace_back(n, w);
      return;
    }
    for (int x = 0; x <= left && static_cast<Weight>(x) <= cap; ++x) {
      w[i] = static_cast<Weight>(x);
      self(self, i + 1, left - x);
    }
    w[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

inline std::size_t bruteClassCount(int n, int d, bool simple, bool connectedOnly = false) {
  std::set<std::vector<Weight>> keys;
  for (const Multigraph& m : allWeightings(n, d, simple ? 1 : static_cast<Weight>(d))) {
    if (connectedOnly && (m.isEmpty() || !m.isConnected() || m.supportSize() != n)) continue;
    keys.insert(bruteKey(m));
  }
  return keys.size();
}

/// Random multigraph with the given vertex count, weights in [0, maxW].
inline Multigraph randomMultigraph(std::mt19937_64& rng, int n, Weight maxW, double density = 0.5) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Weight> wt(1, maxW);
  Multigraph m(n);
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (coin(rng) < density) m.setWeight(u, v, wt(rng));
    }
  }
  return m;
}

inline std::vector<int> randomPermutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Labeled polynomial: monomial exponent vector -> coefficient.
using LabeledPoly = std::map<std::vector<Weight>, mpq_class>;

inline LabeledPoly labeledOrbitSum(const Multigraph& m) {
  LabeledPoly p;
  for (const auto& w : bruteOrbit(m)) p[w] = 1;
  return p;
}

inline LabeledPoly labeledProduct(const LabeledPoly& a, const LabeledPoly& b) {
  LabeledPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<Weight> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// d/dx summed over all variables.
inline LabeledPoly labeledDerivative(const LabeledPoly& p) {
  LabeledPoly out;
  for (const auto& [e, c] : p) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto f = e;
      --f[i];
      out[f] += c * e[i];
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Drops monomials with an exponent >= 2, and (forests) those containing a cycle.
inline LabeledPoly labeledQuotient(const LabeledPoly& p, int n, bool forest) {
  LabeledPoly out;
  for (const auto& [e, c] : p) {
    if (std::any_of(e.begin(), e.end(), [](Weight x) { return x > 1; })) continue;
    if (forest && !Multigraph(n, e).isForest()) continue;
    out[e] = c;
  }
  return out;
}

/// Value of a labeled polynomial at rational pair weights.
inline mpq_class labeledEvaluate(const LabeledPoly& p, const std::vector<mpq_class>& x) {
  mpq_class total = 0;
  for (const auto& [e, c] : p) {
    mpq_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (Weight k = 0; k < e[i]; ++k) t *= x[i];
    }
    total += t;
  }
  return total;
}

}  // namespace oracle
