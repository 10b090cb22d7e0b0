#include "graphinv/enumerate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "graphinv/errors.hpp"

namespace ginv {

Family parseFamily(const std::string& name) {
  if (name == "multigraph") return Family::Multigraph;
  if (name == "simple") return Family::Simple;
  if (name == "connected_multigraph") return Family::ConnectedMultigraph;
  if (name == "connected_simple") return Family::ConnectedSimple;
  if (name == "tree") return Family::Tree;
  if (name == "forest") return Family::Forest;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string toString(Family f) {
  switch (f) {
    case Family::Multigraph: return "multigraph";
    case Family::Simple: return "simple";
    case Family::ConnectedMultigraph: return "connected_multigraph";
    case Family::ConnectedSimple: return "connected_simple";
    case Family::Tree: return "tree";
    case Family::Forest: return "forest";
  }
  return "?";
}

namespace {

enum class Step { UnitWeight, NewEdge, AcyclicEdge };

void checkSize(const std::set<IsoClass>& level, const EnumerationBudget& budget) {
  if (level.size() > budget.maxClasses) {
    throw BudgetExceeded("enumeration produced more than " + std::to_string(budget.maxClasses) + " classes");
  }
}

std::vector<IsoClass> augmentLevels(int n, int d, Step step, const EnumerationBudget& budget) {
  std::set<IsoClass> level{IsoClass()};
  for (int e = 1; e <= d; ++e) {
    std::set<IsoClass> next;
    for (const IsoClass& c : level) {
      Multigraph g = c.representative(n);
      for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
          const Weight w = g.weight(u, v);
          if (step != Step::UnitWeight && w != 0) continue;
          g.setWeight(u, v, w + 1);
          if (step != Step::AcyclicEdge || g.isForest()) next.insert(canonicalForm(g));
          g.setWeight(u, v, w);
        }
      }
      checkSize(next, budget);
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

}  // namespace

std::vector<IsoClass> treesOnVertices(int vertices, const EnumerationBudget& budget) {
  if (vertices < 2) throw std::invalid_argument("trees need at least two vertices");
  if (vertices > budget.maxForestVertices) {
    throw BudgetExceeded("tree enumeration limited to " + std::to_string(budget.maxForestVertices) + " vertices");
  }
  std::set<IsoClass> level{canonicalForm(singleEdge(2))};
  for (int k = 3; k <= vertices; ++k) {
    std::set<IsoClass> next;
    for (const IsoClass& t : level) {
      Multigraph g = t.representative(k);
      for (int v = 0; v < k - 1; ++v) {
        g.setWeight(v, k - 1, 1);
        next.insert(canonicalForm(g));
        g.setWeight(v, k - 1, 0);
      }
    }
    checkSize(next, budget);
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

std::vector<IsoClass> enumerate(int n, int d, Family family, const EnumerationBudget& budget) {
  if (n < 0 || d < 0) throw std::invalid_argument("enumerate needs n >= 0 and d >= 0");
  switch (family) {
    case Family::Tree:
      if (d + 1 > n || d == 0) return {};
      return treesOnVertices(d + 1, budget);
    case Family::Forest:
      if (n > budget.maxForestVertices) {
        throw BudgetExceeded("forest enumeration limited to n <= " + std::to_string(budget.maxForestVertices));
      }
      return augmentLevels(n, d, Step::AcyclicEdge, budget);
    default:
      break;
  }
  if (n > budget.maxMultigraphVertices) {
    throw BudgetExceeded("multigraph enumeration limited to n <= " + std::to_string(budget.maxMultigraphVertices));
  }
  const bool simple = family == Family::Simple || family == Family::ConnectedSimple;
  if (simple && static_cast<std::size_t>(d) > pairCount(n)) return {};
  std::vector<IsoClass> all = augmentLevels(n, d, simple ? Step::NewEdge : Step::UnitWeight, budget);
  if (family == Family::ConnectedMultigraph || family == Family::ConnectedSimple) {
    std::erase_if(all, [](const IsoClass& c) { return c.vertices() == 0 || !c.representative().isConnected(); });
  }
  return all;
}

}  // namespace ginv
