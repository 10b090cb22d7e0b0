#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graphinv/iso_class.hpp"

namespace ginv {

enum class Family { Multigraph, Simple, ConnectedMultigraph, ConnectedSimple, Tree, Forest };

Family parseFamily(const std::string& name);
std::string toString(Family f);

/// Size limits for brute-force enumeration.
struct EnumerationBudget {
  int maxMultigraphVertices = 6;
  int maxForestVertices = 10;
  std::size_t maxClasses = 5'000'000;
};

/// Isomorphism classes with support <= n and total weight d in the family,
/// sorted by key. Built by one-edge augmentation plus deduplication.
/// Tree: trees with exactly d edges (so d + 1 <= n vertices). Connected
/// families exclude the edgeless graph. Throws BudgetExceeded past the budget.
std::vector<IsoClass> enumerate(int n, int d, Family family, const EnumerationBudget& budget = {});

/// All unlabeled trees on exactly `vertices` vertices (vertices >= 2).
std::vector<IsoClass> treesOnVertices(int vertices, const EnumerationBudget& budget = {});

}  // namespace ginv
