#pragma once

// Combinatorial multivalued maps F: cells -o cells.

#include <array>
#include <utility>
#include <vector>

#include "conley/grid.hpp"

namespace conley {

class CombMap {
 public:
  /// `targets` must have one entry per cell of `grid`, each over the grid's universe.
  CombMap(GridDomain grid, std::vector<CellSet> targets);

  const GridDomain& grid() const { return grid_; }
  std::size_t cell_count() const { return grid_.cell_count(); }

  const CellSet& targets(CellId c) const { return targets_.at(c); }
  const std::vector<CellId>& successors(CellId c) const { return succ_[c]; }
  const std::vector<CellId>& predecessors(CellId c) const { return pred_[c]; }

  CellSet domain() const;
  CellSet empty_set() const { return CellSet(cell_count()); }
  CellSet full_set() const { return CellSet::all(cell_count()); }

 private:
  GridDomain grid_;
  std::vector<CellSet> targets_;
  std::vector<std::vector<CellId>> succ_;
  std::vector<std::vector<CellId>> pred_;
};

using Breakpoints = std::vector<std::pair<double, double>>;

/// Explicit table: entries (cell, targets). Unlisted cells map to the empty set.
CombMap from_table(const GridDomain& grid,
                   const std::vector<std::pair<CellId, std::vector<CellId>>>& entries);

/// Outer approximation of the region between two piecewise-linear curves (1D grids).
CombMap from_pl_envelope(const GridDomain& grid, const Breakpoints& lower, const Breakpoints& upper);

struct SamplePair {
  std::vector<double> x;
  std::vector<double> y;
};

CombMap from_samples(const GridDomain& grid, const std::vector<SamplePair>& pairs, int pad);

CellSet image(const CombMap& f, const CellSet& a);

/// Cells whose nonempty value is not a contiguous axis-aligned block. Empty means certified.
std::vector<CellId> check_values_acyclic(const CombMap& f);

}  // namespace conley
