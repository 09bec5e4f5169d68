#pragma once

// Dynamical predicates on the transition digraph of a combinatorial map.

#include <optional>
#include <vector>

#include "conley/mvmap.hpp"

namespace conley {

/// Bi-infinite eventually periodic solution:
/// ... backward_cycle, backward_cycle, bridge, forward_cycle, forward_cycle ...
struct Solution {
  std::vector<CellId> backward_cycle;
  std::vector<CellId> bridge;
  std::vector<CellId> forward_cycle;
};

struct LimitSets {
  CellSet alpha;
  CellSet omega;
};

CellSet reach_forward_n(const CombMap& f, const CellSet& n, CellId x, int steps);
CellSet reach_forward(const CombMap& f, const CellSet& n, CellId x);
CellSet reach_backward(const CombMap& f, const CellSet& n, CellId x);

/// Cells of `n` reachable inside `n` from any seed (seeds included when in `n`).
CellSet reach_forward(const CombMap& f, const CellSet& n, const CellSet& seeds);
CellSet reach_backward(const CombMap& f, const CellSet& n, const CellSet& seeds);

CellSet inv_plus(const CombMap& f, const CellSet& n);
CellSet inv_minus(const CombMap& f, const CellSet& n);
CellSet inv_part(const CombMap& f, const CellSet& n);

bool is_isolating(const CombMap& f, const CellSet& n);
bool is_trapping(const CombMap& f, const CellSet& t);

CellSet positive_hull(const CombMap& f, const CellSet& n, const CellSet& a);

/// Throws MalformedSolution when `sigma` is not a solution of `f`.
void validate_solution(const CombMap& f, const Solution& sigma);
LimitSets limit_sets(const CombMap& f, const Solution& sigma);

/// Trapping region for the attractor `a`: forward closure of the radius-`margin`
/// collar of `a`, verified. When `ambient` is given, the invariant part of the
/// region is compared with `a` inside `ambient` only.
CellSet find_trapping_region(const CombMap& f, const CellSet& a,
                             const std::optional<CellSet>& ambient = std::nullopt,
                             int margin = 1);

}  // namespace conley
