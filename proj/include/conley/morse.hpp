#pragma once

// Morse decompositions and attractor sequences via condensation of the
// transition digraph.

#include <optional>
#include <utility>
#include <vector>

#include "conley/dynamics.hpp"

namespace conley {

struct MorseDecomposition {
  CellSet ambient;                          // S = Inv(N)
  CellSet neighborhood;                     // N
  std::vector<CellSet> sets;                // canonical order: ascending smallest cell
  std::vector<std::vector<char>> reaches;   // reaches[i][j]: a solution in S runs from set i to set j (i != j)
  std::vector<std::size_t> linear_order;    // linear_order[k] = canonical index of M_{k+1}

  std::size_t size() const { return sets.size(); }
  /// Morse set M_{k+1} of the linear order.
  const CellSet& level(std::size_t k) const { return sets[linear_order[k]]; }
  /// Position (0-based) of canonical set `i` in the linear order.
  std::size_t position(std::size_t i) const;
};

struct AttractorSequence {
  std::vector<CellSet> attractors;  // A_0 .. A_n
  std::vector<CellSet> repellers;   // A*_0 .. A*_n
  std::vector<CellSet> trapping;    // T_0 .. T_n, T_0 empty
};

/// Recurrent components of the digraph on S = Inv(N), ordered by reachability.
MorseDecomposition morse_decomposition(const CombMap& f, const CellSet& n);

/// Merges the Morse sets meeting each group of cells into one set. Merged
/// members must be pairwise unreachable from one another.
MorseDecomposition merge_morse_sets(const CombMap& f, const MorseDecomposition& d,
                                    const std::vector<std::vector<CellId>>& groups);

/// Replaces the linear order with the one given by one representative cell per
/// Morse set, listed from M_1 upward. The order must extend reachability.
MorseDecomposition with_linear_order(const MorseDecomposition& d,
                                     const std::vector<CellId>& representatives);

/// Throws InvalidDecomposition naming the first failed condition.
void verify_morse_decomposition(const CombMap& f, const MorseDecomposition& d);

CellSet dual_repeller(const CombMap& f, const CellSet& s, const CellSet& a, const CellSet& t);

AttractorSequence attractors_from_morse(const CombMap& f, const MorseDecomposition& d,
                                        int margin = 1);

MorseDecomposition morse_from_attractors(const CombMap& f, const CellSet& s,
                                         const AttractorSequence& seq);

/// Transitive reduction of reachability, as pairs of canonical indices (from, to).
std::vector<std::pair<std::size_t, std::size_t>> morse_graph(const MorseDecomposition& d);

}  // namespace conley
