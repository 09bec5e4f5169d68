#pragma once

// Rational cubical homology of pairs, induced chain maps, index maps and the
// Leray reduction.

#include <cstdint>
#include <string>
#include <vector>

#include "conley/indexpair.hpp"
#include "conley/linalg.hpp"
#include "conley/polynomial.hpp"

namespace conley {

/// Chain complex of (cl p1, cl p2): generators are cubes of cl p1 not in cl p2.
struct RelativeComplex {
  CubicalComplex outer;
  CubicalComplex inner;
  std::vector<std::vector<CubeId>> generators;  // per degree, ascending
  std::vector<QMatrix> boundary;                // boundary[q]: C_q -> C_{q-1}; boundary[0] has 0 rows
};

struct RelativeHomology {
  RelativeComplex complex;
  std::vector<int> dims;
  std::vector<QMatrix> cycles;      // representatives of a homology basis, as columns
  std::vector<QMatrix> boundaries;  // basis of the boundary space, as columns

  /// Coordinates of the class of cycle `z` (degree q) in the basis `cycles[q]`.
  QVector coordinates(int q, const QVector& z) const;
};

RelativeComplex relative_complex(const GridDomain& grid, const CellSet& p1, const CellSet& p2);
RelativeHomology relative_homology(const GridDomain& grid, const CellSet& p1, const CellSet& p2);

enum class SelectorPolicy { LowestVertex, HighestVertex };

/// Chain map from C(cl p1, cl p2) to C(T_N(p1, p2)); matrices[q] has one column
/// per generator of the source and one row per generator of the target.
struct ChainMap {
  RelativeComplex source;
  RelativeComplex target;
  std::vector<QMatrix> matrices;
};

ChainMap induced_chain_map(const CombMap& f, const CellSet& p1, const CellSet& p2,
                           const CellSet& ambient,
                           SelectorPolicy policy = SelectorPolicy::LowestVertex);
inline ChainMap induced_chain_map(const CombMap& f, const WeakIndexPair& p,
                                  SelectorPolicy policy = SelectorPolicy::LowestVertex) {
  return induced_chain_map(f, p.p1, p.p2, p.ambient, policy);
}

struct IndexMapData {
  std::vector<int> dims;
  std::vector<QMatrix> matrices;  // square, dims[q] x dims[q]
};

IndexMapData index_map(const CombMap& f, const CellSet& p1, const CellSet& p2,
                       const CellSet& ambient,
                       SelectorPolicy policy = SelectorPolicy::LowestVertex);
inline IndexMapData index_map(const CombMap& f, const WeakIndexPair& p,
                              SelectorPolicy policy = SelectorPolicy::LowestVertex) {
  return index_map(f, p.p1, p.p2, p.ambient, policy);
}

struct LerayReduction {
  int dimension = 0;
  QMatrix automorphism;
};

LerayReduction leray_reduce(const QMatrix& m);

struct ConleyIndex {
  std::vector<int> dims;
  std::vector<QMatrix> automorphisms;
};

/// Leray-reduced index of a pair (weak index pair or F-pair) in `ambient`.
ConleyIndex pair_index(const CombMap& f, const CellSet& p1, const CellSet& p2,
                       const CellSet& ambient,
                       SelectorPolicy policy = SelectorPolicy::LowestVertex);

struct ConleyIndexResult {
  WeakIndexPair pair;
  ConleyIndex index;
};

ConleyIndexResult conley_index(const CombMap& f, const CellSet& n);

Polynomial poincare_series(const std::vector<int>& dims);

}  // namespace conley
