#pragma once

// Weak index pairs, F-pairs and index triples.

#include <string>
#include <utility>

#include "conley/dynamics.hpp"

namespace conley {

struct WeakIndexPair {
  CellSet p1;
  CellSet p2;
  CellSet ambient;
};

struct FPair {
  CellSet r1;
  CellSet r2;
  CellSet ambient;
};

struct IndexTriple {
  CellSet p0;
  CellSet p1;
  CellSet p2;
  CellSet ambient;
};

struct Verdict {
  bool certified = true;
  std::string failed;  // condition label, empty when certified
  std::string detail;

  explicit operator bool() const { return certified; }
};

/// (p1 + (X - N), p2 + (X - N)).
std::pair<CellSet, CellSet> t_pair(const CellSet& p1, const CellSet& p2, const CellSet& ambient);
inline std::pair<CellSet, CellSet> t_pair(const WeakIndexPair& p) {
  return t_pair(p.p1, p.p2, p.ambient);
}

/// Conditions checked in order: structure, a, b, c, d.
Verdict verify_weak_index_pair(const CombMap& f, const WeakIndexPair& p);

WeakIndexPair build_weak_index_pair(const CombMap& f, const CellSet& n);

/// Conditions checked in order: structure, Fp1, Fp2, Fp3.
Verdict verify_f_pair(const CombMap& f, const FPair& r);

WeakIndexPair fpair_restrict(const CombMap& f, const FPair& r, const CellSet& n);

/// Index triple for the attractor `a` of Inv(n) with trapping region `t`.
IndexTriple build_index_triple(const CombMap& f, const CellSet& n, const CellSet& a,
                               const CellSet& t);

Verdict verify_index_triple(const CombMap& f, const IndexTriple& tr);

}  // namespace conley
