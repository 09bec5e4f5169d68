#include "conley/indexpair.hpp"

#include "conley/error.hpp"

namespace conley {

namespace {

Verdict fail(std::string label, std::string detail) {
  return {false, std::move(label), std::move(detail)};
}

std::string list(const CellSet& s) {
  std::string out = "{";
  bool first = true;
  for (CellId c : s) {
    if (!first) out += ",";
    out += std::to_string(c);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::pair<CellSet, CellSet> t_pair(const CellSet& p1, const CellSet& p2, const CellSet& ambient) {
  const CellSet outside = ambient.complement();
  return {p1 | outside, p2 | outside};
}

Verdict verify_weak_index_pair(const CombMap& f, const WeakIndexPair& p) {
  const auto& grid = f.grid();
  const CellSet& n = p.ambient;
  if (!p.p2.is_subset_of(p.p1) || !p.p1.is_subset_of(n)) {
    return fail("structure", "pair is not nested inside the neighborhood");
  }
  for (const CellSet* pi : {&p.p1, &p.p2}) {
    CellSet escaped = (image(f, *pi) & n) - *pi;
    if (!escaped.empty()) {
      return fail("a", "image re-enters the neighborhood outside the pair at " + list(escaped));
    }
  }
  CellSet exits = image(f, p.p1) - p.p1;
  CellSet touching = (p.p1 & neighbors(grid, exits)) - p.p2;
  if (!touching.empty()) {
    return fail("b", "cells touching the exit image are missing from p2: " + list(touching));
  }
  CellSet s = inv_part(f, n);
  CellSet core = p.p1 - p.p2;
  CellSet uncovered = neighbors(grid, s) - core;
  if (!uncovered.empty()) {
    return fail("c", "invariant part and its margin not inside p1 - p2: " + list(uncovered));
  }
  CellSet outer = core - comb_interior(grid, n);
  if (!outer.empty()) {
    return fail("d", "p1 - p2 not interior to the neighborhood: " + list(outer));
  }
  return {};
}

WeakIndexPair build_weak_index_pair(const CombMap& f, const CellSet& n) {
  if (!is_isolating(f, n)) {
    throw Error(ErrorKind::NotIsolating, "neighborhood does not isolate its invariant part");
  }
  const auto& grid = f.grid();
  const CellSet s = inv_part(f, n);
  const CellSet interior = comb_interior(grid, n);
  Verdict last;
  for (const CellSet& seed : {s, s | (neighbors(grid, s) & n)}) {
    CellSet p1 = positive_hull(f, n, seed);
    CellSet e = p1 - interior;
    CellSet p2 = positive_hull(f, n, e) & p1;
    WeakIndexPair candidate{p1, p2, n};
    last = verify_weak_index_pair(f, candidate);
    if (last) return candidate;
  }
  throw Error(ErrorKind::ResolutionTooCoarse,
              "no weak index pair certified (condition " + last.failed + ": " + last.detail + ")");
}

Verdict verify_f_pair(const CombMap& f, const FPair& r) {
  const auto& grid = f.grid();
  const CellSet& m = r.ambient;
  if (!r.r2.is_subset_of(r.r1) || !r.r1.is_subset_of(m)) {
    return fail("structure", "pair is not nested inside the ambient set");
  }
  for (const CellSet* ri : {&r.r1, &r.r2}) {
    CellSet escaped = (image(f, *ri) & m) - *ri;
    if (!escaped.empty()) {
      return fail("Fp1", "not positively invariant in the ambient set at " + list(escaped));
    }
  }
  CellSet core = r.r1 - r.r2;
  if (!is_isolating(f, neighbors(grid, core))) {
    return fail("Fp2", "closure of r1 - r2 does not isolate its invariant part");
  }
  CellSet outer = core - comb_interior(grid, m);
  if (!outer.empty()) {
    return fail("Fp3", "r1 - r2 not interior to the ambient set: " + list(outer));
  }
  return {};
}

WeakIndexPair fpair_restrict(const CombMap& f, const FPair& r, const CellSet& n) {
  if (!n.is_subset_of(r.ambient)) {
    throw Error(ErrorKind::RestrictInvalid, "restriction set leaves the ambient set");
  }
  if (!is_isolating(f, n)) {
    throw Error(ErrorKind::RestrictInvalid, "restriction set is not isolating");
  }
  if (!(r.r1 - r.r2).is_subset_of(comb_interior(f.grid(), n))) {
    throw Error(ErrorKind::RestrictInvalid, "r1 - r2 is not interior to the restriction set");
  }
  WeakIndexPair p{r.r1 & n, r.r2 & n, n};
  Verdict v = verify_weak_index_pair(f, p);
  if (!v) {
    throw Error(ErrorKind::RestrictInvalid,
                "restriction is not a weak index pair (condition " + v.failed + ": " + v.detail + ")");
  }
  return p;
}

IndexTriple build_index_triple(const CombMap& f, const CellSet& n, const CellSet& a,
                               const CellSet& t) {
  auto coarse = [](const std::string& what, const Error& e) {
    return Error(ErrorKind::ResolutionTooCoarse, what + ": " + e.what());
  };
  WeakIndexPair outer = [&] {
    try {
      return build_weak_index_pair(f, n);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotIsolating) throw;
      throw coarse("pair for the invariant set", e);
    }
  }();
  const CellSet m = t & n;
  if (!(inv_part(f, m) == a)) {
    throw Error(ErrorKind::NotAttractor, "trapping region does not isolate the attractor in N");
  }
  WeakIndexPair inner = [&] {
    try {
      return build_weak_index_pair(f, m);
    } catch (const Error& e) {
      throw coarse("pair for the attractor", e);
    }
  }();
  IndexTriple tr{outer.p1, (inner.p1 & outer.p1) | outer.p2, (inner.p2 & outer.p1) | outer.p2, n};
  Verdict v = verify_index_triple(f, tr);
  if (!v) {
    throw Error(ErrorKind::ResolutionTooCoarse,
                "index triple not certified (" + v.failed + ": " + v.detail + ")");
  }
  return tr;
}

Verdict verify_index_triple(const CombMap& f, const IndexTriple& tr) {
  if (!tr.p2.is_subset_of(tr.p1) || !tr.p1.is_subset_of(tr.p0) || !tr.p0.is_subset_of(tr.ambient)) {
    return fail("structure", "triple is not nested inside the neighborhood");
  }
  auto tag = [](const char* which, Verdict v) {
    if (!v) v.failed = std::string(which) + "." + v.failed;
    return v;
  };
  if (auto v = tag("(p0,p2)", verify_weak_index_pair(f, {tr.p0, tr.p2, tr.ambient})); !v) return v;
  if (auto v = tag("(p1,p2)", verify_f_pair(f, {tr.p1, tr.p2, tr.ambient})); !v) return v;
  if (auto v = tag("(p0,p1)", verify_f_pair(f, {tr.p0, tr.p1, tr.ambient})); !v) return v;
  return {};
}

}  // namespace conley
