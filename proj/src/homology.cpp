#include "conley/homology.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "conley/error.hpp"

namespace conley {

namespace {

using Chain = std::map<CubeId, std::int64_t>;

void add_to(Chain& acc, const Chain& c, std::int64_t scale) {
  for (const auto& [cube, coef] : c) {
    auto& slot = acc[cube];
    slot += scale * coef;
    if (slot == 0) acc.erase(cube);
  }
}

Chain boundary_of(const CubeLattice& lattice, const Chain& c) {
  Chain out;
  for (const auto& [cube, coef] : c) {
    for (const auto& [face, sign] : lattice.boundary(cube)) {
      auto& slot = out[face];
      slot += sign * coef;
      if (slot == 0) out.erase(face);
    }
  }
  return out;
}

std::vector<std::int64_t> generator_lookup(const RelativeComplex& cx) {
  std::vector<std::int64_t> lookup(cx.outer.lattice().size(), -1);
  for (const auto& gens : cx.generators) {
    for (std::size_t i = 0; i < gens.size(); ++i) lookup[gens[i]] = static_cast<std::int64_t>(i);
  }
  return lookup;
}

// Vertex-coordinate box, inclusive on both ends.
struct Box {
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> hi{0, 0};

  bool empty() const { return lo[0] > hi[0] || lo[1] > hi[1]; }
  void intersect(const Box& b) {
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::max(lo[k], b.lo[k]);
      hi[k] = std::min(hi[k], b.hi[k]);
    }
  }
};

class Selector {
 public:
  Selector(const CombMap& f, const CellSet& p1, SelectorPolicy policy)
      : grid_(f.grid()), lattice_(grid_), p1_(p1), policy_(policy),
        value_box_(f.cell_count()) {
    for (CellId c : p1) {
      const CellSet& t = f.targets(c);
      if (t.empty()) {
        throw Error(ErrorKind::CarrierError, "cell " + std::to_string(c) + " of p1 has an empty value");
      }
      Box b{{1 << 30, 1 << 30}, {-1, -1}};
      for (CellId d : t) {
        auto m = grid_.multi_index(d);
        for (int k = 0; k < 2; ++k) {
          b.lo[k] = std::min(b.lo[k], m[k]);
          b.hi[k] = std::max(b.hi[k], m[k] + (k < grid_.dim() ? 1 : 0));
        }
      }
      value_box_[c] = b;
    }
  }

  Box carrier(CubeId q) const {
    auto e = lattice_.coords(q);
    std::array<std::vector<int>, 2> idx;
    for (int k = 0; k < 2; ++k) {
      if (k >= grid_.dim()) {
        idx[k] = {0};
      } else if (e[k] & 1) {
        idx[k] = {(e[k] - 1) / 2};
      } else {
        for (int i : {e[k] / 2 - 1, e[k] / 2}) {
          if (i >= 0 && i < grid_.divisions()[k]) idx[k].push_back(i);
        }
      }
    }
    Box box{{-(1 << 30), -(1 << 30)}, {1 << 30, 1 << 30}};
    bool any = false;
    for (int j : idx[1]) {
      for (int i : idx[0]) {
        CellId c = grid_.id({i, j});
        if (!p1_.contains(c)) continue;
        box.intersect(value_box_[c]);
        any = true;
      }
    }
    if (!any) throw Error(ErrorKind::Internal, "cube outside the closure of p1");
    if (box.empty()) {
      throw Error(ErrorKind::CarrierError,
                  "values of cells around cube " + std::to_string(q) + " do not intersect");
    }
    return box;
  }

  Chain vertex_image(CubeId q) const {
    Box b = carrier(q);
    const auto& v = policy_ == SelectorPolicy::LowestVertex ? b.lo : b.hi;
    return {{lattice_.id({2 * v[0], 2 * v[1]}), 1}};
  }

  Chain path(const MultiIndex& a, const MultiIndex& b) const {
    Chain out;
    const int s0 = b[0] > a[0] ? 1 : -1;
    for (int x = std::min(a[0], b[0]); x < std::max(a[0], b[0]); ++x) {
      out[lattice_.id({2 * x + 1, 2 * a[1]})] = s0;
    }
    const int s1 = b[1] > a[1] ? 1 : -1;
    for (int y = std::min(a[1], b[1]); y < std::max(a[1], b[1]); ++y) {
      out[lattice_.id({2 * b[0], 2 * y + 1})] = s1;
    }
    return out;
  }

  MultiIndex vertex_of(const Chain& c) const {
    auto e = lattice_.coords(c.begin()->first);
    return {e[0] / 2, e[1] / 2};
  }

  Chain edge_image(CubeId q, const std::map<CubeId, Chain>& phi) const {
    CubeId upper = 0, lower = 0;
    for (const auto& [face, sign] : lattice_.boundary(q)) (sign > 0 ? upper : lower) = face;
    return path(vertex_of(phi.at(lower)), vertex_of(phi.at(upper)));
  }

  Chain square_image(CubeId q, const std::map<CubeId, Chain>& phi) const {
    Chain z;
    for (const auto& [face, sign] : lattice_.boundary(q)) add_to(z, phi.at(face), sign);
    Box b = carrier(q);
    Chain c;
    for (int i = b.lo[0]; i < b.hi[0]; ++i) {
      std::int64_t running = 0;
      for (int j = b.lo[1]; j < b.hi[1]; ++j) {
        auto it = z.find(lattice_.id({2 * i + 1, 2 * j}));
        if (it != z.end()) running += it->second;
        if (running != 0) c[lattice_.id({2 * i + 1, 2 * j + 1})] = running;
      }
    }
    if (boundary_of(lattice_, c) != z) {
      throw Error(ErrorKind::CarrierError, "no filling of a 2-cube image inside its carrier");
    }
    return c;
  }

  const CubeLattice& lattice() const { return lattice_; }

 private:
  const GridDomain& grid_;
  CubeLattice lattice_;
  const CellSet& p1_;
  SelectorPolicy policy_;
  std::vector<Box> value_box_;
};

QMatrix relative_matrix(const std::vector<CubeId>& source, const std::vector<CubeId>& target_gens,
                        const std::vector<std::int64_t>& target_lookup,
                        const std::map<CubeId, Chain>& phi) {
  QMatrix m = QMatrix::Zero(static_cast<Eigen::Index>(target_gens.size()),
                            static_cast<Eigen::Index>(source.size()));
  for (std::size_t j = 0; j < source.size(); ++j) {
    for (const auto& [cube, coef] : phi.at(source[j])) {
      auto row = target_lookup[cube];
      if (row >= 0) m(row, static_cast<Eigen::Index>(j)) = Rational(coef);
    }
  }
  return m;
}

}  // namespace

RelativeComplex relative_complex(const GridDomain& grid, const CellSet& p1, const CellSet& p2) {
  if (!p2.is_subset_of(p1)) throw Error(ErrorKind::Internal, "relative complex needs p2 inside p1");
  RelativeComplex cx{closure_complex(grid, p1), closure_complex(grid, p2), {}, {}};
  const int dim = grid.dim();
  for (int q = 0; q <= dim; ++q) {
    std::vector<CubeId> gens;
    for (CubeId c : cx.outer.cubes(q)) {
      if (!cx.inner.contains(c)) gens.push_back(c);
    }
    cx.generators.push_back(std::move(gens));
  }
  auto lookup = generator_lookup(cx);
  const auto& lattice = cx.outer.lattice();
  for (int q = 0; q <= dim; ++q) {
    const auto& cols = cx.generators[q];
    const Eigen::Index rows = q == 0 ? 0 : static_cast<Eigen::Index>(cx.generators[q - 1].size());
    QMatrix d = QMatrix::Zero(rows, static_cast<Eigen::Index>(cols.size()));
    if (q > 0) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        for (const auto& [face, sign] : lattice.boundary(cols[j])) {
          if (lookup[face] >= 0) d(lookup[face], static_cast<Eigen::Index>(j)) = Rational(sign);
        }
      }
    }
    cx.boundary.push_back(std::move(d));
  }
  for (int q = 1; q < dim; ++q) {
    QMatrix dd = cx.boundary[q] * cx.boundary[q + 1];
    if (!dd.isZero()) throw Error(ErrorKind::Internal, "boundary of boundary is nonzero");
  }
  return cx;
}

RelativeHomology relative_homology(const GridDomain& grid, const CellSet& p1, const CellSet& p2) {
  RelativeHomology h{relative_complex(grid, p1, p2), {}, {}, {}};
  const int dim = grid.dim();
  for (int q = 0; q <= dim; ++q) {
    const auto n = static_cast<Eigen::Index>(h.complex.generators[q].size());
    QMatrix z = nullspace<Rational>(h.complex.boundary[q]);
    QMatrix b = q < dim ? column_basis<Rational>(h.complex.boundary[q + 1]) : QMatrix(n, 0);
    QMatrix joined(n, b.cols() + z.cols());
    joined << b, z;
    auto e = row_echelon<Rational>(joined);
    std::vector<Eigen::Index> picked;
    for (auto c : e.pivots) {
      if (c >= b.cols()) picked.push_back(c);
    }
    QMatrix reps(n, static_cast<Eigen::Index>(picked.size()));
    for (std::size_t k = 0; k < picked.size(); ++k) {
      reps.col(static_cast<Eigen::Index>(k)) = joined.col(picked[k]);
    }
    h.dims.push_back(static_cast<int>(reps.cols()));
    h.cycles.push_back(std::move(reps));
    h.boundaries.push_back(std::move(b));
  }
  return h;
}

QVector RelativeHomology::coordinates(int q, const QVector& z) const {
  const QMatrix& b = boundaries[q];
  const QMatrix& c = cycles[q];
  QMatrix basis(z.rows(), b.cols() + c.cols());
  basis << b, c;
  auto x = solve<Rational>(basis, z);
  if (!x) throw Error(ErrorKind::Internal, "chain is not a relative cycle");
  return x->bottomRows(c.cols()).col(0);
}

ChainMap induced_chain_map(const CombMap& f, const CellSet& p1, const CellSet& p2,
                           const CellSet& ambient, SelectorPolicy policy) {
  const auto& grid = f.grid();
  {
    std::vector<CellId> bad;
    for (CellId c : check_values_acyclic(f)) {
      if (p1.contains(c)) bad.push_back(c);
    }
    if (!bad.empty()) {
      throw Error(ErrorKind::ValuesNotAcyclic,
                  "value of cell " + std::to_string(bad.front()) + " is not a contiguous block");
    }
  }
  auto [t1, t2] = t_pair(p1, p2, ambient);
  ChainMap out{relative_complex(grid, p1, p2), relative_complex(grid, t1, t2), {}};
  Selector sel(f, p1, policy);
  const auto& lattice = sel.lattice();

  std::map<CubeId, Chain> phi;
  for (int q = 0; q <= grid.dim(); ++q) {
    for (CubeId cube : out.source.outer.cubes(q)) {
      if (q == 0) phi[cube] = sel.vertex_image(cube);
      else if (q == 1) phi[cube] = sel.edge_image(cube, phi);
      else phi[cube] = sel.square_image(cube, phi);
    }
  }
  for (const auto& [cube, image] : phi) {
    Chain expected;
    for (const auto& [face, sign] : lattice.boundary(cube)) add_to(expected, phi.at(face), sign);
    if (boundary_of(lattice, image) != expected) {
      throw Error(ErrorKind::CarrierError, "selector does not commute with the boundary");
    }
    const bool in_p2 = out.source.inner.contains(cube);
    for (const auto& [target, coef] : image) {
      if (!out.target.outer.contains(target) || (in_p2 && !out.target.inner.contains(target))) {
        throw Error(ErrorKind::CarrierError, "selector image leaves the target pair");
      }
    }
  }
  auto lookup = generator_lookup(out.target);
  for (int q = 0; q <= grid.dim(); ++q) {
    out.matrices.push_back(
        relative_matrix(out.source.generators[q], out.target.generators[q], lookup, phi));
  }
  return out;
}

IndexMapData index_map(const CombMap& f, const CellSet& p1, const CellSet& p2,
                       const CellSet& ambient, SelectorPolicy policy) {
  const auto& grid = f.grid();
  ChainMap chain = induced_chain_map(f, p1, p2, ambient, policy);
  auto [t1, t2] = t_pair(p1, p2, ambient);
  RelativeHomology src = relative_homology(grid, p1, p2);
  RelativeHomology tgt = relative_homology(grid, t1, t2);
  auto lookup = generator_lookup(tgt.complex);

  IndexMapData out;
  for (int q = 0; q <= grid.dim(); ++q) {
    const auto& gens = src.complex.generators[q];
    QMatrix inclusion = QMatrix::Zero(static_cast<Eigen::Index>(tgt.complex.generators[q].size()),
                                      static_cast<Eigen::Index>(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (lookup[gens[j]] >= 0) inclusion(lookup[gens[j]], static_cast<Eigen::Index>(j)) = 1;
    }
    const int ds = src.dims[q], dt = tgt.dims[q];
    QMatrix phi_star(dt, ds), inc_star(dt, ds);
    for (int k = 0; k < ds; ++k) {
      QVector h = src.cycles[q].col(k);
      phi_star.col(k) = tgt.coordinates(q, chain.matrices[q] * h);
      inc_star.col(k) = tgt.coordinates(q, inclusion * h);
    }
    auto inv = inverse<Rational>(inc_star);
    if (!inv) {
      throw Error(ErrorKind::ExcisionFailure,
                  "inclusion into the T-pair is not an isomorphism in degree " + std::to_string(q));
    }
    out.dims.push_back(ds);
    out.matrices.push_back(*inv * phi_star);
  }
  return out;
}

LerayReduction leray_reduce(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "Leray reduction needs a square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return {0, QMatrix(0, 0)};
  QMatrix power = m;
  for (Eigen::Index k = 1; k < n; ++k) power = power * m;
  QMatrix w = column_basis<Rational>(power);
  if (w.cols() == 0) return {0, QMatrix(0, 0)};
  auto r = solve<Rational>(w, m * w);
  if (!r) throw Error(ErrorKind::Internal, "eventual image is not invariant");
  return {static_cast<int>(w.cols()), *r};
}

ConleyIndex pair_index(const CombMap& f, const CellSet& p1, const CellSet& p2,
                       const CellSet& ambient, SelectorPolicy policy) {
  IndexMapData data = index_map(f, p1, p2, ambient, policy);
  ConleyIndex out;
  for (const auto& m : data.matrices) {
    auto red = leray_reduce(m);
    out.dims.push_back(red.dimension);
    out.automorphisms.push_back(std::move(red.automorphism));
  }
  return out;
}

ConleyIndexResult conley_index(const CombMap& f, const CellSet& n) {
  WeakIndexPair pair = build_weak_index_pair(f, n);
  ConleyIndex index = pair_index(f, pair.p1, pair.p2, pair.ambient);
  return {std::move(pair), std::move(index)};
}

Polynomial poincare_series(const std::vector<int>& dims) {
  return Polynomial(std::vector<std::int64_t>(dims.begin(), dims.end()));
}

}  // namespace conley
