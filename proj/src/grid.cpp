#include "conley/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conley/error.hpp"

namespace conley {

GridDomain::GridDomain(int dim, std::vector<Interval> bounds, std::vector<int> divisions)
    : dim_(dim), bounds_(std::move(bounds)), divisions_(std::move(divisions)), cell_count_(1) {
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw Error(ErrorKind::Ingestion, "grid dim must be 1 or 2, got " + std::to_string(dim_));
  }
  if (static_cast<int>(bounds_.size()) != dim_ || static_cast<int>(divisions_.size()) != dim_) {
    throw Error(ErrorKind::Ingestion, "grid bounds and divisions must have one entry per axis");
  }
  for (int k = 0; k < dim_; ++k) {
    if (divisions_[k] < 1) {
      throw Error(ErrorKind::Ingestion, "grid divisions must be positive");
    }
    if (!(bounds_[k].lower < bounds_[k].upper) || !std::isfinite(bounds_[k].lower) ||
        !std::isfinite(bounds_[k].upper)) {
      throw Error(ErrorKind::Ingestion, "grid bounds must be finite with lower < upper");
    }
    cell_count_ *= static_cast<std::size_t>(divisions_[k]);
  }
}

double GridDomain::cell_width(int axis) const {
  return (bounds_[axis].upper - bounds_[axis].lower) / divisions_[axis];
}

MultiIndex GridDomain::multi_index(CellId id) const {
  if (!valid(id)) {
    throw Error(ErrorKind::InvalidCell, "cell id " + std::to_string(id) + " out of range");
  }
  if (dim_ == 1) return {static_cast<int>(id), 0};
  const auto d0 = static_cast<std::size_t>(divisions_[0]);
  return {static_cast<int>(id % d0), static_cast<int>(id / d0)};
}

bool GridDomain::contains(const MultiIndex& index) const {
  for (int k = 0; k < dim_; ++k) {
    if (index[k] < 0 || index[k] >= divisions_[k]) return false;
  }
  return dim_ == 2 || index[1] == 0;
}

CellId GridDomain::id(const MultiIndex& index) const {
  if (!contains(index)) {
    throw Error(ErrorKind::InvalidCell, "multi-index out of range");
  }
  if (dim_ == 1) return static_cast<CellId>(index[0]);
  return static_cast<CellId>(index[0]) +
         static_cast<CellId>(divisions_[0]) * static_cast<CellId>(index[1]);
}

std::optional<CellId> GridDomain::locate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim_) return std::nullopt;
  MultiIndex index{0, 0};
  for (int k = 0; k < dim_; ++k) {
    const double x = point[k];
    if (!(x >= bounds_[k].lower && x <= bounds_[k].upper)) return std::nullopt;
    int i = static_cast<int>(std::floor((x - bounds_[k].lower) / cell_width(k)));
    index[k] = std::clamp(i, 0, divisions_[k] - 1);
  }
  return id(index);
}

CellSet::CellSet(std::size_t universe, std::initializer_list<CellId> ids) : bits_(universe) {
  for (CellId c : ids) insert(c);
}

CellSet::CellSet(std::size_t universe, std::span<const CellId> ids) : bits_(universe) {
  for (CellId c : ids) insert(c);
}

CellSet CellSet::all(std::size_t universe) {
  CellSet s(universe);
  s.bits_.set();
  return s;
}

void CellSet::insert(CellId id) {
  if (id >= bits_.size()) {
    throw Error(ErrorKind::InvalidCell, "cell id " + std::to_string(id) + " out of range");
  }
  bits_.set(id);
}

void CellSet::erase(CellId id) {
  if (id < bits_.size()) bits_.reset(id);
}

CellSet& CellSet::operator|=(const CellSet& other) {
  bits_ |= other.bits_;
  return *this;
}

CellSet& CellSet::operator&=(const CellSet& other) {
  bits_ &= other.bits_;
  return *this;
}

CellSet& CellSet::operator-=(const CellSet& other) {
  bits_ -= other.bits_;
  return *this;
}

CellSet CellSet::complement() const {
  CellSet s = *this;
  s.bits_.flip();
  return s;
}

std::optional<CellId> CellSet::first() const {
  auto pos = bits_.find_first();
  if (pos == Bits::npos) return std::nullopt;
  return pos;
}

std::vector<CellId> CellSet::ids() const {
  std::vector<CellId> out;
  out.reserve(size());
  for (CellId c : *this) out.push_back(c);
  return out;
}

namespace {

void add_box(const GridDomain& grid, const MultiIndex& center, int radius, CellSet& out) {
  const int r1 = grid.dim() == 2 ? radius : 0;
  for (int dj = -r1; dj <= r1; ++dj) {
    for (int di = -radius; di <= radius; ++di) {
      MultiIndex m{center[0] + di, center[1] + dj};
      if (grid.contains(m)) out.insert(grid.id(m));
    }
  }
}

}  // namespace

CellSet neighbors(const GridDomain& grid, CellId cell) {
  CellSet out(grid.cell_count());
  add_box(grid, grid.multi_index(cell), 1, out);
  return out;
}

CellSet neighbors(const GridDomain& grid, const CellSet& cells) {
  return collar(grid, cells, 1);
}

CellSet collar(const GridDomain& grid, const CellSet& cells, int radius) {
  CellSet out(grid.cell_count());
  for (CellId c : cells) add_box(grid, grid.multi_index(c), radius, out);
  return out;
}

CellSet comb_interior(const GridDomain& grid, const CellSet& set) {
  CellSet out(grid.cell_count());
  for (CellId c : set) {
    if (neighbors(grid, c).is_subset_of(set)) out.insert(c);
  }
  return out;
}

CubeLattice::CubeLattice(const GridDomain& grid) : dim_(grid.dim()) {
  for (int k = 0; k < dim_; ++k) extent_[k] = 2 * grid.divisions()[k] + 1;
  size_ = static_cast<std::size_t>(extent_[0]) * static_cast<std::size_t>(extent_[1]);
}

MultiIndex CubeLattice::coords(CubeId cube) const {
  return {static_cast<int>(cube % static_cast<std::size_t>(extent_[0])),
          static_cast<int>(cube / static_cast<std::size_t>(extent_[0]))};
}

CubeId CubeLattice::id(const MultiIndex& e) const {
  return static_cast<CubeId>(e[0]) + static_cast<CubeId>(extent_[0]) * static_cast<CubeId>(e[1]);
}

int CubeLattice::cube_dim(CubeId cube) const {
  auto e = coords(cube);
  return (e[0] & 1) + (e[1] & 1);
}

CubeId CubeLattice::top_cube(const GridDomain& grid, CellId cell) const {
  auto m = grid.multi_index(cell);
  MultiIndex e{2 * m[0] + 1, dim_ == 2 ? 2 * m[1] + 1 : 0};
  return id(e);
}

std::vector<std::pair<CubeId, int>> CubeLattice::boundary(CubeId cube) const {
  std::vector<std::pair<CubeId, int>> out;
  auto e = coords(cube);
  int before = 0;
  for (int k = 0; k < dim_; ++k) {
    if ((e[k] & 1) == 0) continue;
    const int sign = (before % 2 == 0) ? 1 : -1;
    MultiIndex lo = e, hi = e;
    lo[k] -= 1;
    hi[k] += 1;
    out.emplace_back(id(hi), sign);
    out.emplace_back(id(lo), -sign);
    ++before;
  }
  return out;
}

CubicalComplex::CubicalComplex(const GridDomain& grid) : lattice_(grid), members_(lattice_.size()) {}

std::vector<CubeId> CubicalComplex::cubes(int dim) const {
  std::vector<CubeId> out;
  for (auto q = members_.find_first(); q != decltype(members_)::npos; q = members_.find_next(q)) {
    if (lattice_.cube_dim(q) == dim) out.push_back(q);
  }
  return out;
}

std::vector<CubeId> CubicalComplex::cubes() const {
  std::vector<CubeId> out;
  for (auto q = members_.find_first(); q != decltype(members_)::npos; q = members_.find_next(q)) {
    out.push_back(q);
  }
  return out;
}

void CubicalComplex::add_closed(CubeId cube) {
  auto e = lattice_.coords(cube);
  const int r0 = e[0] & 1;
  const int r1 = e[1] & 1;
  for (int d1 = -r1; d1 <= r1; ++d1) {
    for (int d0 = -r0; d0 <= r0; ++d0) {
      members_.set(lattice_.id({e[0] + d0, e[1] + d1}));
    }
  }
}

CubicalComplex& CubicalComplex::operator|=(const CubicalComplex& other) {
  members_ |= other.members_;
  return *this;
}

CubicalComplex closure_complex(const GridDomain& grid, const CellSet& cells) {
  CubicalComplex cx(grid);
  for (CellId c : cells) cx.add_closed(cx.lattice().top_cube(grid, c));
  return cx;
}

}  // namespace conley
