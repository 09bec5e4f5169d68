#pragma once

// Cubical phase space: a uniform grid over a box in one or two dimensions.
//
// Top-dimensional cells are addressed by a linear id, row-major with axis 0
// fastest. Every set used by the analysis (neighborhoods, invariant sets,
// index pairs, attractors) is a CellSet over these ids.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace conley {

using CellId = std::size_t;
using MultiIndex = std::array<int, 2>;

struct Interval {
  double lower = 0.0;
  double upper = 1.0;

  bool operator==(const Interval&) const = default;
};

class GridDomain {
 public:
  static constexpr int kMaxDim = 2;

  GridDomain(int dim, std::vector<Interval> bounds, std::vector<int> divisions);

  int dim() const { return dim_; }
  const std::vector<Interval>& bounds() const { return bounds_; }
  const std::vector<int>& divisions() const { return divisions_; }
  std::size_t cell_count() const { return cell_count_; }

  double cell_width(int axis) const;

  bool valid(CellId id) const { return id < cell_count_; }
  MultiIndex multi_index(CellId id) const;
  CellId id(const MultiIndex& index) const;
  bool contains(const MultiIndex& index) const;

  /// Cell containing a point; points on the upper box face belong to the last
  /// cell along that axis. Returns nullopt for points outside the box.
  std::optional<CellId> locate(std::span<const double> point) const;

  bool operator==(const GridDomain&) const = default;

 private:
  int dim_;
  std::vector<Interval> bounds_;
  std::vector<int> divisions_;
  std::size_t cell_count_;
};

/// Dense set of top-dimensional cells. Iteration is in ascending id order.
class CellSet {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = CellId;
    using difference_type = std::ptrdiff_t;
    using pointer = const CellId*;
    using reference = CellId;

    const_iterator() = default;
    const_iterator(const Bits* bits, std::size_t pos) : bits_(bits), pos_(pos) {}

    CellId operator*() const { return pos_; }
    const_iterator& operator++() {
      pos_ = bits_->find_next(pos_);
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const const_iterator& other) const { return pos_ == other.pos_; }

   private:
    const Bits* bits_ = nullptr;
    std::size_t pos_ = Bits::npos;
  };

  CellSet() = default;
  explicit CellSet(std::size_t universe) : bits_(universe) {}
  CellSet(std::size_t universe, std::initializer_list<CellId> ids);
  CellSet(std::size_t universe, std::span<const CellId> ids);

  static CellSet all(std::size_t universe);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(CellId id) const { return id < bits_.size() && bits_.test(id); }

  void insert(CellId id);
  void erase(CellId id);

  bool is_subset_of(const CellSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const CellSet& other) const { return bits_.intersects(other.bits_); }

  CellSet& operator|=(const CellSet& other);
  CellSet& operator&=(const CellSet& other);
  CellSet& operator-=(const CellSet& other);

  friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
  friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
  friend CellSet operator-(CellSet a, const CellSet& b) { return a -= b; }

  CellSet complement() const;

  std::optional<CellId> first() const;
  std::vector<CellId> ids() const;

  const_iterator begin() const { return {&bits_, bits_.find_first()}; }
  const_iterator end() const { return {&bits_, Bits::npos}; }

  bool operator==(const CellSet& other) const { return bits_ == other.bits_; }

 private:
  Bits bits_;
};

/// All cells whose closed realization meets the closure of `cell`
/// (vertex adjacency), including `cell` itself.
CellSet neighbors(const GridDomain& grid, CellId cell);

/// Union of neighbors over a set.
CellSet neighbors(const GridDomain& grid, const CellSet& cells);

/// Cells within Chebyshev distance `radius` of the set.
CellSet collar(const GridDomain& grid, const CellSet& cells, int radius);

/// Cells of `set` all of whose neighbors lie in `set`; realizes inside the
/// topological interior of the realization of `set`.
CellSet comb_interior(const GridDomain& grid, const CellSet& set);

// ---------------------------------------------------------------------------
// Elementary cubes.
//
// Cubes are encoded in doubled coordinates: along axis k a cube occupies
// e_k in [0, 2 * divisions[k]], where even e_k is the degenerate interval at
// vertex e_k / 2 and odd e_k is the unit interval [(e_k - 1)/2, (e_k + 1)/2].

using CubeId = std::size_t;

class CubeLattice {
 public:
  explicit CubeLattice(const GridDomain& grid);

  int dim() const { return dim_; }
  std::size_t size() const { return size_; }
  int extent(int axis) const { return extent_[axis]; }

  MultiIndex coords(CubeId cube) const;
  CubeId id(const MultiIndex& coords) const;
  int cube_dim(CubeId cube) const;

  /// Top cube covering a grid cell.
  CubeId top_cube(const GridDomain& grid, CellId cell) const;

  /// Cubical boundary: sum over nondegenerate axes k of
  /// (-1)^(nondegenerate axes before k) * (upper face - lower face).
  std::vector<std::pair<CubeId, int>> boundary(CubeId cube) const;

  bool operator==(const CubeLattice&) const = default;

 private:
  int dim_;
  std::array<int, 2> extent_{1, 1};
  std::size_t size_;
};

class CubicalComplex {
 public:
  explicit CubicalComplex(const GridDomain& grid);

  const CubeLattice& lattice() const { return lattice_; }
  bool contains(CubeId cube) const { return cube < members_.size() && members_.test(cube); }
  std::size_t size() const { return members_.count(); }
  bool empty() const { return members_.none(); }

  /// Cubes of the given dimension, ascending id.
  std::vector<CubeId> cubes(int dim) const;
  std::vector<CubeId> cubes() const;

  /// Adds a cube and all its faces.
  void add_closed(CubeId cube);

  CubicalComplex& operator|=(const CubicalComplex& other);
  bool operator==(const CubicalComplex& other) const {
    return lattice_ == other.lattice_ && members_ == other.members_;
  }

 private:
  CubeLattice lattice_;
  boost::dynamic_bitset<std::uint64_t> members_;
};

/// Full subcomplex generated by the top cells of `cells` and all their faces.
CubicalComplex closure_complex(const GridDomain& grid, const CellSet& cells);

}  // namespace conley
