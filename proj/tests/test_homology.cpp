#include <catch_amalgamated.hpp>

#include "conley/dynamics.hpp"
#include "conley/error.hpp"
#include "conley/homology.hpp"
#include "conley/indexpair.hpp"
#include "conley/linalg.hpp"
#include "support.hpp"

using namespace conley;
using testing::cells;
using testing::line;

namespace {

QMatrix qmat(std::initializer_list<std::initializer_list<int>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  QMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

QMatrix power(const QMatrix& m, int k) {
  QMatrix out = QMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

bool is_identity(const QMatrix& m) {
  return m.rows() == m.cols() && m == QMatrix::Identity(m.rows(), m.cols());
}

}  // namespace

TEST_CASE("relative homology examples", "[homology]") {
  GridDomain g = line(5);
  CHECK(relative_homology(g, cells(5, {0}), CellSet(5)).dims == std::vector<int>{1, 0});
  CHECK(relative_homology(g, cells(5, {1, 2, 3}), cells(5, {1, 3})).dims == std::vector<int>{0, 1});
  CHECK(relative_homology(g, cells(5, {1, 2, 3}), cells(5, {3})).dims == std::vector<int>{0, 0});
  CHECK(relative_homology(g, CellSet(5), CellSet(5)).dims == std::vector<int>{0, 0});
  GridDomain sq(2, {{0, 3}, {0, 3}}, {3, 3});
  CellSet ring = CellSet::all(9);
  ring.erase(4);
  CHECK(relative_homology(sq, ring, CellSet(9)).dims == std::vector<int>{1, 1, 0});
  CHECK(relative_homology(sq, CellSet::all(9), ring).dims == std::vector<int>{0, 0, 1});
}

TEST_CASE("relative homology matches the integer oracle", "[homology]") {
  std::mt19937_64 rng(51);
  std::vector<GridDomain> grids{line(12), GridDomain(2, {{0, 4}, {0, 3}}, {4, 3}),
                                GridDomain(2, {{0, 3}, {0, 3}}, {3, 3}),
                                GridDomain(2, {{0, 2}, {0, 6}}, {2, 6})};
  for (int trial = 0; trial < 300; ++trial) {
    const GridDomain& g = grids[static_cast<std::size_t>(trial) % grids.size()];
    CellSet p1 = testing::random_subset(rng, g.cell_count(), 0.6);
    CellSet p2 = testing::random_subset(rng, g.cell_count(), 0.4) & p1;
    auto h = relative_homology(g, p1, p2);
    CHECK(h.dims == testing::oracle_relative_dims(g, p1, p2));
    for (std::size_t q = 0; q < h.dims.size(); ++q) {
      CHECK(h.cycles[q].cols() == h.dims[q]);
    }
  }
}

TEST_CASE("boundary of the relative complex squares to zero", "[homology]") {
  std::mt19937_64 rng(52);
  GridDomain g(2, {{0, 4}, {0, 4}}, {4, 4});
  for (int trial = 0; trial < 50; ++trial) {
    CellSet p1 = testing::random_subset(rng, 16, 0.6);
    CellSet p2 = testing::random_subset(rng, 16, 0.3) & p1;
    auto cx = relative_complex(g, p1, p2);
    for (std::size_t q = 2; q < cx.boundary.size(); ++q) {
      QMatrix dd = cx.boundary[q - 1] * cx.boundary[q];
      CHECK(dd.isZero());
    }
  }
}

TEST_CASE("induced chain maps", "[homology]") {
  CombMap a = testing::fix_a();
  auto zero = induced_chain_map(a, CellSet(3), CellSet(3), a.full_set());
  for (const auto& m : zero.matrices) CHECK(m.cols() == 0);

  CombMap w = testing::fix_w();
  CellSet nw = cells(11, {2, 3, 4, 5, 6, 7, 8});
  auto p = build_weak_index_pair(w, nw);
  auto phi = induced_chain_map(w, p);
  // Chain map: boundary commutes in every degree.
  for (std::size_t q = 1; q < phi.matrices.size(); ++q) {
    QMatrix lhs = phi.target.boundary[q] * phi.matrices[q];
    QMatrix rhs = phi.matrices[q - 1] * phi.source.boundary[q];
    CHECK(lhs == rhs);
  }

  CombMap c = testing::fix_c();
  CHECK_THROWS_AS(induced_chain_map(c, c.full_set(), CellSet(3), c.full_set()), Error);
}

TEST_CASE("index maps", "[homology]") {
  CombMap a = testing::fix_a();
  auto ia = index_map(a, build_weak_index_pair(a, a.full_set()));
  CHECK(ia.dims == std::vector<int>{1, 0});
  CHECK(ia.matrices[0] == qmat({{1}}));

  CombMap w = testing::fix_w();
  CellSet nw = cells(11, {2, 3, 4, 5, 6, 7, 8});
  auto iw = index_map(w, build_weak_index_pair(w, nw));
  CHECK(iw.dims == std::vector<int>{0, 1});
  REQUIRE(iw.matrices[1].rows() == 1);
  CHECK(abs(iw.matrices[1](0, 0)) == 1);

  auto empty = index_map(a, CellSet(3), CellSet(3), a.full_set());
  for (const auto& m : empty.matrices) CHECK(m.size() == 0);

  for (const GridDomain& g : {line(6), GridDomain(2, {{0, 3}, {0, 2}}, {3, 2})}) {
    std::vector<CellSet> id;
    for (CellId c = 0; c < g.cell_count(); ++c) id.push_back(CellSet(g.cell_count(), {c}));
    CombMap f(g, id);
    auto im = index_map(f, f.full_set(), CellSet(g.cell_count()), f.full_set());
    for (const auto& m : im.matrices) CHECK(is_identity(m));
  }
}

TEST_CASE("index maps do not depend on the selector", "[homology]") {
  std::mt19937_64 rng(53);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    CombMap f = testing::random_envelope_map(rng, 8 + static_cast<int>(rng() % 10));
    if (!check_values_acyclic(f).empty()) continue;
    CellSet n = f.full_set();
    WeakIndexPair p;
    try {
      p = build_weak_index_pair(f, n);
    } catch (const Error&) {
      continue;
    }
    auto lo = index_map(f, p, SelectorPolicy::LowestVertex);
    auto hi = index_map(f, p, SelectorPolicy::HighestVertex);
    CHECK(lo.dims == hi.dims);
    for (std::size_t q = 0; q < lo.matrices.size(); ++q) CHECK(lo.matrices[q] == hi.matrices[q]);
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("Leray reduction", "[homology]") {
  auto id = leray_reduce(QMatrix::Identity(3, 3));
  CHECK(id.dimension == 3);
  CHECK(is_identity(id.automorphism));
  auto nil = leray_reduce(qmat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(nil.dimension == 0);
  CHECK(nil.automorphism.size() == 0);
  auto proj = leray_reduce(qmat({{1, 1}, {0, 0}}));
  CHECK(proj.dimension == 1);
  CHECK(proj.automorphism == qmat({{1}}));
  CHECK(leray_reduce(QMatrix(0, 0)).dimension == 0);

  std::mt19937_64 rng(54);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = Rational(rng() % 3 == 0 ? entry(rng) : 0);
    }
    auto lr = leray_reduce(m);
    CHECK(lr.dimension == rank(power(m, n)));
    CHECK(rank(power(m, n)) == rank(power(m, 2 * n)));
    CHECK(lr.automorphism.rows() == lr.dimension);
    if (lr.dimension > 0) CHECK(inverse(lr.automorphism).has_value());
  }
}

TEST_CASE("Conley index of isolated sets", "[homology]") {
  CombMap a = testing::fix_a();
  CHECK(conley_index(a, a.full_set()).index.dims == std::vector<int>{1, 0});
  CombMap w = testing::fix_w();
  CHECK(conley_index(w, cells(11, {2, 3, 4, 5, 6, 7, 8})).index.dims == std::vector<int>{0, 1});
  CombMap r = testing::fix_r();
  CHECK(conley_index(r, cells(5, {1})).index.dims == std::vector<int>{0, 0});

  // Additivity over a disjoint union without cross images: a sink at 2, a source at 10.
  CombMap two = testing::table(15, {{1}, {2}, {2}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9, 10, 11},
                                    {12}, {13}, {14}, {14}});
  CellSet n1 = cells(15, {0, 1, 2, 3, 4});
  CellSet n2 = cells(15, {7, 8, 9, 10, 11, 12, 13});
  auto d1 = conley_index(two, n1).index.dims;
  auto d2 = conley_index(two, n2).index.dims;
  auto both = conley_index(two, n1 | n2).index.dims;
  CHECK(d1 == std::vector<int>{1, 0});
  CHECK(d2 == std::vector<int>{0, 1});
  CHECK(both == std::vector<int>{1, 1});
}

TEST_CASE("Poincare series", "[homology]") {
  CHECK(poincare_series({1, 0}) == Polynomial{1});
  CHECK(poincare_series({0, 1}) == Polynomial{0, 1});
  CHECK(poincare_series({2, 0}) == Polynomial{2});
  CHECK(poincare_series({0, 0}).is_zero());
  CHECK(Polynomial{2, 0, 1}.str() == "2+t^2");
  CHECK(Polynomial{0, 1}.str() == "t");
  CHECK(Polynomial{}.str() == "0");
}
