#pragma once

// Fixtures, random generators and independent oracles shared by the test suites.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "conley/dynamics.hpp"
#include "conley/io.hpp"
#include "conley/mvmap.hpp"

namespace testing {

using namespace conley;

inline GridDomain line(int cells) {
  return GridDomain(1, {{0.0, static_cast<double>(cells)}}, {cells});
}

inline CellSet cells(std::size_t n, std::initializer_list<CellId> ids) { return CellSet(n, ids); }

inline CombMap table(int n, const std::vector<std::vector<CellId>>& rows) {
  std::vector<std::pair<CellId, std::vector<CellId>>> entries;
  for (std::size_t c = 0; c < rows.size(); ++c) entries.emplace_back(c, rows[c]);
  return from_table(line(n), entries);
}

inline CombMap fix_a() { return table(3, {{1}, {1}, {1}}); }
inline CombMap fix_c() { return table(3, {{0}, {0, 2}, {2}}); }
inline CombMap fix_r() { return table(5, {{0}, {0}, {1, 2, 3}, {4}, {4}}); }
inline CombMap fix_w() {
  return table(11, {{0}, {0}, {1}, {2}, {2, 3}, {4, 5, 6}, {7, 8}, {8}, {9}, {10}, {10}});
}
inline CombMap identity_map(int n) {
  std::vector<std::vector<CellId>> rows;
  for (int c = 0; c < n; ++c) rows.push_back({static_cast<CellId>(c)});
  return table(n, rows);
}

inline std::string fixture(const std::string& name) {
  return std::string(CONLEY_FIXTURE_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// Random systems.

/// Every cell maps to a random contiguous block (or nothing with probability `p_empty`).
inline CombMap random_block_map(std::mt19937_64& rng, const GridDomain& grid, double p_empty = 0.1,
                                int max_extent = 3) {
  const std::size_t n = grid.cell_count();
  std::vector<CellSet> targets(n, CellSet(n));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (CellId c = 0; c < n; ++c) {
    if (unit(rng) < p_empty) continue;
    MultiIndex lo{0, 0}, hi{0, 0};
    for (int k = 0; k < grid.dim(); ++k) {
      const int d = grid.divisions()[k];
      std::uniform_int_distribution<int> pick(0, d - 1);
      std::uniform_int_distribution<int> ext(0, std::min(max_extent, d) - 1);
      lo[k] = pick(rng);
      hi[k] = std::min(d - 1, lo[k] + ext(rng));
    }
    for (int j = lo[1]; j <= hi[1]; ++j) {
      for (int i = lo[0]; i <= hi[0]; ++i) targets[c].insert(grid.id({i, j}));
    }
  }
  return CombMap(grid, std::move(targets));
}

/// Random piecewise-linear envelope map on [0, n] with breakpoints at the grid lines.
inline CombMap random_envelope_map(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> centre(static_cast<std::size_t>(n) + 1);
  const int style = static_cast<int>(rng() % 3);
  if (style == 0) {
    for (auto& v : centre) v = unit(rng) * n;
  } else {
    // Perturbed identity: produces several fixed points with mixed stability.
    double drift = 0.0;
    for (int k = 0; k <= n; ++k) {
      drift = 0.6 * drift + (unit(rng) - 0.5) * (style == 1 ? 4.0 : 7.0);
      centre[static_cast<std::size_t>(k)] = k + drift;
    }
  }
  Breakpoints lower, upper;
  for (int k = 0; k <= n; ++k) {
    const double w = 0.1 + unit(rng) * 0.8;
    const double c = std::clamp(centre[static_cast<std::size_t>(k)], 0.0, static_cast<double>(n));
    lower.emplace_back(k, std::clamp(c - w / 2, 0.0, static_cast<double>(n)));
    upper.emplace_back(k, std::clamp(c + w / 2, 0.0, static_cast<double>(n)));
  }
  return from_pl_envelope(line(n), lower, upper);
}

/// Random envelope map with well separated fixed points of alternating stability.
/// Interior fixed points sit at cell centres at least `gap` cells apart and the
/// grid ends are fixed too; the graph contracts (slope 0.1-0.3) around stable
/// points and expands (slope 3-5) around unstable ones.
inline CombMap random_structured_map(std::mt19937_64& rng, int n, int gap = 5) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double top = static_cast<double>(n);
  std::vector<double> fixed{0.0};
  const int margin = std::min(3, (n - 1) / 2);
  for (double x = margin + 0.5 + static_cast<double>(rng() % 3); x <= top - margin;
       x += gap + static_cast<double>(rng() % 4)) {
    fixed.push_back(x);
  }
  if (fixed.size() == 1) fixed.push_back(std::floor(top / 2) + 0.5);
  fixed.push_back(top);
  std::vector<bool> stable(fixed.size());
  stable[0] = rng() % 2 == 0;
  for (std::size_t i = 1; i < fixed.size(); ++i) stable[i] = !stable[i - 1];

  std::vector<std::pair<double, double>> graph{{0.0, 0.0}};
  for (std::size_t i = 1; i < fixed.size(); ++i) {
    const double a = fixed[i - 1], b = fixed[i];
    const double flat = 0.1 + 0.2 * unit(rng);
    const double steep = 3.0 + 2.0 * unit(rng);
    // Lines through each end point; the graph follows the one nearer its own end.
    const double sa = stable[i - 1] ? flat : steep;
    const double sb = stable[i] ? flat : steep;
    const double x = (b - a + sa * a - sb * b) / (sa - sb);
    if (x > a && x < b) graph.emplace_back(x, a + sa * (x - a));
    graph.emplace_back(b, b);
  }
  Breakpoints lower, upper;
  for (auto [x, y] : graph) {
    const double w = 0.05 + 0.25 * unit(rng);
    lower.emplace_back(x, std::clamp(y - w / 2, 0.0, top));
    upper.emplace_back(x, std::clamp(y + w / 2, 0.0, top));
  }
  return from_pl_envelope(line(n), lower, upper);
}

/// Random subset with the given inclusion probability.
inline CellSet random_subset(std::mt19937_64& rng, std::size_t n, double p) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CellSet s(n);
  for (CellId c = 0; c < n; ++c) {
    if (unit(rng) < p) s.insert(c);
  }
  return s;
}

/// Shortest path from -> ... -> to taking at least one step; empty when none.
inline std::vector<CellId> shortest_path(const CombMap& f, CellId from, CellId to) {
  std::vector<CellId> parent(f.cell_count(), f.cell_count());
  std::vector<CellId> queue;
  for (CellId d : f.successors(from)) {
    if (parent[d] == f.cell_count()) {
      parent[d] = from;
      queue.push_back(d);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    CellId c = queue[head];
    if (c == to) {
      std::vector<CellId> path{to};
      CellId cur = to;
      do {
        cur = parent[cur];
        path.push_back(cur);
      } while (cur != from);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (CellId d : f.successors(c)) {
      if (parent[d] == f.cell_count()) {
        parent[d] = c;
        queue.push_back(d);
      }
    }
  }
  return {};
}

/// Random eventually periodic solution: cycle through a, bridge a -> b, cycle through b.
inline std::optional<Solution> sample_solution(std::mt19937_64& rng, const CombMap& f) {
  std::vector<CellId> recurrent;
  for (CellId c = 0; c < f.cell_count(); ++c) {
    if (!shortest_path(f, c, c).empty()) recurrent.push_back(c);
  }
  if (recurrent.empty()) return std::nullopt;
  CellId a = recurrent[rng() % recurrent.size()];
  std::vector<CellId> targets;
  for (CellId b : recurrent) {
    if (!shortest_path(f, a, b).empty()) targets.push_back(b);
  }
  CellId b = targets[rng() % targets.size()];
  auto loop_a = shortest_path(f, a, a);
  auto loop_b = shortest_path(f, b, b);
  Solution s;
  s.backward_cycle.assign(loop_a.begin() + 1, loop_a.end());
  if (a != b) {
    auto bridge = shortest_path(f, a, b);
    s.bridge.assign(bridge.begin() + 1, bridge.end() - 1);
  }
  if (a == b) s.forward_cycle.assign(loop_b.begin() + 1, loop_b.end());
  else s.forward_cycle.assign(loop_b.begin(), loop_b.end() - 1);
  return s;
}

/// Every cell visited by the solution.
inline CellSet solution_cells(const CombMap& f, const Solution& s) {
  CellSet out(f.cell_count());
  for (const auto* part : {&s.backward_cycle, &s.bridge, &s.forward_cycle}) {
    for (CellId c : *part) out.insert(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariant-part oracle: x is in Inv(N) iff paths of length 2|N| exist inside N
// both into x and out of x (memoized bounded-depth enumeration over the raw table).

class PathOracle {
 public:
  PathOracle(const CombMap& f, const CellSet& n, std::size_t max_depth)
      : f_(f), n_(n), depth_(max_depth + 1),
        memo_(2 * f.cell_count() * (max_depth + 1), -1) {}

  bool forward(CellId c, std::size_t depth) { return walk(c, depth, true); }
  bool backward(CellId c, std::size_t depth) { return walk(c, depth, false); }

 private:
  bool walk(CellId c, std::size_t depth, bool fwd) {
    if (depth == 0) return true;
    signed char& slot = memo_[(c * depth_ + depth) * 2 + (fwd ? 1 : 0)];
    if (slot >= 0) return slot != 0;
    bool ok = false;
    for (CellId d = 0; d < f_.cell_count() && !ok; ++d) {
      if (!n_.contains(d)) continue;
      const bool edge = fwd ? f_.targets(c).contains(d) : f_.targets(d).contains(c);
      if (edge) ok = walk(d, depth - 1, fwd);
    }
    slot = ok ? 1 : 0;
    return ok;
  }

  const CombMap& f_;
  const CellSet& n_;
  std::size_t depth_;
  std::vector<signed char> memo_;
};

inline CellSet inv_oracle(const CombMap& f, const CellSet& n) {
  const std::size_t depth = 2 * n.size();
  PathOracle oracle(f, n, depth);
  CellSet out(f.cell_count());
  for (CellId c : n) {
    if (oracle.forward(c, depth) && oracle.backward(c, depth)) out.insert(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cubes as explicit vertex-interval products, built without the library lattice.

using Cube = std::array<std::pair<int, int>, 2>;  // [a_k, b_k] with b_k - a_k in {0, 1}

inline int cube_dim(const Cube& q) { return (q[0].second - q[0].first) + (q[1].second - q[1].first); }

inline std::set<Cube> oracle_closure(const GridDomain& grid, const CellSet& s) {
  std::set<Cube> out;
  for (CellId c : s) {
    auto m = grid.multi_index(c);
    Cube top{{{m[0], m[0] + 1}, {m[1], grid.dim() == 2 ? m[1] + 1 : m[1]}}};
    std::vector<Cube> stack{top};
    while (!stack.empty()) {
      Cube q = stack.back();
      stack.pop_back();
      if (!out.insert(q).second) continue;
      for (int k = 0; k < 2; ++k) {
        if (q[k].first == q[k].second) continue;
        Cube lo = q, hi = q;
        lo[k].second = lo[k].first;
        hi[k].first = hi[k].second;
        stack.push_back(lo);
        stack.push_back(hi);
      }
    }
  }
  return out;
}

using BigInt = boost::multiprecision::cpp_int;

/// Rank of an integer matrix via Smith normal form diagonalization.
inline int snf_rank(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Pick the smallest nonzero entry in the remaining block as pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
    }
  }
  return static_cast<int>(t);
}

/// Rational Betti numbers of (cl p1, cl p2) from integer boundary matrices.
inline std::vector<int> oracle_relative_dims(const GridDomain& grid, const CellSet& p1,
                                             const CellSet& p2) {
  auto outer = oracle_closure(grid, p1);
  auto inner = oracle_closure(grid, p2);
  const int dim = grid.dim();
  std::vector<std::vector<Cube>> gens(static_cast<std::size_t>(dim) + 1);
  for (const auto& q : outer) {
    if (!inner.count(q)) gens[static_cast<std::size_t>(cube_dim(q))].push_back(q);
  }
  std::vector<int> ranks(static_cast<std::size_t>(dim) + 2, 0);
  for (int q = 1; q <= dim; ++q) {
    const auto& rows = gens[static_cast<std::size_t>(q) - 1];
    const auto& cols = gens[static_cast<std::size_t>(q)];
    std::map<Cube, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
    std::vector<std::vector<BigInt>> m(rows.size(), std::vector<BigInt>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      int sign = 1;
      for (int k = 0; k < 2; ++k) {
        const auto& iv = cols[j][static_cast<std::size_t>(k)];
        if (iv.first == iv.second) continue;
        Cube lo = cols[j], hi = cols[j];
        lo[static_cast<std::size_t>(k)].second = iv.first;
        hi[static_cast<std::size_t>(k)].first = iv.second;
        if (auto it = row_of.find(hi); it != row_of.end()) m[it->second][j] += sign;
        if (auto it = row_of.find(lo); it != row_of.end()) m[it->second][j] -= sign;
        sign = -sign;
      }
    }
    ranks[static_cast<std::size_t>(q)] = snf_rank(std::move(m));
  }
  std::vector<int> dims;
  for (int q = 0; q <= dim; ++q) {
    const int n = static_cast<int>(gens[static_cast<std::size_t>(q)].size());
    dims.push_back(n - ranks[static_cast<std::size_t>(q)] - ranks[static_cast<std::size_t>(q) + 1]);
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Weak index pair conditions, written out directly from cell closures.

inline bool closures_meet(const GridDomain& grid, const CellSet& a, const CellSet& b) {
  auto ca = oracle_closure(grid, a);
  for (const auto& q : oracle_closure(grid, b)) {
    if (ca.count(q)) return true;
  }
  return false;
}

/// (a): F(p_i) stays in p_i as far as it stays in N.
inline bool oracle_cond_a(const CombMap& f, const CellSet& p1, const CellSet& p2, const CellSet& n) {
  for (const CellSet* pi : {&p1, &p2}) {
    for (CellId c : *pi) {
      for (CellId d : f.targets(c)) {
        if (n.contains(d) && !pi->contains(d)) return false;
      }
    }
  }
  return true;
}

/// (b): cells of p1 whose closure meets the closure of the exit image lie in p2.
inline bool oracle_cond_b(const CombMap& f, const CellSet& p1, const CellSet& p2) {
  CellSet exits(f.cell_count());
  for (CellId c : p1) {
    for (CellId d : f.targets(c)) {
      if (!p1.contains(d)) exits.insert(d);
    }
  }
  for (CellId c : p1) {
    if (p2.contains(c)) continue;
    if (closures_meet(f.grid(), CellSet(f.cell_count(), {c}), exits)) return false;
  }
  return true;
}

/// (d): every cell of p1 - p2 has its whole closed neighborhood inside N.
inline bool oracle_cond_d(const CombMap& f, const CellSet& p1, const CellSet& p2, const CellSet& n) {
  const CellSet outside = n.complement();
  for (CellId c : p1) {
    if (p2.contains(c)) continue;
    if (closures_meet(f.grid(), CellSet(f.cell_count(), {c}), outside)) return false;
  }
  return true;
}

}  // namespace testing
