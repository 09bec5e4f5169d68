#include "conley/mvmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conley/error.hpp"

namespace conley {

CombMap::CombMap(GridDomain grid, std::vector<CellSet> targets)
    : grid_(std::move(grid)), targets_(std::move(targets)) {
  const std::size_t n = grid_.cell_count();
  if (targets_.size() != n) {
    throw Error(ErrorKind::Ingestion, "map must assign a value to every cell");
  }
  succ_.resize(n);
  pred_.resize(n);
  for (CellId c = 0; c < n; ++c) {
    if (targets_[c].universe() != n) {
      throw Error(ErrorKind::Ingestion, "map value has wrong universe size");
    }
    for (CellId d : targets_[c]) {
      succ_[c].push_back(d);
      pred_[d].push_back(c);
    }
  }
}

CellSet CombMap::domain() const {
  CellSet out(cell_count());
  for (CellId c = 0; c < cell_count(); ++c) {
    if (!targets_[c].empty()) out.insert(c);
  }
  return out;
}

CombMap from_table(const GridDomain& grid,
                   const std::vector<std::pair<CellId, std::vector<CellId>>>& entries) {
  const std::size_t n = grid.cell_count();
  std::vector<CellSet> targets(n, CellSet(n));
  for (const auto& [c, values] : entries) {
    if (c >= n) {
      throw Error(ErrorKind::IngestionOutOfBounds, "table cell " + std::to_string(c) + " outside grid");
    }
    for (CellId d : values) {
      if (d >= n) {
        throw Error(ErrorKind::IngestionOutOfBounds,
                    "table target " + std::to_string(d) + " outside grid");
      }
      targets[c].insert(d);
    }
  }
  return CombMap(grid, std::move(targets));
}

namespace {

void validate_breakpoints(const Breakpoints& b, const char* name) {
  if (b.size() < 2) {
    throw Error(ErrorKind::MalformedEnvelope, std::string(name) + " needs at least two breakpoints");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i].first) || !std::isfinite(b[i].second)) {
      throw Error(ErrorKind::MalformedEnvelope, std::string(name) + " has non-finite breakpoint");
    }
    if (i > 0 && !(b[i].first > b[i - 1].first)) {
      throw Error(ErrorKind::MalformedEnvelope,
                  std::string(name) + " breakpoints must have strictly increasing x");
    }
  }
}

double evaluate(const Breakpoints& b, double x) {
  auto it = std::lower_bound(b.begin(), b.end(), x,
                             [](const auto& p, double v) { return p.first < v; });
  if (it == b.begin()) return it->second;
  if (it == b.end()) return b.back().second;
  if (it->first == x) return it->second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

// Extremum of a PL function over [a, b]: attained at an endpoint or an interior breakpoint.
std::pair<double, double> range_over(const Breakpoints& f, double a, double b) {
  double lo = std::min(evaluate(f, a), evaluate(f, b));
  double hi = std::max(evaluate(f, a), evaluate(f, b));
  for (const auto& [x, y] : f) {
    if (x > a && x < b) {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  return {lo, hi};
}

}  // namespace

CombMap from_pl_envelope(const GridDomain& grid, const Breakpoints& lower, const Breakpoints& upper) {
  if (grid.dim() != 1) {
    throw Error(ErrorKind::Ingestion, "pl_envelope maps require a 1D grid");
  }
  validate_breakpoints(lower, "lower");
  validate_breakpoints(upper, "upper");
  const Interval box = grid.bounds()[0];
  for (const auto* f : {&lower, &upper}) {
    if (f->front().first > box.lower || f->back().first < box.upper) {
      throw Error(ErrorKind::MalformedEnvelope, "envelope must cover the grid x-range");
    }
  }

  std::vector<double> xs;
  for (const auto& p : lower) xs.push_back(p.first);
  for (const auto& p : upper) xs.push_back(p.first);
  for (double x : xs) {
    if (x < box.lower || x > box.upper) continue;
    const double lo = evaluate(lower, x);
    const double hi = evaluate(upper, x);
    if (lo > hi) {
      throw Error(ErrorKind::MalformedEnvelope, "lower exceeds upper at x=" + std::to_string(x));
    }
    if (lo < box.lower || hi > box.upper) {
      throw Error(ErrorKind::IngestionOutOfBounds,
                  "envelope leaves the grid box at x=" + std::to_string(x));
    }
  }
  for (double x : {box.lower, box.upper}) {
    if (evaluate(lower, x) > evaluate(upper, x)) {
      throw Error(ErrorKind::MalformedEnvelope, "lower exceeds upper at x=" + std::to_string(x));
    }
    if (evaluate(lower, x) < box.lower || evaluate(upper, x) > box.upper) {
      throw Error(ErrorKind::IngestionOutOfBounds,
                  "envelope leaves the grid box at x=" + std::to_string(x));
    }
  }

  const std::size_t n = grid.cell_count();
  const double w = grid.cell_width(0);
  auto edge = [&](std::size_t j) {
    return j == n ? box.upper : box.lower + w * static_cast<double>(j);
  };
  std::vector<CellSet> targets(n, CellSet(n));
  for (CellId c = 0; c < n; ++c) {
    const double a = edge(c);
    const double b = edge(c + 1);
    const double ymin = range_over(lower, a, b).first;
    const double ymax = range_over(upper, a, b).second;
    for (CellId d = 0; d < n; ++d) {
      if (edge(d) <= ymax && edge(d + 1) >= ymin) targets[c].insert(d);
    }
  }
  return CombMap(grid, std::move(targets));
}

CombMap from_samples(const GridDomain& grid, const std::vector<SamplePair>& pairs, int pad) {
  if (pad < 0) throw Error(ErrorKind::Ingestion, "pad must be nonnegative");
  const std::size_t n = grid.cell_count();
  std::vector<CellSet> targets(n, CellSet(n));
  for (const auto& p : pairs) {
    auto cx = grid.locate(p.x);
    auto cy = grid.locate(p.y);
    if (!cx || !cy) {
      throw Error(ErrorKind::IngestionOutOfBounds, "sample point outside the grid box");
    }
    targets[*cx] |= collar(grid, CellSet(n, {*cy}), pad);
  }
  return CombMap(grid, std::move(targets));
}

CellSet image(const CombMap& f, const CellSet& a) {
  CellSet out(f.cell_count());
  for (CellId c : a) out |= f.targets(c);
  return out;
}

std::vector<CellId> check_values_acyclic(const CombMap& f) {
  std::vector<CellId> bad;
  const auto& grid = f.grid();
  for (CellId c = 0; c < f.cell_count(); ++c) {
    const CellSet& t = f.targets(c);
    if (t.empty()) continue;
    MultiIndex lo{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
    MultiIndex hi{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
    for (CellId d : t) {
      auto m = grid.multi_index(d);
      for (int k = 0; k < 2; ++k) {
        lo[k] = std::min(lo[k], m[k]);
        hi[k] = std::max(hi[k], m[k]);
      }
    }
    const std::size_t box = static_cast<std::size_t>(hi[0] - lo[0] + 1) *
                            static_cast<std::size_t>(hi[1] - lo[1] + 1);
    if (box != t.size()) bad.push_back(c);
  }
  return bad;
}

}  // namespace conley
