#include "conley/dynamics.hpp"

#include <deque>
#include <string>

#include "conley/error.hpp"

namespace conley {

namespace {

void require_member(const CellSet& n, CellId x) {
  if (!n.contains(x)) {
    throw Error(ErrorKind::InvalidCell, "cell " + std::to_string(x) + " not in neighborhood");
  }
}

template <bool Forward>
CellSet reach(const CombMap& f, const CellSet& n, const CellSet& seeds) {
  CellSet seen = seeds & n;
  std::deque<CellId> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    CellId c = queue.front();
    queue.pop_front();
    const auto& next = Forward ? f.successors(c) : f.predecessors(c);
    for (CellId d : next) {
      if (n.contains(d) && !seen.contains(d)) {
        seen.insert(d);
        queue.push_back(d);
      }
    }
  }
  return seen;
}

// Greatest subset of `n` in which every cell keeps a successor (Succ) and/or a
// predecessor (Pred) inside the subset.
template <bool Succ, bool Pred>
CellSet prune(const CombMap& f, const CellSet& n) {
  const std::size_t size = f.cell_count();
  CellSet alive = n;
  std::vector<int> out_deg(size, 0), in_deg(size, 0);
  for (CellId c : n) {
    for (CellId d : f.successors(c)) {
      if (n.contains(d)) {
        ++out_deg[c];
        ++in_deg[d];
      }
    }
  }
  std::deque<CellId> queue;
  for (CellId c : n) {
    if ((Succ && out_deg[c] == 0) || (Pred && in_deg[c] == 0)) {
      alive.erase(c);
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    CellId c = queue.front();
    queue.pop_front();
    for (CellId d : f.successors(c)) {
      if (alive.contains(d) && --in_deg[d] == 0 && Pred) {
        alive.erase(d);
        queue.push_back(d);
      }
    }
    for (CellId p : f.predecessors(c)) {
      if (alive.contains(p) && --out_deg[p] == 0 && Succ) {
        alive.erase(p);
        queue.push_back(p);
      }
    }
  }
  return alive;
}

}  // namespace

CellSet reach_forward_n(const CombMap& f, const CellSet& n, CellId x, int steps) {
  require_member(n, x);
  if (steps < 0) throw Error(ErrorKind::Internal, "negative step count");
  CellSet layer(f.cell_count(), {x});
  for (int s = 0; s < steps; ++s) layer = image(f, layer) & n;
  return layer;
}

CellSet reach_forward(const CombMap& f, const CellSet& n, CellId x) {
  require_member(n, x);
  return reach<true>(f, n, CellSet(f.cell_count(), {x}));
}

CellSet reach_backward(const CombMap& f, const CellSet& n, CellId x) {
  require_member(n, x);
  return reach<false>(f, n, CellSet(f.cell_count(), {x}));
}

CellSet reach_forward(const CombMap& f, const CellSet& n, const CellSet& seeds) {
  return reach<true>(f, n, seeds);
}

CellSet reach_backward(const CombMap& f, const CellSet& n, const CellSet& seeds) {
  return reach<false>(f, n, seeds);
}

CellSet inv_plus(const CombMap& f, const CellSet& n) { return prune<true, false>(f, n); }
CellSet inv_minus(const CombMap& f, const CellSet& n) { return prune<false, true>(f, n); }
CellSet inv_part(const CombMap& f, const CellSet& n) { return prune<true, true>(f, n); }

bool is_isolating(const CombMap& f, const CellSet& n) {
  return neighbors(f.grid(), inv_part(f, n)).is_subset_of(n);
}

bool is_trapping(const CombMap& f, const CellSet& t) {
  return image(f, t).is_subset_of(t) && is_isolating(f, t);
}

CellSet positive_hull(const CombMap& f, const CellSet& n, const CellSet& a) {
  if (!a.is_subset_of(n)) {
    throw Error(ErrorKind::InvalidCell, "positive_hull seed not contained in neighborhood");
  }
  return reach<true>(f, n, a);
}

void validate_solution(const CombMap& f, const Solution& sigma) {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::MalformedSolution, why); };
  if (sigma.backward_cycle.empty() || sigma.forward_cycle.empty()) {
    bad("solution cycles must be nonempty");
  }
  std::vector<CellId> path = sigma.backward_cycle;
  path.push_back(sigma.backward_cycle.front());
  path.insert(path.end(), sigma.backward_cycle.begin() + 1, sigma.backward_cycle.end());
  path.insert(path.end(), sigma.bridge.begin(), sigma.bridge.end());
  path.insert(path.end(), sigma.forward_cycle.begin(), sigma.forward_cycle.end());
  path.push_back(sigma.forward_cycle.front());
  for (CellId c : path) {
    if (c >= f.cell_count()) bad("solution cell " + std::to_string(c) + " out of range");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!f.targets(path[i]).contains(path[i + 1])) {
      bad("no transition " + std::to_string(path[i]) + " -> " + std::to_string(path[i + 1]));
    }
  }
}

LimitSets limit_sets(const CombMap& f, const Solution& sigma) {
  validate_solution(f, sigma);
  const std::size_t n = f.cell_count();
  return {CellSet(n, sigma.backward_cycle), CellSet(n, sigma.forward_cycle)};
}

CellSet find_trapping_region(const CombMap& f, const CellSet& a,
                             const std::optional<CellSet>& ambient, int margin) {
  const auto& grid = f.grid();
  if (!(inv_part(f, a) == a)) {
    throw Error(ErrorKind::NotAttractor, "candidate attractor is not invariant");
  }
  const CellSet all = f.full_set();
  CellSet t = reach<true>(f, all, collar(grid, a, margin));
  if (!image(f, t).is_subset_of(t)) {
    throw Error(ErrorKind::NotAttractor, "trapping candidate is not forward invariant");
  }
  CellSet inv = inv_part(f, t);
  if (ambient) inv &= *ambient;
  if (!(inv == a)) {
    throw Error(ErrorKind::NotAttractor,
                "invariant part of the forward closure differs from the attractor");
  }
  if (!is_isolating(f, t)) {
    throw Error(ErrorKind::NotAttractor, "trapping candidate does not isolate its invariant part");
  }
  return t;
}

}  // namespace conley
