#include "conley/morse.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "conley/error.hpp"

namespace conley {

namespace {

[[noreturn]] void invalid(const std::string& why) {
  throw Error(ErrorKind::InvalidDecomposition, why);
}

// Strongly connected components of the digraph restricted to `s` that carry a cycle.
std::vector<CellSet> recurrent_components(const CombMap& f, const CellSet& s) {
  const std::size_t n = f.cell_count();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<CellId> stack;
  std::vector<CellSet> out;
  std::size_t counter = 0;

  struct Frame {
    CellId cell;
    std::size_t next;
  };
  for (CellId root : s) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      const auto& succ = f.successors(fr.cell);
      if (fr.next < succ.size()) {
        CellId d = succ[fr.next++];
        if (!s.contains(d)) continue;
        if (index[d] == kUnset) {
          index[d] = low[d] = counter++;
          stack.push_back(d);
          on_stack[d] = 1;
          call.push_back({d, 0});
        } else if (on_stack[d]) {
          low[fr.cell] = std::min(low[fr.cell], index[d]);
        }
        continue;
      }
      const CellId v = fr.cell;
      call.pop_back();
      if (!call.empty()) low[call.back().cell] = std::min(low[call.back().cell], low[v]);
      if (low[v] != index[v]) continue;
      CellSet comp(n);
      CellId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.insert(w);
      } while (w != v);
      if (comp.size() > 1 || f.targets(v).contains(v)) out.push_back(std::move(comp));
    }
  }
  return out;
}

std::vector<std::vector<char>> reachability(const CombMap& f, const CellSet& s,
                                            const std::vector<CellSet>& sets) {
  const std::size_t m = sets.size();
  std::vector<std::vector<char>> r(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    CellSet fwd = reach_forward(f, s, image(f, sets[i]) & s);
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i && fwd.intersects(sets[j])) r[i][j] = 1;
    }
  }
  return r;
}

std::vector<std::size_t> default_linear_order(const std::vector<std::vector<char>>& reaches) {
  const std::size_t m = reaches.size();
  std::vector<char> placed(m, 0);
  std::vector<std::size_t> order;
  while (order.size() < m) {
    std::size_t pick = m;
    for (std::size_t i = 0; i < m && pick == m; ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < m; ++j) {
        if (reaches[i][j] && !placed[j]) ready = false;
      }
      if (ready) pick = i;
    }
    if (pick == m) invalid("reachability between Morse sets is cyclic");
    placed[pick] = 1;
    order.push_back(pick);
  }
  return order;
}

MorseDecomposition assemble(const CombMap& f, CellSet s, CellSet n, std::vector<CellSet> sets) {
  std::sort(sets.begin(), sets.end(),
            [](const CellSet& a, const CellSet& b) { return *a.first() < *b.first(); });
  MorseDecomposition d;
  d.reaches = reachability(f, s, sets);
  d.linear_order = default_linear_order(d.reaches);
  d.ambient = std::move(s);
  d.neighborhood = std::move(n);
  d.sets = std::move(sets);
  return d;
}

}  // namespace

std::size_t MorseDecomposition::position(std::size_t i) const {
  auto it = std::find(linear_order.begin(), linear_order.end(), i);
  if (it == linear_order.end()) throw Error(ErrorKind::Internal, "Morse set missing from order");
  return static_cast<std::size_t>(it - linear_order.begin());
}

MorseDecomposition morse_decomposition(const CombMap& f, const CellSet& n) {
  if (!is_isolating(f, n)) {
    throw Error(ErrorKind::NotIsolating, "neighborhood does not isolate its invariant part");
  }
  CellSet s = inv_part(f, n);
  auto sets = recurrent_components(f, s);
  auto d = assemble(f, std::move(s), n, std::move(sets));
  verify_morse_decomposition(f, d);
  return d;
}

MorseDecomposition merge_morse_sets(const CombMap& f, const MorseDecomposition& d,
                                    const std::vector<std::vector<CellId>>& groups) {
  const std::size_t m = d.size();
  std::vector<std::size_t> owner(m);
  std::iota(owner.begin(), owner.end(), 0);
  for (const auto& group : groups) {
    std::vector<std::size_t> members;
    for (CellId c : group) {
      std::size_t hit = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (d.sets[i].contains(c)) hit = i;
      }
      if (hit == m) invalid("merge cell " + std::to_string(c) + " is not in a Morse set");
      members.push_back(hit);
    }
    for (std::size_t a : members) {
      for (std::size_t b : members) {
        if (d.reaches[a][b]) invalid("merged Morse sets are connected by a solution");
      }
    }
    std::size_t target = owner[members.front()];
    for (std::size_t i : members) {
      std::size_t old = owner[i];
      for (auto& o : owner) {
        if (o == old) o = target;
      }
    }
  }
  std::vector<CellSet> sets;
  for (std::size_t i = 0; i < m; ++i) {
    if (owner[i] != i) continue;
    CellSet u(f.cell_count());
    for (std::size_t j = 0; j < m; ++j) {
      if (owner[j] == i) u |= d.sets[j];
    }
    sets.push_back(std::move(u));
  }
  auto out = assemble(f, d.ambient, d.neighborhood, std::move(sets));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i != j && out.reaches[i][j] && out.reaches[j][i]) {
        invalid("merging produced mutually reachable Morse sets");
      }
    }
  }
  verify_morse_decomposition(f, out);
  return out;
}

MorseDecomposition with_linear_order(const MorseDecomposition& d,
                                     const std::vector<CellId>& representatives) {
  if (representatives.size() != d.size()) {
    invalid("order must list exactly one cell per Morse set");
  }
  std::vector<std::size_t> order;
  for (CellId c : representatives) {
    std::size_t hit = d.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d.sets[i].contains(c)) hit = i;
    }
    if (hit == d.size()) invalid("order cell " + std::to_string(c) + " is not in a Morse set");
    if (std::find(order.begin(), order.end(), hit) != order.end()) {
      invalid("order names a Morse set twice");
    }
    order.push_back(hit);
  }
  MorseDecomposition out = d;
  out.linear_order = std::move(order);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d.reaches[i][j] && out.position(j) > out.position(i)) {
        invalid("order does not extend the flow order between Morse sets");
      }
    }
  }
  return out;
}

void verify_morse_decomposition(const CombMap& f, const MorseDecomposition& d) {
  const std::size_t m = d.size();
  CellSet seen(f.cell_count());
  for (const auto& set : d.sets) {
    if (set.empty()) invalid("empty Morse set");
    if (seen.intersects(set)) invalid("Morse sets are not disjoint");
    if (!set.is_subset_of(d.ambient)) invalid("Morse set leaves the invariant set");
    if (!(inv_part(f, set) == set)) invalid("Morse set is not invariant");
    seen |= set;
  }
  for (const auto& comp : recurrent_components(f, d.ambient)) {
    if (!comp.is_subset_of(seen)) invalid("recurrent dynamics outside the Morse sets");
    bool inside = false;
    for (const auto& set : d.sets) inside = inside || comp.is_subset_of(set);
    if (!inside) invalid("recurrent component split across Morse sets");
  }
  if (d.linear_order.size() != m) invalid("linear order has wrong length");
  std::vector<char> used(m, 0);
  for (auto i : d.linear_order) {
    if (i >= m || used[i]) invalid("linear order is not a permutation");
    used[i] = 1;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (d.reaches[i][j] && d.position(j) > d.position(i)) {
        invalid("linear order does not extend the flow order");
      }
    }
  }
}

CellSet dual_repeller(const CombMap& f, const CellSet& s, const CellSet& a, const CellSet& t) {
  if (!a.is_subset_of(t)) throw Error(ErrorKind::NotTrapping, "attractor not inside trapping region");
  if (!(image(f, t & s) & s).is_subset_of(t)) {
    throw Error(ErrorKind::NotTrapping, "region is not forward invariant within the ambient set");
  }
  return inv_part(f, s - comb_interior(f.grid(), t));
}

AttractorSequence attractors_from_morse(const CombMap& f, const MorseDecomposition& d, int margin) {
  const std::size_t m = d.size();
  const CellSet& s = d.ambient;
  AttractorSequence seq;
  seq.attractors.push_back(f.empty_set());
  seq.trapping.push_back(f.empty_set());
  CellSet lower(f.cell_count());
  for (std::size_t k = 0; k < m; ++k) {
    lower |= d.level(k);
    CellSet a = reach_forward(f, s, lower);
    try {
      seq.trapping.push_back(find_trapping_region(f, a, s, margin));
    } catch (const Error& e) {
      throw Error(e.kind(), "attractor A_" + std::to_string(k + 1) + ": " + e.what());
    }
    seq.attractors.push_back(std::move(a));
  }
  if (!(seq.attractors.back() == s)) {
    throw Error(ErrorKind::Internal, "top attractor differs from the invariant set");
  }
  seq.repellers.push_back(s);
  for (std::size_t k = 1; k <= m; ++k) {
    seq.repellers.push_back(dual_repeller(f, s, seq.attractors[k], seq.trapping[k]));
  }
  for (std::size_t j = 1; j <= m; ++j) {
    if (!((seq.attractors[j] & seq.repellers[j - 1]) == d.level(j - 1))) {
      throw Error(ErrorKind::ResolutionTooCoarse,
                  "M_" + std::to_string(j) + " differs from A_j minus the previous repeller");
    }
  }
  return seq;
}

MorseDecomposition morse_from_attractors(const CombMap& f, const CellSet& s,
                                         const AttractorSequence& seq) {
  const std::size_t m = seq.attractors.size() - 1;
  if (seq.repellers.size() != m + 1) throw Error(ErrorKind::Internal, "malformed attractor sequence");
  std::vector<CellSet> levels;
  for (std::size_t j = 1; j <= m; ++j) levels.push_back(seq.attractors[j] & seq.repellers[j - 1]);
  for (const auto& l : levels) {
    if (l.empty()) throw Error(ErrorKind::Internal, "empty Morse set from attractor sequence");
  }
  MorseDecomposition d = assemble(f, s, s, levels);
  std::vector<CellId> reps;
  for (const auto& l : levels) reps.push_back(*l.first());
  try {
    d = with_linear_order(d, reps);
    verify_morse_decomposition(f, d);
  } catch (const Error& e) {
    throw Error(ErrorKind::Internal, std::string("attractor sequence gives invalid decomposition: ") + e.what());
  }
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> morse_graph(const MorseDecomposition& d) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const std::size_t m = d.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!d.reaches[i][j]) continue;
      bool implied = false;
      for (std::size_t k = 0; k < m && !implied; ++k) {
        implied = k != i && k != j && d.reaches[i][k] && d.reaches[k][j];
      }
      if (!implied) edges.emplace_back(i, j);
    }
  }
  return edges;
}

}  // namespace conley
