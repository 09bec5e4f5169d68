#include "conley/report.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "conley/error.hpp"

namespace conley {

Polynomial divide_by_one_plus_t(const Polynomial& p) {
  if (p.at_minus_one() != 0) {
    throw Error(ErrorKind::NotDivisible, "polynomial " + p.str() + " is not divisible by 1+t");
  }
  const auto& c = p.coeffs();
  if (c.empty()) return {};
  std::vector<std::int64_t> q(c.size() - 1, 0);
  std::int64_t carry = 0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    q[k] = c[k] - carry;
    carry = q[k];
  }
  Polynomial out(std::move(q));
  if (!out.nonnegative()) {
    throw Error(ErrorKind::NegativeQ, "quotient " + out.str() + " has a negative coefficient");
  }
  return out;
}

RepAttrResult rep_attr_equation(const CombMap& f, const CellSet& n, const CellSet& a,
                                const CellSet& t) {
  IndexTriple tr = build_index_triple(f, n, a, t);
  auto series = [&](const CellSet& p1, const CellSet& p2) {
    return poincare_series(pair_index(f, p1, p2, n).dims);
  };
  RepAttrResult r{tr, series(tr.p0, tr.p1), series(tr.p1, tr.p2), series(tr.p0, tr.p2), {}};
  r.q = divide_by_one_plus_t(r.p_repeller + r.p_attractor - r.p_total);
  if (!(r.p_repeller + r.p_attractor == r.p_total + r.q.times_one_plus_t())) {
    throw Error(ErrorKind::Internal, "repeller-attractor equation does not balance");
  }
  return r;
}

std::vector<CellId> witness_path(const CombMap& f, const CellSet& s, const CellSet& from,
                                 const CellSet& to) {
  constexpr CellId kNone = static_cast<CellId>(-1);
  std::vector<CellId> parent(f.cell_count(), kNone);
  CellSet seen = from & s;
  std::deque<CellId> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    CellId c = queue.front();
    queue.pop_front();
    if (to.contains(c)) {
      std::vector<CellId> path{c};
      while (parent[path.back()] != kNone) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (CellId d : f.successors(c)) {
      if (s.contains(d) && !seen.contains(d)) {
        seen.insert(d);
        parent[d] = c;
        queue.push_back(d);
      }
    }
  }
  return {};
}

namespace {

bool retryable(ErrorKind k) {
  return k == ErrorKind::ResolutionTooCoarse || k == ErrorKind::NotAttractor;
}

MorseEquationReport equation_with_collar(const CombMap& f, const CellSet& n,
                                         const MorseDecomposition& d, int collar) {
  const std::size_t m = d.size();
  MorseEquationReport rep;
  rep.collar = collar;
  rep.sequence = attractors_from_morse(f, d, collar);
  const auto& seq = rep.sequence;
  rep.p_a.assign(m + 1, Polynomial{});
  std::vector<char> known(m + 1, 0);
  known[0] = 1;
  auto record = [&](std::size_t k, const Polynomial& p) {
    if (known[k] && !(rep.p_a[k] == p)) {
      throw Error(ErrorKind::Internal, "index of A_" + std::to_string(k) +
                                           " differs between adjacent levels");
    }
    rep.p_a[k] = p;
    known[k] = 1;
  };
  for (std::size_t i = 1; i <= m; ++i) {
    const CellSet ni = i == m ? n : (seq.trapping[i] & n);
    RepAttrResult r = rep_attr_equation(f, ni, seq.attractors[i - 1], seq.trapping[i - 1]);
    record(i - 1, r.p_attractor);
    record(i, r.p_total);
    rep.p_m.push_back(r.p_repeller);
    rep.triples.push_back(r.triple);
  }
  rep.p_s = rep.p_a[m];
  Polynomial sum_m;
  for (std::size_t i = 1; i <= m; ++i) {
    rep.q_i.push_back(divide_by_one_plus_t(rep.p_m[i - 1] + rep.p_a[i - 1] - rep.p_a[i]));
    rep.q += rep.q_i.back();
    sum_m += rep.p_m[i - 1];
  }
  if (!(sum_m == rep.p_s + rep.q.times_one_plus_t())) {
    throw Error(ErrorKind::Internal, "Morse equation does not balance");
  }
  if (!(divide_by_one_plus_t(sum_m - rep.p_s) == rep.q)) {
    throw Error(ErrorKind::Internal, "telescoped level equations disagree with the total");
  }

  for (std::size_t i = 1; i <= m; ++i) {
    if (rep.q_i[i - 1].is_zero()) continue;
    const std::size_t src = d.linear_order[i - 1];
    bool found = false;
    for (std::size_t j = 1; j < i; ++j) {
      const std::size_t dst = d.linear_order[j - 1];
      if (!d.reaches[src][dst]) continue;
      auto path = witness_path(f, d.ambient, d.sets[src], d.sets[dst]);
      if (path.empty()) continue;
      rep.connections.push_back({i, j, std::move(path)});
      found = true;
    }
    if (!found) rep.connections.push_back({i, std::nullopt, {}});
  }
  return rep;
}

}  // namespace

MorseEquationReport morse_equation(const CombMap& f, const CellSet& n, const MorseDecomposition& d) {
  std::optional<Error> last;
  for (int collar : kCollarWidths) {
    try {
      return equation_with_collar(f, n, d, collar);
    } catch (const Error& e) {
      if (!retryable(e.kind())) throw;
      last = e;
    }
  }
  throw Error(ErrorKind::ResolutionTooCoarse,
              std::string("no collar width certifies the attractor sequence: ") + last->what());
}

AnalysisRun analyze(const std::string& spec_path, const AnalyzeOptions& options) {
  return analyze(load_spec(spec_path), options);
}

AnalysisRun analyze(AnalysisSpec spec, const AnalyzeOptions& options) {
  const CombMap& f = spec.map;
  const auto bad = check_values_acyclic(f);
  if (!bad.empty()) {
    throw Error(ErrorKind::ValuesNotAcyclic,
                "value of cell " + std::to_string(bad.front()) + " is not a contiguous block");
  }
  CellSet n = f.full_set();
  const auto& ids = options.neighborhood ? options.neighborhood : spec.neighborhood;
  if (ids) {
    n = f.empty_set();
    for (CellId c : *ids) {
      if (!f.grid().valid(c)) {
        throw Error(ErrorKind::InvalidCell, "neighborhood cell " + std::to_string(c) + " outside grid");
      }
      n.insert(c);
    }
  }
  MorseDecomposition d = morse_decomposition(f, n);
  if (spec.merge_morse_sets) d = merge_morse_sets(f, d, *spec.merge_morse_sets);
  if (spec.order) d = with_linear_order(d, *spec.order);
  MorseEquationReport eq = morse_equation(f, n, d);
  return {std::move(spec), std::move(n), std::move(d), std::move(eq)};
}

nlohmann::json polynomial_json(const Polynomial& p) { return p.coeffs(); }

nlohmann::json cells_json(const CellSet& s) { return s.ids(); }

namespace {

nlohmann::json sets_in_order(const MorseDecomposition& d) {
  auto arr = nlohmann::json::array();
  for (std::size_t k = 0; k < d.size(); ++k) arr.push_back(cells_json(d.level(k)));
  return arr;
}

nlohmann::json representatives(const MorseDecomposition& d) {
  auto arr = nlohmann::json::array();
  for (std::size_t k = 0; k < d.size(); ++k) arr.push_back(*d.level(k).first());
  return arr;
}

nlohmann::json level_edges(const MorseDecomposition& d) {
  auto arr = nlohmann::json::array();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto [i, j] : morse_graph(d)) edges.emplace_back(d.position(i) + 1, d.position(j) + 1);
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) arr.push_back({a, b});
  return arr;
}

}  // namespace

nlohmann::json morse_graph_json(const MorseDecomposition& d) {
  return {{"morse_sets", sets_in_order(d)},
          {"edges", level_edges(d)},
          {"linear_order", representatives(d)}};
}

nlohmann::json report_json(const AnalysisRun& run) {
  const auto& eq = run.equation;
  const auto& d = run.decomposition;
  auto series = [](const std::vector<Polynomial>& ps) {
    auto arr = nlohmann::json::array();
    for (const auto& p : ps) arr.push_back(polynomial_json(p));
    return arr;
  };
  auto text = [](const std::vector<Polynomial>& ps) {
    auto arr = nlohmann::json::array();
    for (const auto& p : ps) arr.push_back(p.str());
    return arr;
  };
  auto connections = nlohmann::json::array();
  for (const auto& c : eq.connections) {
    nlohmann::json item{{"from", c.from}};
    if (c.to) {
      item["to"] = *c.to;
      item["path"] = c.path;
      item["evidence"] = "path";
    } else {
      item["to"] = nullptr;
      item["path"] = nlohmann::json::array();
      item["evidence"] = "index-forced";
    }
    connections.push_back(std::move(item));
  }
  auto attractors = nlohmann::json::array();
  auto repellers = nlohmann::json::array();
  auto trapping = nlohmann::json::array();
  for (std::size_t k = 0; k < eq.sequence.attractors.size(); ++k) {
    attractors.push_back(cells_json(eq.sequence.attractors[k]));
    repellers.push_back(cells_json(eq.sequence.repellers[k]));
    trapping.push_back(cells_json(eq.sequence.trapping[k]));
  }
  auto triples = nlohmann::json::array();
  for (const auto& t : eq.triples) {
    triples.push_back({{"p0", cells_json(t.p0)},
                       {"p1", cells_json(t.p1)},
                       {"p2", cells_json(t.p2)},
                       {"ambient", cells_json(t.ambient)},
                       {"certified", true}});
  }
  return {
      {"digest", run.spec.digest},
      {"neighborhood", cells_json(run.neighborhood)},
      {"invariant_set", cells_json(d.ambient)},
      {"morse_sets", sets_in_order(d)},
      {"order", representatives(d)},
      {"edges", level_edges(d)},
      {"poincare", {{"S", polynomial_json(eq.p_s)}, {"M", series(eq.p_m)}, {"A", series(eq.p_a)}}},
      {"poincare_text", {{"S", eq.p_s.str()}, {"M", text(eq.p_m)}, {"A", text(eq.p_a)}}},
      {"Q", polynomial_json(eq.q)},
      {"Qi", series(eq.q_i)},
      {"connections", std::move(connections)},
      {"attractors", std::move(attractors)},
      {"repellers", std::move(repellers)},
      {"trapping_regions", std::move(trapping)},
      {"index_triples", std::move(triples)},
      {"collar", eq.collar},
  };
}

std::string morse_dot(const MorseDecomposition& d, const std::vector<Polynomial>& p_m) {
  std::ostringstream out;
  out << "digraph morse {\n";
  for (std::size_t k = 0; k < d.size(); ++k) {
    out << "  M" << k + 1 << " [label=\"M" << k + 1;
    if (k < p_m.size()) out << "\\np=" << p_m[k].str();
    out << "\\n" << d.level(k).size() << " cells\"];\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto [i, j] : morse_graph(d)) edges.emplace_back(d.position(i) + 1, d.position(j) + 1);
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) out << "  M" << a << " -> M" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace conley
