#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "conley/error.hpp"
#include "conley/report.hpp"

namespace {

using conley::CellSet;
using conley::Error;
using conley::ErrorKind;
using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Ingestion, "cannot write " + path);
  out << text;
}

json verdict_json(const conley::Verdict& v) {
  return {{"certified", v.certified}, {"failed", v.failed}, {"detail", v.detail}};
}

json matrix_json(const conley::QMatrix& m) {
  auto rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

struct PairFile {
  std::optional<CellSet> p0;
  CellSet p1;
  CellSet p2;
  CellSet ambient;
};

PairFile load_pair(const conley::AnalysisSpec& spec, const std::string& path) {
  json j = conley::read_json(path);
  if (!j.is_object() || !j.contains("p1") || !j.contains("p2")) {
    throw Error(ErrorKind::Ingestion, "pair file needs p1 and p2");
  }
  const auto& grid = spec.grid;
  PairFile p{std::nullopt, conley::parse_cells(grid, j["p1"], "p1"),
             conley::parse_cells(grid, j["p2"], "p2"), CellSet::all(grid.cell_count())};
  if (j.contains("p0")) p.p0 = conley::parse_cells(grid, j["p0"], "p0");
  if (j.contains("ambient")) p.ambient = conley::parse_cells(grid, j["ambient"], "ambient");
  return p;
}

int run_analyze(const std::string& spec_path, const std::string& out, const std::string& dot,
                const std::string& neighborhood) {
  conley::AnalyzeOptions options;
  if (!neighborhood.empty()) {
    json ids = conley::read_json(neighborhood);
    if (ids.is_object() && ids.contains("neighborhood")) ids = ids["neighborhood"];
    if (!ids.is_array()) throw Error(ErrorKind::Ingestion, "neighborhood file must hold a cell id array");
    std::vector<conley::CellId> cells;
    for (const auto& v : ids) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw Error(ErrorKind::Ingestion, "neighborhood ids must be nonnegative integers");
      }
      cells.push_back(v.get<conley::CellId>());
    }
    options.neighborhood = std::move(cells);
  }
  auto run = conley::analyze(spec_path, options);
  const std::string report = conley::report_json(run).dump(2) + "\n";
  const std::string graph = conley::morse_dot(run.decomposition, run.equation.p_m);
  if (out.empty()) std::cout << report;
  else write_text(out, report);
  if (!dot.empty()) write_text(dot, graph);
  return 0;
}

int run_check_pair(const std::string& spec_path, const std::string& pair_path) {
  auto spec = conley::load_spec(spec_path);
  auto p = load_pair(spec, pair_path);
  json out;
  conley::Verdict v;
  if (p.p0) {
    v = conley::verify_index_triple(spec.map, {*p.p0, p.p1, p.p2, p.ambient});
    out["kind"] = "index_triple";
  } else {
    v = conley::verify_weak_index_pair(spec.map, {p.p1, p.p2, p.ambient});
    out["kind"] = "weak_index_pair";
  }
  out.update(verdict_json(v));
  std::cout << out.dump(2) << "\n";
  return v.certified ? 0 : 5;
}

int run_homology(const std::string& spec_path, const std::string& pair_path) {
  auto spec = conley::load_spec(spec_path);
  auto p = load_pair(spec, pair_path);
  if (!p.p2.is_subset_of(p.p1)) throw Error(ErrorKind::Ingestion, "p2 must be contained in p1");
  auto h = conley::relative_homology(spec.grid, p.p1, p.p2);
  auto im = conley::index_map(spec.map, p.p1, p.p2, p.ambient);
  json matrices = json::array();
  json leray = json::array();
  for (const auto& m : im.matrices) {
    matrices.push_back(matrix_json(m));
    leray.push_back(conley::leray_reduce(m).dimension);
  }
  auto dims = leray.get<std::vector<int>>();
  json out{{"homology_dims", h.dims},
           {"index_map", matrices},
           {"leray_dims", dims},
           {"poincare", conley::polynomial_json(conley::poincare_series(dims))},
           {"poincare_text", conley::poincare_series(dims).str()}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_morse_graph(const std::string& spec_path) {
  auto spec = conley::load_spec(spec_path);
  CellSet n = spec.map.full_set();
  if (spec.neighborhood) n = CellSet(spec.grid.cell_count(), *spec.neighborhood);
  auto d = conley::morse_decomposition(spec.map, n);
  if (spec.merge_morse_sets) d = conley::merge_morse_sets(spec.map, d, *spec.merge_morse_sets);
  if (spec.order) d = conley::with_linear_order(d, *spec.order);
  std::cout << conley::morse_graph_json(d).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conley-Morse analysis of combinatorial multivalued maps on cubical grids"};
  app.require_subcommand(1);

  std::string spec, out, dot, neighborhood, pair;
  auto* analyze = app.add_subcommand("analyze", "run the full pipeline and emit a report");
  analyze->add_option("spec", spec, "analysis spec JSON")->required();
  analyze->add_option("--out", out, "write the report JSON here instead of stdout");
  analyze->add_option("--dot", dot, "write the Morse graph as DOT");
  analyze->add_option("--neighborhood", neighborhood, "JSON array of cell ids to use as N");

  auto* check = app.add_subcommand("check-pair", "verify a weak index pair or index triple");
  check->add_option("spec", spec)->required();
  check->add_option("pair", pair)->required();

  auto* homology = app.add_subcommand("homology", "relative homology and index map of a pair");
  homology->add_option("spec", spec)->required();
  homology->add_option("pair", pair)->required();

  auto* graph = app.add_subcommand("morse-graph", "Morse sets and their connection graph");
  graph->add_option("spec", spec)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return run_analyze(spec, out, dot, neighborhood);
    if (check->parsed()) return run_check_pair(spec, pair);
    if (homology->parsed()) return run_homology(spec, pair);
    if (graph->parsed()) return run_morse_graph(spec);
  } catch (const Error& e) {
    json err{{"error", std::string(conley::to_string(e.kind()))}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return conley::exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    json err{{"error", "IngestionError"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return conley::exit_code(ErrorKind::Ingestion);
  } catch (const std::exception& e) {
    json err{{"error", "InternalError"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return conley::exit_code(ErrorKind::Internal);
  }
  return 1;
}
