#pragma once

// Morse equation assembly, connection detection and the end-to-end pipeline.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conley/homology.hpp"
#include "conley/io.hpp"
#include "conley/morse.hpp"

namespace conley {

/// q with (1 + t) q = p; throws NotDivisible or NegativeQ.
Polynomial divide_by_one_plus_t(const Polynomial& p);

struct RepAttrResult {
  IndexTriple triple;
  Polynomial p_repeller;   // from (P0, P1)
  Polynomial p_attractor;  // from (P1, P2)
  Polynomial p_total;      // from (P0, P2)
  Polynomial q;
};

RepAttrResult rep_attr_equation(const CombMap& f, const CellSet& n, const CellSet& a,
                                const CellSet& t);

struct Connection {
  std::size_t from = 0;              // 1-based level in the linear order
  std::optional<std::size_t> to;     // empty when only the index forces it
  std::vector<CellId> path;
};

struct MorseEquationReport {
  Polynomial p_s;
  std::vector<Polynomial> p_m;  // M_1 .. M_n
  std::vector<Polynomial> p_a;  // A_0 .. A_n
  Polynomial q;
  std::vector<Polynomial> q_i;  // Q_1 .. Q_n
  std::vector<Connection> connections;
  AttractorSequence sequence;
  std::vector<IndexTriple> triples;  // one per level
  int collar = 0;
};

/// Collar widths tried, in order, for the trapping regions of the attractor sequence.
inline constexpr int kCollarWidths[] = {2, 3, 4};

MorseEquationReport morse_equation(const CombMap& f, const CellSet& n, const MorseDecomposition& d);

/// Shortest path inside `s` from `from` to `to`; empty when none exists.
std::vector<CellId> witness_path(const CombMap& f, const CellSet& s, const CellSet& from,
                                 const CellSet& to);

struct AnalysisRun {
  AnalysisSpec spec;
  CellSet neighborhood;
  MorseDecomposition decomposition;
  MorseEquationReport equation;
};

struct AnalyzeOptions {
  std::optional<std::vector<CellId>> neighborhood;
};

AnalysisRun analyze(const std::string& spec_path, const AnalyzeOptions& options = {});
AnalysisRun analyze(AnalysisSpec spec, const AnalyzeOptions& options = {});

nlohmann::json polynomial_json(const Polynomial& p);
nlohmann::json cells_json(const CellSet& s);
nlohmann::json morse_graph_json(const MorseDecomposition& d);
nlohmann::json report_json(const AnalysisRun& run);
std::string morse_dot(const MorseDecomposition& d, const std::vector<Polynomial>& p_m = {});

}  // namespace conley
