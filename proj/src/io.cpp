#include "conley/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>

#include "conley/error.hpp"

namespace conley {

namespace {

[[noreturn]] void ingest_error(const std::string& why) { throw Error(ErrorKind::Ingestion, why); }

Breakpoints parse_breakpoints(const nlohmann::json& j, const char* name) {
  if (!j.is_array()) ingest_error(std::string("map.") + name + " must be an array of [x,y]");
  Breakpoints out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      ingest_error(std::string("map.") + name + " entries must be [x,y] numbers");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

std::vector<CellId> parse_ids(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) ingest_error(std::string(what) + " must be an array of cell ids");
  std::vector<CellId> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      ingest_error(std::string(what) + " must contain nonnegative integers");
    }
    out.push_back(v.get<CellId>());
  }
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ingest_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    ingest_error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GridDomain parse_grid(const nlohmann::json& j) {
  if (!j.is_object()) ingest_error("grid must be an object");
  try {
    const int dim = j.at("dim").get<int>();
    std::vector<Interval> bounds;
    for (const auto& b : j.at("bounds")) {
      if (!b.is_array() || b.size() != 2) ingest_error("grid.bounds entries must be [lower, upper]");
      bounds.push_back({b[0].get<double>(), b[1].get<double>()});
    }
    auto divisions = j.at("divisions").get<std::vector<int>>();
    return GridDomain(dim, std::move(bounds), std::move(divisions));
  } catch (const nlohmann::json::exception& e) {
    ingest_error(std::string("invalid grid: ") + e.what());
  }
}

std::vector<SamplePair> read_samples(const std::filesystem::path& path, int dim) {
  std::istringstream in(read_file(path));
  std::vector<SamplePair> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    boost::algorithm::split(fields, line, boost::is_any_of(","));
    if (fields.size() != static_cast<std::size_t>(2 * dim)) {
      ingest_error("sample line must have " + std::to_string(2 * dim) + " fields: " + line);
    }
    std::vector<double> values;
    try {
      for (auto& f : fields) values.push_back(boost::lexical_cast<double>(boost::algorithm::trim_copy(f)));
    } catch (const boost::bad_lexical_cast&) {
      if (first) {
        first = false;
        continue;
      }
      ingest_error("non-numeric sample line: " + line);
    }
    first = false;
    out.push_back({{values.begin(), values.begin() + dim}, {values.begin() + dim, values.end()}});
  }
  return out;
}

CombMap parse_map(const GridDomain& grid, const nlohmann::json& j,
                  const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    ingest_error("map must be an object with a string kind");
  }
  const auto kind = j["kind"].get<std::string>();
  if (kind == "explicit") {
    if (!j.contains("entries") || !j["entries"].is_array()) ingest_error("map.entries missing");
    std::vector<std::pair<CellId, std::vector<CellId>>> entries;
    for (const auto& e : j["entries"]) {
      if (!e.is_array() || e.size() != 2) ingest_error("map.entries items must be [cell, [targets]]");
      auto cell = parse_ids(nlohmann::json::array({e[0]}), "map.entries cell").front();
      entries.emplace_back(cell, parse_ids(e[1], "map.entries targets"));
    }
    return from_table(grid, entries);
  }
  if (kind == "pl_envelope") {
    if (!j.contains("lower") || !j.contains("upper")) ingest_error("map needs lower and upper");
    return from_pl_envelope(grid, parse_breakpoints(j["lower"], "lower"),
                            parse_breakpoints(j["upper"], "upper"));
  }
  if (kind == "samples") {
    if (!j.contains("file") || !j["file"].is_string()) ingest_error("map.file missing");
    int pad = 0;
    if (j.contains("pad")) {
      if (!j["pad"].is_number_integer()) ingest_error("map.pad must be an integer");
      pad = j["pad"].get<int>();
    }
    std::filesystem::path file = j["file"].get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    return from_samples(grid, read_samples(file, grid.dim()), pad);
  }
  ingest_error("unknown map kind: " + kind);
}

CellSet parse_cells(const GridDomain& grid, const nlohmann::json& j, const char* what) {
  CellSet out(grid.cell_count());
  for (CellId c : parse_ids(j, what)) {
    if (!grid.valid(c)) {
      throw Error(ErrorKind::InvalidCell, std::string(what) + ": cell " + std::to_string(c) + " outside grid");
    }
    out.insert(c);
  }
  return out;
}

AnalysisSpec parse_spec(const nlohmann::json& j, const std::filesystem::path& base_dir,
                        std::string digest) {
  if (!j.is_object() || !j.contains("grid") || !j.contains("map")) {
    ingest_error("spec must contain grid and map");
  }
  GridDomain grid = parse_grid(j["grid"]);
  CombMap map = parse_map(grid, j["map"], base_dir);
  AnalysisSpec spec{grid, std::move(map), std::nullopt, std::nullopt, std::nullopt, std::move(digest)};
  if (j.contains("merge_morse_sets")) {
    if (!j["merge_morse_sets"].is_array()) ingest_error("merge_morse_sets must be an array");
    std::vector<std::vector<CellId>> groups;
    for (const auto& g : j["merge_morse_sets"]) groups.push_back(parse_ids(g, "merge_morse_sets"));
    spec.merge_morse_sets = std::move(groups);
  }
  if (j.contains("order")) spec.order = parse_ids(j["order"], "order");
  if (j.contains("neighborhood")) spec.neighborhood = parse_ids(j["neighborhood"], "neighborhood");
  return spec;
}

AnalysisSpec load_spec(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    ingest_error("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_spec(j, path.parent_path(), fnv1a_hex(text));
}

}  // namespace conley
