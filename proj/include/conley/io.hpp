#pragma once

// Reading analysis specifications and pair files.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conley/indexpair.hpp"

namespace conley {

struct AnalysisSpec {
  GridDomain grid;
  CombMap map;
  std::optional<std::vector<std::vector<CellId>>> merge_morse_sets;
  std::optional<std::vector<CellId>> order;
  std::optional<std::vector<CellId>> neighborhood;
  std::string digest;
};

GridDomain parse_grid(const nlohmann::json& j);
CombMap parse_map(const GridDomain& grid, const nlohmann::json& j,
                  const std::filesystem::path& base_dir);
AnalysisSpec parse_spec(const nlohmann::json& j, const std::filesystem::path& base_dir,
                        std::string digest = {});
AnalysisSpec load_spec(const std::filesystem::path& path);

std::vector<SamplePair> read_samples(const std::filesystem::path& path, int dim);

std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

/// Cell id list validated against the grid.
CellSet parse_cells(const GridDomain& grid, const nlohmann::json& j, const char* what);

/// 64-bit FNV-1a digest of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace conley
