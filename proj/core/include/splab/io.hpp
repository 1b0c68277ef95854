#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "splab/grid.hpp"

namespace splab {

inline constexpr const char* tool_version = "0.1.0";

// Profile table: header row, comma separator, LF endings, lowercase
// scientific with 17 significant digits. Written atomically (temp + rename).
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// Potential samples with header exactly `x,u`; x must be strictly increasing
// and uniformly spaced (validated).
Grid read_potential_csv(const std::filesystem::path& path);

using ManifestValue = std::variant<bool, long long, double, std::string, std::vector<double>>;

// Reproduction record for one run. Serialized as JSON with sorted keys so
// identical runs give byte-identical files up to wall_time_ms.
struct RunManifest {
  std::string command;
  std::map<std::string, ManifestValue> entries;
  std::vector<std::string> outputs;
  double wall_time_ms = 0.0;

  void put(const std::string& key, bool v) { entries[key] = v; }
  void put(const std::string& key, int v) { entries[key] = (long long)v; }
  void put(const std::string& key, long long v) { entries[key] = v; }
  void put(const std::string& key, std::size_t v) { entries[key] = (long long)v; }
  void put(const std::string& key, double v) { entries[key] = v; }
  void put(const std::string& key, const char* v) { entries[key] = std::string(v); }
  void put(const std::string& key, const std::string& v) { entries[key] = v; }
  void put(const std::string& key, const std::vector<double>& v) { entries[key] = v; }
  void add_output(const std::filesystem::path& p) { outputs.push_back(p.string()); }

  std::string to_json() const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace splab
