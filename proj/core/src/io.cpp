#include "splab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace splab {

namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << body;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void strip_trailing(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.pop_back();
}

}  // namespace

void write_csv(const fs::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  if (columns.empty()) throw std::invalid_argument("write_csv: need at least one column");
  std::string body;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) body += ',';
    body += columns[c];
  }
  body += '\n';
  for (const std::vector<double>& row : rows) {
    if (row.size() != columns.size())
      throw std::invalid_argument("write_csv: row width does not match the header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) body += ',';
      body += format_double(row[c]);
    }
    body += '\n';
  }
  atomic_write(path, body);
}

Grid read_potential_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("potential CSV: empty file");
  strip_trailing(line);
  if (line != "x,u")
    throw std::invalid_argument("potential CSV: header must be exactly 'x,u'");

  std::vector<double> xs, us;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_trailing(line);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("potential CSV: line " + std::to_string(lineno) +
                                  " is not 'x,u'");
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      us.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("potential CSV: line " + std::to_string(lineno) +
                                  " is not numeric");
    }
    if (!std::isfinite(xs.back()) || !std::isfinite(us.back()))
      throw std::invalid_argument("potential CSV: line " + std::to_string(lineno) +
                                  " is not finite");
  }
  if (xs.size() < 2) throw std::invalid_argument("potential CSV: need at least 2 samples");

  const double h = xs[1] - xs[0];
  if (!(h > 0.0)) throw std::invalid_argument("potential CSV: x must be strictly increasing");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double dx = xs[i + 1] - xs[i];
    if (!(dx > 0.0) || std::abs(dx - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw std::invalid_argument("potential CSV: x must be strictly increasing and uniform");
  }

  Grid g(GridSpec{xs.front(), xs.back(), xs.size()});
  g.values = std::move(us);
  return g;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["tool_version"] = tool_version;
  j["outputs"] = outputs;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : entries)
    std::visit([&](const auto& v) { params[key] = v; }, value);
  j["parameters"] = std::move(params);
  j["wall_time_ms"] = wall_time_ms;
  return j.dump(2) + "\n";
}

void RunManifest::write(const fs::path& path) const { atomic_write(path, to_json()); }

}  // namespace splab
