#include "qkdcap/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qkdcap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Project a value onto its 9-significant-digit representation so CSV and
// JSON carry identical numbers.
double round9(double v) {
  if (std::isnan(v)) return v;
  return std::strtod(fmt9(v).c_str(), nullptr);
}

std::vector<double> axis_values(double lo, double hi, double step) {
  const auto count =
      static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

}  // namespace

void SweepSpec::validate() const {
  if (n_min < 3 || n_max < n_min)
    throw std::invalid_argument("SweepSpec: need 3 <= n_min <= n_max");
  if (!(len_min_km > 0.0) || !(len_max_km >= len_min_km))
    throw std::invalid_argument("SweepSpec: need 0 < len_min <= len_max");
  if (!(len_step_km > 0.0))
    throw std::invalid_argument("SweepSpec: len_step_km must be > 0");
  if (!(alpha_db_per_km > 0.0))
    throw std::invalid_argument("SweepSpec: alpha_db_per_km must be > 0");
  if (!(switch_penalty_db >= 0.0))
    throw std::invalid_argument("SweepSpec: switch_penalty_db must be >= 0");
}

SweepGrid run_sweep(const SweepSpec& spec,
                    const std::vector<SkrProfile>& profiles) {
  spec.validate();
  const SkrProfile* profile = find_profile(profiles, spec.profile);
  if (!profile)
    throw std::runtime_error("run_sweep: unknown profile '" + spec.profile +
                             "'");

  SweepGrid grid;
  for (int n = spec.n_min; n <= spec.n_max; ++n) grid.n_values.push_back(n);
  grid.len_values_km =
      axis_values(spec.len_min_km, spec.len_max_km, spec.len_step_km);
  grid.r.reserve(grid.cells());
  grid.g_switched.reserve(grid.cells());
  grid.g_relayed.reserve(grid.cells());

  for (const int n : grid.n_values) {
    for (const double len : grid.len_values_km) {
      RingSpec ring;
      ring.n_nodes = n;
      ring.adjacent_len_km = len;
      ring.alpha_db_per_km = spec.alpha_db_per_km;
      ring.switch_penalty_db = spec.switch_penalty_db;
      ring.adjacent_uses_chord = spec.adjacent_uses_chord;
      const ComparisonResult cell =
          compare_architectures(ring, *profile, spec.accounting);
      grid.g_switched.push_back(cell.g_switched);
      grid.g_relayed.push_back(cell.g_relayed);
      grid.r.push_back(cell.r);
    }
  }
  return grid;
}

std::vector<CrossoverPoint> crossover_curve(const SweepGrid& grid) {
  std::vector<CrossoverPoint> curve;
  curve.reserve(grid.len_values_km.size());
  for (std::size_t li = 0; li < grid.len_values_km.size(); ++li) {
    CrossoverPoint pt;
    pt.len_km = grid.len_values_km[li];
    for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni)
      if (grid.r[grid.index(ni, li)] > 0.0)
        pt.max_n_positive = grid.n_values[ni];
    curve.push_back(pt);
  }
  return curve;
}

std::string emit_csv(const SweepGrid& grid) {
  std::string out = "n,length_km,g_switched_bps,g_relayed_bps,r\n";
  for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
    for (std::size_t li = 0; li < grid.len_values_km.size(); ++li) {
      const std::size_t c = grid.index(ni, li);
      out += std::to_string(grid.n_values[ni]);
      out += ',';
      out += fmt9(grid.len_values_km[li]);
      out += ',';
      out += fmt9(grid.g_switched[c]);
      out += ',';
      out += fmt9(grid.g_relayed[c]);
      out += ',';
      out += std::isnan(grid.r[c]) ? "nan" : fmt9(grid.r[c]);
      out += '\n';
    }
  }
  return out;
}

std::string emit_json(const SweepGrid& grid) {
  nlohmann::ordered_json doc;
  doc["n_values"] = grid.n_values;
  auto dump_axis = [](const std::vector<double>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double x : v) arr.push_back(round9(x));
    return arr;
  };
  doc["length_km_values"] = dump_axis(grid.len_values_km);
  doc["g_switched_bps"] = dump_axis(grid.g_switched);
  doc["g_relayed_bps"] = dump_axis(grid.g_relayed);
  nlohmann::ordered_json r = nlohmann::ordered_json::array();
  for (double x : grid.r) {
    if (std::isnan(x))
      r.push_back(nullptr);
    else
      r.push_back(round9(x));
  }
  doc["r"] = r;
  return doc.dump(2) + "\n";
}

SweepGrid parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "n,length_km,g_switched_bps,g_relayed_bps,r")
    throw std::runtime_error("sweep CSV: bad or missing header");

  SweepGrid grid;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(fields, tok, ',')) cols.push_back(tok);
    if (cols.size() != 5)
      throw std::runtime_error("sweep CSV: row " + std::to_string(row) +
                               ": expected 5 columns");
    const int n = std::atoi(cols[0].c_str());
    const double len = std::strtod(cols[1].c_str(), nullptr);
    if (grid.n_values.empty() || grid.n_values.back() != n) {
      grid.n_values.push_back(n);
    }
    if (grid.n_values.size() == 1) grid.len_values_km.push_back(len);
    grid.g_switched.push_back(std::strtod(cols[2].c_str(), nullptr));
    grid.g_relayed.push_back(std::strtod(cols[3].c_str(), nullptr));
    grid.r.push_back(cols[4] == "nan" ? kNaN
                                      : std::strtod(cols[4].c_str(), nullptr));
  }
  if (grid.cells() != grid.r.size())
    throw std::runtime_error("sweep CSV: ragged grid");
  return grid;
}

}  // namespace qkdcap
