#ifndef QKDCAP_SWEEP_HPP
#define QKDCAP_SWEEP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qkdcap/capacity.hpp"
#include "qkdcap/decoy.hpp"

namespace qkdcap {

struct SweepSpec {
  std::string profile = "experimental";
  int n_min = 5;
  int n_max = 30;
  double len_min_km = 1.0;
  double len_max_km = 20.0;
  double len_step_km = 0.5;
  double alpha_db_per_km = 0.21;
  double switch_penalty_db = 5.0;
  bool adjacent_uses_chord = false;
  ScheduleAccounting accounting = ScheduleAccounting::duplex;

  void validate() const;
};

// Row-major by node count, then adjacent length. Cells where both
// architectures yield zero store NaN in r (emitted as "nan").
struct SweepGrid {
  std::vector<int> n_values;
  std::vector<double> len_values_km;
  std::vector<double> r;
  std::vector<double> g_switched;
  std::vector<double> g_relayed;

  std::size_t index(std::size_t ni, std::size_t li) const {
    return ni * len_values_km.size() + li;
  }
  std::size_t cells() const { return n_values.size() * len_values_km.size(); }
};

// Deterministic: identical spec yields bit-identical grids.
SweepGrid run_sweep(const SweepSpec& spec,
                    const std::vector<SkrProfile>& profiles);

struct CrossoverPoint {
  double len_km = 0.0;
  std::optional<int> max_n_positive;  // largest N with R > 0, if any
};
std::vector<CrossoverPoint> crossover_curve(const SweepGrid& grid);

// CSV: header n,length_km,g_switched_bps,g_relayed_bps,r then one row per
// cell, 9 significant digits, NaN r emitted as "nan".
std::string emit_csv(const SweepGrid& grid);

// Axes arrays plus row-major value arrays; values pass through the same
// 9-significant-digit formatter as the CSV, NaN becomes null.
std::string emit_json(const SweepGrid& grid);

// Inverse of emit_csv (values at the emitted precision).
SweepGrid parse_csv(const std::string& text);

}  // namespace qkdcap

#endif
