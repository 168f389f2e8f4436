#include "qkdcap/ring.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qkdcap {

void RingSpec::validate() const {
  if (n_nodes < 3)
    throw std::invalid_argument("RingSpec: n_nodes must be >= 3");
  if (!(std::isfinite(adjacent_len_km) && adjacent_len_km > 0.0))
    throw std::invalid_argument("RingSpec: adjacent_len_km must be > 0");
  if (!(std::isfinite(alpha_db_per_km) && alpha_db_per_km > 0.0))
    throw std::invalid_argument("RingSpec: alpha_db_per_km must be > 0");
  if (!(std::isfinite(switch_penalty_db) && switch_penalty_db >= 0.0))
    throw std::invalid_argument("RingSpec: switch_penalty_db must be >= 0");
}

int ring_separation(int n_nodes, int i, int j) {
  if (n_nodes < 3) throw std::domain_error("ring_separation: n_nodes < 3");
  if (i < 0 || i >= n_nodes || j < 0 || j >= n_nodes)
    throw std::domain_error("ring_separation: node index out of range");
  const int d = std::abs(i - j);
  return std::min(d, n_nodes - d);
}

double chord_length_km(const RingSpec& spec, int hop_sep) {
  spec.validate();
  if (hop_sep < 1 || hop_sep > spec.n_nodes / 2)
    throw std::domain_error("chord_length_km: hop separation out of [1, N/2]");
  if (hop_sep == 1 && !spec.adjacent_uses_chord)
    return spec.adjacent_len_km;
  // Nodes sit on the circle whose circumference is the ring fiber N*L;
  // diagonals are straight chords of that circle.
  const double n = spec.n_nodes;
  return n * spec.adjacent_len_km / std::numbers::pi *
         std::sin(std::numbers::pi * hop_sep / n);
}

LinkBudget relayed_link_budget(const RingSpec& spec) {
  spec.validate();
  return {0, 1, spec.adjacent_len_km,
          spec.adjacent_len_km * spec.alpha_db_per_km};
}

LinkBudget switched_link_budget(const RingSpec& spec, int i, int j) {
  spec.validate();
  if (i == j)
    throw std::domain_error("switched_link_budget: endpoints must differ");
  const int sep = ring_separation(spec.n_nodes, i, j);
  const double len = chord_length_km(spec, sep);
  return {i, j, len, len * spec.alpha_db_per_km + spec.switch_penalty_db};
}

}  // namespace qkdcap
