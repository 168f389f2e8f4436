#ifndef QKDCAP_RING_HPP
#define QKDCAP_RING_HPP

namespace qkdcap {

// Ring of n_nodes equally spaced nodes joined by identical fiber spans.
struct RingSpec {
  int n_nodes = 5;
  double adjacent_len_km = 1.0;
  double alpha_db_per_km = 0.21;
  double switch_penalty_db = 5.0;
  // When true, adjacent switched links use the geometric chord instead of
  // reusing the existing L km span (sensitivity-analysis mode).
  bool adjacent_uses_chord = false;

  void validate() const;
};

struct LinkBudget {
  int node_a = 0;
  int node_b = 0;
  double length_km = 0.0;
  double attenuation_db = 0.0;
};

// min(|i-j|, n - |i-j|); i == j gives 0.
int ring_separation(int n_nodes, int i, int j);

// Straight-line distance between nodes hop_sep apart, for nodes placed on
// the circle whose circumference is the total ring fiber n*L. hop_sep = 1
// returns the existing adjacent span L (unless adjacent_uses_chord).
double chord_length_km(const RingSpec& spec, int hop_sep);

// Adjacent span at alpha dB/km, no penalty.
LinkBudget relayed_link_budget(const RingSpec& spec);

// Chord length at alpha dB/km plus the switch penalty. Symmetric in (i, j).
LinkBudget switched_link_budget(const RingSpec& spec, int i, int j);

}  // namespace qkdcap

#endif
