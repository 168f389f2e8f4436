#ifndef QKDCAP_CAPACITY_HPP
#define QKDCAP_CAPACITY_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "qkdcap/decoy.hpp"
#include "qkdcap/ring.hpp"

namespace qkdcap {

// How the per-pair switched rate is derived from the cycle time
// T_i = sum_j T_ij, T_ij = 2/f(A_ij):
//   verbatim      G_S = 1/T_i
//   two_per_cycle G_S = 2/T_i   (each slot delivers the 2 key units of T_ij)
//   duplex        G_S = 4/T_i   (additionally, each node's Alice and Bob run
//                                the schedule concurrently, halving the
//                                wall-clock cycle; per-pair rate ~ f/(N/2)
//                                on flat ground)
enum class ScheduleAccounting { verbatim, two_per_cycle, duplex };

struct InfeasibleSchedule : std::runtime_error {
  InfeasibleSchedule(int a, int b);
  int node_a;
  int node_b;
};

// Time-share schedule of one node toward its N-1 peers.
struct SwitchSchedule {
  int node = 0;
  std::vector<std::pair<int, double>> shares;  // (peer, T_ij), peer ascending
  double total = 0.0;                          // T_i
  double fair_rate = 0.0;                      // per accounting mode
};

struct ComparisonResult {
  double g_relayed = 0.0;
  double g_switched = 0.0;
  double r = 0.0;  // NaN when both rates are zero
};

// Number of node pairs whose shortest relay path crosses any given link:
// (n^2-1)/8 for n odd, n^2/8 for n even (antipodal traffic split over both
// equal shortest paths). Exact in double; half-integer for n = 2 mod 4.
double pairs_per_link(int n_nodes);

// Independent oracle: routes every unordered pair along its shortest ring
// path (ties split 1/2-1/2), checks all links carry equal load, returns it.
double brute_force_pairs_per_link(int n_nodes);

// G_R = f(A_e) / pairs_per_link(n): the adjacent link's rate shared by all
// pairs relaying across it.
double relayed_rate(const RingSpec& spec, const SkrProfile& profile);

SwitchSchedule switched_schedule(
    const RingSpec& spec, const SkrProfile& profile, int node,
    ScheduleAccounting accounting = ScheduleAccounting::duplex);

// fair_rate of node 0's schedule; asserts every node agrees (ring symmetry).
double switched_rate(
    const RingSpec& spec, const SkrProfile& profile,
    ScheduleAccounting accounting = ScheduleAccounting::duplex);

// (g_switched - g_relayed) / max(g_switched, g_relayed), in [-1, 1].
// Domain error when both are zero.
double normalized_difference(double g_switched, double g_relayed);

// Tolerant composition used by sweeps: infeasible schedules count as
// g_switched = 0; r is NaN when both architectures yield zero.
ComparisonResult compare_architectures(
    const RingSpec& spec, const SkrProfile& profile,
    ScheduleAccounting accounting = ScheduleAccounting::duplex);

}  // namespace qkdcap

#endif
