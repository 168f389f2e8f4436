#include "qkdcap/capacity.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qkdcap {

namespace {

double accounting_factor(ScheduleAccounting accounting) {
  switch (accounting) {
    case ScheduleAccounting::verbatim: return 1.0;
    case ScheduleAccounting::two_per_cycle: return 2.0;
    case ScheduleAccounting::duplex: return 4.0;
  }
  throw std::logic_error("unknown schedule accounting");
}

}  // namespace

InfeasibleSchedule::InfeasibleSchedule(int a, int b)
    : std::runtime_error("switched schedule infeasible: link (" +
                         std::to_string(a) + ", " + std::to_string(b) +
                         ") is at or beyond the rate cutoff"),
      node_a(a),
      node_b(b) {}

double pairs_per_link(int n_nodes) {
  if (n_nodes < 3) throw std::domain_error("pairs_per_link: n_nodes < 3");
  const double n = n_nodes;
  return (n_nodes % 2 != 0) ? (n * n - 1.0) / 8.0 : n * n / 8.0;
}

double brute_force_pairs_per_link(int n_nodes) {
  if (n_nodes < 3)
    throw std::domain_error("brute_force_pairs_per_link: n_nodes < 3");

  // Loads counted in half-units so tie-splitting stays exact.
  std::vector<long long> load(static_cast<std::size_t>(n_nodes), 0);
  auto add_path = [&](int from, int hops, long long weight) {
    for (int s = 0; s < hops; ++s)
      load[static_cast<std::size_t>((from + s) % n_nodes)] += weight;
  };

  for (int i = 0; i < n_nodes; ++i) {
    for (int j = i + 1; j < n_nodes; ++j) {
      const int fwd = j - i;
      const int bwd = n_nodes - fwd;
      if (fwd < bwd) {
        add_path(i, fwd, 2);
      } else if (bwd < fwd) {
        add_path(j, bwd, 2);
      } else {  // antipodal: split across both shortest paths
        add_path(i, fwd, 1);
        add_path(j, bwd, 1);
      }
    }
  }

  for (int l = 1; l < n_nodes; ++l)
    if (load[static_cast<std::size_t>(l)] != load[0])
      throw std::logic_error("brute_force_pairs_per_link: asymmetric loads");
  return static_cast<double>(load[0]) / 2.0;
}

double relayed_rate(const RingSpec& spec, const SkrProfile& profile) {
  const LinkBudget edge = relayed_link_budget(spec);
  return skr_bps(profile.params, edge.attenuation_db) /
         pairs_per_link(spec.n_nodes);
}

SwitchSchedule switched_schedule(const RingSpec& spec,
                                 const SkrProfile& profile, int node,
                                 ScheduleAccounting accounting) {
  spec.validate();
  if (node < 0 || node >= spec.n_nodes)
    throw std::domain_error("switched_schedule: node index out of range");

  SwitchSchedule sched;
  sched.node = node;
  sched.shares.reserve(static_cast<std::size_t>(spec.n_nodes - 1));
  for (int peer = 0; peer < spec.n_nodes; ++peer) {
    if (peer == node) continue;
    const LinkBudget link = switched_link_budget(spec, node, peer);
    const double rate = skr_bps(profile.params, link.attenuation_db);
    if (rate <= 0.0) throw InfeasibleSchedule(node, peer);
    const double t_ij = 2.0 / rate;
    sched.shares.emplace_back(peer, t_ij);
    sched.total += t_ij;
  }
  sched.fair_rate = accounting_factor(accounting) / sched.total;
  return sched;
}

double switched_rate(const RingSpec& spec, const SkrProfile& profile,
                     ScheduleAccounting accounting) {
  const double rate0 = switched_schedule(spec, profile, 0, accounting).fair_rate;
  for (int node = 1; node < spec.n_nodes; ++node) {
    const double rate =
        switched_schedule(spec, profile, node, accounting).fair_rate;
    if (std::abs(rate - rate0) > 1e-12 * rate0)
      throw std::logic_error("switched_rate: ring symmetry violated");
  }
  return rate0;
}

double normalized_difference(double g_switched, double g_relayed) {
  if (!(g_switched >= 0.0) || !(g_relayed >= 0.0))
    throw std::domain_error("normalized_difference: rates must be >= 0");
  const double m = std::max(g_switched, g_relayed);
  if (m == 0.0)
    throw std::domain_error("normalized_difference: both rates are zero");
  return (g_switched - g_relayed) / m;
}

ComparisonResult compare_architectures(const RingSpec& spec,
                                       const SkrProfile& profile,
                                       ScheduleAccounting accounting) {
  ComparisonResult out;
  out.g_relayed = relayed_rate(spec, profile);
  try {
    out.g_switched = switched_rate(spec, profile, accounting);
  } catch (const InfeasibleSchedule&) {
    out.g_switched = 0.0;
  }
  out.r = (out.g_switched == 0.0 && out.g_relayed == 0.0)
              ? std::numeric_limits<double>::quiet_NaN()
              : normalized_difference(out.g_switched, out.g_relayed);
  return out;
}

}  // namespace qkdcap
