#ifndef QKDCAP_DECOY_HPP
#define QKDCAP_DECOY_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qkdcap {

// Physical parameters of a decoy-state BB84 link (GLLP asymptotic rate).
// All yields/efficiencies are per-pulse probabilities.
struct DecoyParams {
  double mu = 0.5;              // mean photon number of signal states
  double y0 = 1.7e-6;           // background/dark-count yield per pulse
  double e0 = 0.5;              // error rate of background events, fixed 0.5
  double e_det = 0.033;         // intrinsic detector/misalignment error
  double eta_bob = 0.06;        // receiver detection efficiency
  double q = 0.5;               // sifting/protocol efficiency
  double f_ec = 1.22;           // error-correction inefficiency
  double pulse_rate_hz = 1e9;   // source repetition rate
  double rate_cap_bps = 0.0;    // secure-key throughput cap; <= 0 disables

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SkrProfile {
  std::string name;
  DecoyParams params;
};

// Built-in profiles: "experimental" (eta_bob 6%), "low" (2%), "high" (25%).
const std::vector<SkrProfile>& builtin_profiles();

// nullptr when absent.
const SkrProfile* find_profile(const std::vector<SkrProfile>& profiles,
                               std::string_view name);

// Thrown when the single-photon yield vanishes (y0 = 0 and the channel
// transmittance underflows to zero).
struct DegenerateChannel : std::domain_error {
  using std::domain_error::domain_error;
};

// H2(p) with the 0*log2(0) = 0 convention. Domain error outside [0,1].
double binary_entropy(double p);

// Overall transmittance eta = eta_bob * 10^(-a/10). Domain error for a < 0.
double channel_transmittance(const DecoyParams& params, double a_db);

struct SignalYield {
  double gain;  // Q_mu = y0 + 1 - exp(-eta*mu)
  double qber;  // E_mu = (e0*y0 + e_det*(1 - exp(-eta*mu))) / Q_mu
};
SignalYield signal_gain_and_qber(const DecoyParams& params, double a_db);

struct SinglePhotonYield {
  double gain;   // Q_1 = Y_1 * mu * exp(-mu), with Y_1 = y0 + eta - y0*eta
  double error;  // e_1 = (e0*y0 + e_det*eta) / Y_1
};
SinglePhotonYield single_photon_terms(const DecoyParams& params, double a_db);

// Secret key rate in bits/s at total channel attenuation a_db:
//   pulse_rate * q * { -Q_mu*f_ec*H2(E_mu) + Q_1*(1 - H2(e_1)) }
// clamped to zero and, when rate_cap_bps > 0, saturated at the cap
// (post-processing throughput limit; gives the flat low-loss region of
// measured SKR-vs-distance curves). Monotone non-increasing in a_db.
double skr_bps(const DecoyParams& params, double a_db);

// Smallest attenuation (to 1e-6 dB, by bisection) beyond which skr_bps
// is identically zero. std::invalid_argument if the rate is already zero
// at a = 0.
double cutoff_attenuation_db(const DecoyParams& params);

}  // namespace qkdcap

#endif
