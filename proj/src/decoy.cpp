#include "qkdcap/decoy.hpp"

#include <cmath>
#include <limits>

namespace qkdcap {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("DecoyParams: ") + what);
}

struct LinkPoint {
  double eta;       // overall transmittance
  double gain_mu;   // Q_mu
  double qber_mu;   // E_mu
  double yield_1;   // Y_1
  double gain_1;    // Q_1
  double err_1;     // e_1
};

LinkPoint eval_point(const DecoyParams& p, double a_db) {
  p.validate();
  if (!(a_db >= 0.0))
    throw std::domain_error("attenuation must be >= 0 dB");

  LinkPoint pt{};
  pt.eta = p.eta_bob * std::pow(10.0, -a_db / 10.0);

  const double emitted = -std::expm1(-pt.eta * p.mu);  // 1 - e^(-eta*mu)
  pt.gain_mu = p.y0 + emitted;
  pt.qber_mu = (p.e0 * p.y0 + p.e_det * emitted) / pt.gain_mu;

  pt.yield_1 = p.y0 + pt.eta - p.y0 * pt.eta;
  if (pt.yield_1 <= 0.0)
    throw DegenerateChannel("single-photon yield is zero (y0 = 0 and the "
                            "channel transmittance underflowed)");
  pt.gain_1 = pt.yield_1 * p.mu * std::exp(-p.mu);
  pt.err_1 = (p.e0 * p.y0 + p.e_det * pt.eta) / pt.yield_1;
  if (pt.err_1 > 0.5) pt.err_1 = 0.5;
  return pt;
}

}  // namespace

void DecoyParams::validate() const {
  require(std::isfinite(mu) && mu > 0.0, "mu must be > 0");
  require(std::isfinite(y0) && y0 >= 0.0 && y0 < 1.0, "y0 must be in [0, 1)");
  require(e0 == 0.5, "e0 must be exactly 0.5");
  require(std::isfinite(e_det) && e_det >= 0.0 && e_det < 0.5,
          "e_det must be in [0, 0.5)");
  require(std::isfinite(eta_bob) && eta_bob > 0.0 && eta_bob <= 1.0,
          "eta_bob must be in (0, 1]");
  require(std::isfinite(q) && q > 0.0 && q <= 1.0, "q must be in (0, 1]");
  require(std::isfinite(f_ec) && f_ec >= 1.0, "f_ec must be >= 1");
  require(std::isfinite(pulse_rate_hz) && pulse_rate_hz > 0.0,
          "pulse_rate_hz must be > 0");
  require(std::isfinite(rate_cap_bps) && rate_cap_bps >= 0.0,
          "rate_cap_bps must be >= 0");
}

const std::vector<SkrProfile>& builtin_profiles() {
  static const std::vector<SkrProfile> profiles = [] {
    std::vector<SkrProfile> v;
    DecoyParams experimental;
    experimental.eta_bob = 0.06;
    experimental.rate_cap_bps = 9e5;
    v.push_back({"experimental", experimental});

    DecoyParams low;
    low.eta_bob = 0.02;
    low.rate_cap_bps = 3e5;
    v.push_back({"low", low});

    DecoyParams high;
    high.eta_bob = 0.25;
    high.rate_cap_bps = 9e5;
    v.push_back({"high", high});
    return v;
  }();
  return profiles;
}

const SkrProfile* find_profile(const std::vector<SkrProfile>& profiles,
                               std::string_view name) {
  for (const auto& p : profiles)
    if (p.name == name) return &p;
  return nullptr;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double channel_transmittance(const DecoyParams& params, double a_db) {
  params.validate();
  if (!(a_db >= 0.0))
    throw std::domain_error("attenuation must be >= 0 dB");
  return params.eta_bob * std::pow(10.0, -a_db / 10.0);
}

SignalYield signal_gain_and_qber(const DecoyParams& params, double a_db) {
  const LinkPoint pt = eval_point(params, a_db);
  return {pt.gain_mu, pt.qber_mu};
}

SinglePhotonYield single_photon_terms(const DecoyParams& params, double a_db) {
  const LinkPoint pt = eval_point(params, a_db);
  return {pt.gain_1, pt.err_1};
}

double skr_bps(const DecoyParams& params, double a_db) {
  const LinkPoint pt = eval_point(params, a_db);
  const double bracket = -pt.gain_mu * params.f_ec * binary_entropy(pt.qber_mu)
                         + pt.gain_1 * (1.0 - binary_entropy(pt.err_1));
  double rate = params.q * bracket * params.pulse_rate_hz;
  if (rate < 0.0) rate = 0.0;
  if (params.rate_cap_bps > 0.0 && rate > params.rate_cap_bps)
    rate = params.rate_cap_bps;
  return rate;
}

double cutoff_attenuation_db(const DecoyParams& params) {
  if (skr_bps(params, 0.0) <= 0.0)
    throw std::invalid_argument(
        "cutoff_attenuation_db: profile yields zero rate at zero attenuation");

  double lo = 0.0;  // rate > 0
  double hi = 1.0;
  while (skr_bps(params, hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6)
      throw std::invalid_argument(
          "cutoff_attenuation_db: rate never reaches zero");
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (skr_bps(params, mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace qkdcap
