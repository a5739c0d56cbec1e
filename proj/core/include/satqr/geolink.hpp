#pragma once

#include "satqr/params.hpp"

namespace satqr {

/// Simultaneous dual downlink from a geostationary pair source, no memories.
/// Defaults: 36 000 km range, 5 urad full divergence, 0.3 m transmitter,
/// 2.5 m receivers, 1 GHz source, p_d = 1e-6, zenith transmittance 0.8 at 852 nm.
struct GeoParams {
  double altitude = 3.6e7;           // m, used as the link range
  double divergence = 5e-6;          // rad, full angle
  double d_tx = 0.3;                 // m
  double d_rx = 2.5;                 // m
  double source_rate = 1e9;          // pairs/s
  double p_d = 1e-6;                 // incoherent click probability per window
  double atm_transmittance = 0.8;

  void validate() const;
};

/// Aperture-over-footprint capture, capped at 1, times atmospheric
/// transmittance. No pointing, tracking or turbulence losses.
double geo_channel_transmittance(const GeoParams& g);

/// Asymptotic secret bits per second for the dual downlink.
///
/// Each link's detection probability is transmittance times eta_det.
/// Coincidences = source_rate eta_1 eta_2; both bases share the error rate
/// alpha^2 eps_m + (1 - alpha^2)/2; half the coincidences survive sifting
/// and each yields max(0, 1 - h(e) - f_e h(e)) bits.
double geo_asymptotic_key_rate(const GeoParams& g, const SystemParams& p);

struct AnnualComparison {
  double flyover_pairs_per_year = 0.0;
  double key_per_pass = 0.0;
  double annual_key_2qm = 0.0;
  double annual_key_geo = 0.0;
  double gain_ratio = 0.0;          // +inf when the GEO link yields no key
  bool gain_infinite = false;
};

inline constexpr double kFlyoverPairsPerYear = 1257.0;
inline constexpr double kSecondsPerYear = 3.156e7;

AnnualComparison annual_comparison(double key_per_pass, double geo_rate,
                                   double flyovers = kFlyoverPairsPerYear,
                                   double seconds_per_year = kSecondsPerYear);

}  // namespace satqr
