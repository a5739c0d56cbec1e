#include "satqr/geolink.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "satqr/errors.hpp"
#include "satqr/keyrate.hpp"
#include "satqr/link_model.hpp"

namespace satqr {

void GeoParams::validate() const {
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(altitude) || !positive(divergence) || !positive(d_tx) || !positive(d_rx) ||
      !positive(source_rate)) {
    throw InvalidInput("GeoParams: altitude, divergence, apertures and source rate must be > 0");
  }
  if (!(p_d >= 0.0 && p_d <= 1.0)) throw InvalidInput("GeoParams: p_d must lie in [0,1]");
  if (!(atm_transmittance > 0.0 && atm_transmittance <= 1.0)) {
    throw InvalidInput("GeoParams: atm_transmittance must lie in (0,1]");
  }
}

double geo_channel_transmittance(const GeoParams& g) {
  g.validate();
  const double footprint = g.divergence * g.altitude;
  const double capture = std::min(1.0, (g.d_rx / footprint) * (g.d_rx / footprint));
  return capture * g.atm_transmittance;
}

double geo_asymptotic_key_rate(const GeoParams& g, const SystemParams& p) {
  const double eta = geo_channel_transmittance(g) * p.eta_det;
  const double alpha = real_click_fraction(eta, g.p_d).value;
  const double coherent = alpha * alpha;
  const double e = coherent * p.eps_m + 0.5 * (1.0 - coherent);
  const double coincidences = g.source_rate * eta * eta;
  const double fraction = 1.0 - binary_entropy(e) - p.f_e * binary_entropy(e);
  return 0.5 * coincidences * std::max(0.0, fraction);
}

AnnualComparison annual_comparison(double key_per_pass, double geo_rate, double flyovers,
                                   double seconds_per_year) {
  if (!(key_per_pass >= 0.0) || !(geo_rate >= 0.0) || !(flyovers >= 0.0) ||
      !(seconds_per_year >= 0.0)) {
    throw InvalidInput("annual_comparison: inputs must be >= 0");
  }
  AnnualComparison c;
  c.flyover_pairs_per_year = flyovers;
  c.key_per_pass = key_per_pass;
  c.annual_key_2qm = key_per_pass * flyovers;
  c.annual_key_geo = geo_rate * seconds_per_year;
  if (c.annual_key_geo > 0.0) {
    c.gain_ratio = c.annual_key_2qm / c.annual_key_geo;
  } else {
    c.gain_ratio = std::numeric_limits<double>::infinity();
    c.gain_infinite = true;
  }
  return c;
}

}  // namespace satqr
