#include <doctest.h>

#include <cmath>

#include "satqr/errors.hpp"
#include "satqr/geolink.hpp"
#include "satqr/link_model.hpp"

using namespace satqr;
using doctest::Approx;

TEST_SUITE("geolink") {

TEST_CASE("full capture is capped at the atmospheric transmittance") {
  GeoParams g;
  g.d_rx = g.divergence * g.altitude * 1.5;
  CHECK(geo_channel_transmittance(g) == g.atm_transmittance);
}

TEST_CASE("2.5 m receiver from GEO") {
  GeoParams g;
  g.atm_transmittance = 1.0;
  const double eta = geo_channel_transmittance(g);
  CHECK(eta == Approx(1.929012345679012e-4).epsilon(1e-12));
  CHECK(linear_to_db(eta) == Approx(37.14664992862537).epsilon(1e-10));

  GeoParams half = g;
  half.d_rx /= 2;
  CHECK(linear_to_db(geo_channel_transmittance(half)) - linear_to_db(eta) ==
        Approx(6.020599913279624).epsilon(1e-10));
}

TEST_CASE("transmittance monotonicity") {
  GeoParams g;
  double prev = 0;
  for (double d = 0.1; d <= 5.0; d += 0.1) {
    g.d_rx = d;
    const double eta = geo_channel_transmittance(g);
    CHECK(eta >= prev);
    prev = eta;
  }
  g = {};
  prev = 2;
  for (double alt = 1e7; alt <= 5e7; alt += 1e6) {
    g.altitude = alt;
    CHECK(geo_channel_transmittance(g) <= prev);
    prev = geo_channel_transmittance(g);
  }
  g = {};
  prev = 2;
  for (double th = 1e-6; th <= 2e-5; th += 1e-6) {
    g.divergence = th;
    CHECK(geo_channel_transmittance(g) <= prev);
    prev = geo_channel_transmittance(g);
  }
}

TEST_CASE("invalid GEO parameters") {
  GeoParams g;
  g.d_rx = 0;
  CHECK_THROWS_AS(geo_channel_transmittance(g), InvalidInput);
  g = {};
  g.atm_transmittance = 1.2;
  CHECK_THROWS_AS(g.validate(), InvalidInput);
}

TEST_CASE("GEO key rate") {
  GeoParams g;
  g.d_rx = 1000;  // full capture
  g.atm_transmittance = 1.0;
  g.p_d = 0.0;
  SystemParams p;
  p.eta_det = 1.0;
  p.eps_m = 0.0;
  CHECK(geo_asymptotic_key_rate(g, p) == Approx(g.source_rate / 2));

  GeoParams noisy;
  noisy.p_d = 1e-3;
  CHECK(geo_asymptotic_key_rate(noisy, SystemParams{}) == 0.0);

  CHECK(geo_asymptotic_key_rate(GeoParams{}, SystemParams{}) ==
        Approx(4.104081848922464).epsilon(1e-9));
}

TEST_CASE("GEO key rate is nonincreasing in p_d and nondecreasing in d_rx") {
  const SystemParams p;
  GeoParams g;
  double prev = INFINITY;
  for (double pd = 0; pd <= 1e-4; pd += 2e-6) {
    g.p_d = pd;
    const double r = geo_asymptotic_key_rate(g, p);
    CHECK(r <= prev);
    prev = r;
  }
  g = {};
  prev = 0;
  for (double d = 0.5; d <= 4.0; d += 0.05) {
    g.d_rx = d;
    const double r = geo_asymptotic_key_rate(g, p);
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("annual comparison") {
  AnnualComparison c = annual_comparison(1e4, 1.0);
  CHECK(c.annual_key_2qm == Approx(1.257e7));
  CHECK(c.annual_key_geo == Approx(3.156e7));
  CHECK(c.gain_ratio == Approx(1.257e7 / 3.156e7));
  CHECK(annual_comparison(1e4, 1.0, 0.0).annual_key_2qm == 0.0);

  c = annual_comparison(1e4, 0.0);
  CHECK(c.gain_infinite);
  CHECK(std::isinf(c.gain_ratio));

  const double base = annual_comparison(1e4, 0.5).gain_ratio;
  CHECK(annual_comparison(3e4, 0.5).gain_ratio == Approx(3 * base));
  CHECK(annual_comparison(1e4, 0.5, 2 * kFlyoverPairsPerYear).gain_ratio == Approx(2 * base));
  CHECK_THROWS_AS(annual_comparison(-1, 1), InvalidInput);
}

}  // TEST_SUITE
