#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle/brute_force.hpp"
#include "satqr/errors.hpp"
#include "satqr/yield.hpp"

using namespace satqr;
using doctest::Approx;

namespace {

SystemParams lossless() {
  SystemParams p;
  p.eta_det = p.eta_mem = 1.0;
  p.p_n = p.p_bg = p.p_dc = 0.0;
  return p;
}

}  // namespace

TEST_SUITE("yield") {

TEST_CASE("two-memory counts") {
  const SystemParams ideal = lossless();
  const YieldEstimate l = expected_counts_two_memory(ideal, 0.0);
  CHECK(l.counts.n_z == Approx(ideal.s * ideal.t_pass / 8));
  CHECK(l.counts.n_x == l.counts.n_z);

  const YieldEstimate e = expected_counts_two_memory(SystemParams{}, 30.0);
  CHECK(e.n_heralded_a == Approx(580173.9918886239).epsilon(1e-10));
  CHECK(e.counts.n_z == Approx(72521.74898607799).epsilon(1e-10));
  CHECK(e.counts.n_x == e.counts.n_z);
  CHECK(e.n_swapped <= std::min(e.n_heralded_a, e.n_heralded_b));
  CHECK(e.counts.n_z + e.counts.n_x == Approx(e.n_swapped / 2));
  CHECK(e.scheme == Scheme::two_memory);
}

TEST_CASE("ten more dB costs a factor ten in two-memory counts") {
  SystemParams p;
  p.p_n = p.p_bg = p.p_dc = 0.0;
  for (double db = 10; db <= 45; db += 2.5) {
    const double ratio = expected_counts_two_memory(p, db).counts.n_z /
                         expected_counts_two_memory(p, db + 10).counts.n_z;
    CHECK(ratio == Approx(10.0).epsilon(0.02));
  }
  // With default noise the scaling holds until incoherent heralds matter.
  p = SystemParams{};
  for (double db = 10; db <= 22.5; db += 2.5) {
    const double ratio = expected_counts_two_memory(p, db).counts.n_z /
                         expected_counts_two_memory(p, db + 10).counts.n_z;
    CHECK(ratio == Approx(10.0).epsilon(0.02));
  }
}

TEST_CASE("one-memory counts") {
  const SystemParams ideal = lossless();
  CHECK(expected_counts_one_memory(ideal, 0.0).counts.n_z ==
        Approx(ideal.s * ideal.t_pass / 4));
  const YieldEstimate e = expected_counts_one_memory(SystemParams{}, 28.0);
  CHECK(e.counts.n_z == Approx(292.2029508780074).epsilon(1e-10));
  CHECK(e.counts.n_x == e.counts.n_z);
  CHECK(e.n_swapped == 0.0);
  CHECK(e.scheme == Scheme::one_memory);
}

TEST_CASE("two-memory advantage grows as 1/eta_ch") {
  const SystemParams p;
  const auto advantage = [&](double db) {
    return expected_counts_two_memory(p, db).counts.n_z /
           expected_counts_one_memory(p, db).counts.n_z;
  };
  for (double db = 10; db <= 30; db += 5) {
    CHECK(advantage(db + 10) / advantage(db) == Approx(10.0).epsilon(0.03));
  }
}

TEST_CASE("count scaling slopes over 15-35 dB") {
  const SystemParams p;
  std::vector<double> x, y2, y1;
  for (double db = 15; db <= 35 + 1e-9; db += 0.5) {
    x.push_back(db);
    y2.push_back(std::log10(expected_counts_two_memory(p, db).counts.n_z));
    y1.push_back(std::log10(expected_counts_one_memory(p, db).counts.n_z));
  }
  CHECK(oracle::slope(x, y2) == Approx(-0.100).epsilon(0.05));
  CHECK(std::abs(oracle::slope(x, y2) + 0.100) <= 0.005);
  CHECK(std::abs(oracle::slope(x, y1) + 0.200) <= 0.005);
}

TEST_CASE("counts never increase with loss") {
  const SystemParams p;
  double prev2 = INFINITY, prev1 = INFINITY;
  for (double db = 0; db <= 60; db += 0.25) {
    const double n2 = expected_counts_two_memory(p, db).counts.n_z;
    const double n1 = expected_counts_one_memory(p, db).counts.n_z;
    CHECK(n2 <= prev2);
    CHECK(n1 <= prev1);
    prev2 = n2;
    prev1 = n1;
  }
}

TEST_CASE("QM1 capacity") {
  YieldEstimate e;
  e.counts = {72500, 72500};
  CHECK(qm1_capacity(e) == 580000);
  e.counts = {0, 0};
  CHECK(qm1_capacity(e) == 0);
  e.scheme = Scheme::one_memory;
  CHECK_THROWS_AS(qm1_capacity(e), InvalidInput);

  const YieldEstimate ref = expected_counts_two_memory(SystemParams{}, 30.0);
  CHECK(qm1_capacity(ref) == 580174);
}

TEST_CASE("QM1 capacity equals the heralded count rounded up") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    SystemParams p;
    p.s = 1e5 + 1e7 * u(gen);
    p.t_pass = 10 + 500 * u(gen);
    p.eta_mem = 0.1 + 0.9 * u(gen);
    const YieldEstimate e = expected_counts_two_memory(p, 60 * u(gen));
    const double h = e.n_heralded_a;
    const auto cap = qm1_capacity(e);
    const double nearest = std::round(h);
    if (std::abs(h - nearest) <= 1e-9 * std::max(1.0, nearest)) {
      CHECK(cap == static_cast<std::uint64_t>(nearest));
    } else {
      CHECK(cap == static_cast<std::uint64_t>(std::ceil(h)));
    }
  }
}

TEST_CASE("QM2 buffer") {
  const SystemParams p;
  CHECK(qm2_buffer(p, {2.0e6, kSpeedOfLight}) == 66713);
  CHECK(qm2_buffer(p, {0.0, kSpeedOfLight}) == 0);
  for (double range = 500e3; range <= 2990e3; range += 10e3) {
    const auto n = qm2_buffer(p, {range, kSpeedOfLight});
    CHECK(n >= 10000);
    CHECK(n <= 100000);
  }
  CHECK_THROWS_AS(qm2_buffer(p, {-1.0, kSpeedOfLight}), InvalidInput);
}

TEST_CASE("AFC capacity") {
  CHECK(afc_capacity(600, 1, 1).n_t == 100);
  const AfcModes m = afc_capacity(600, 1000, 10000);
  CHECK(m.n_total == 1000000000ULL);
  CHECK(m.n_total == m.n_t * m.n_f * m.n_s);
  CHECK(afc_capacity(5, 10, 10).n_t == 0);
  CHECK(afc_capacity(5, 10, 10).n_total == 0);
  CHECK_THROWS_AS(afc_capacity(0, 1, 1), InvalidInput);
}

}  // TEST_SUITE
