#include "satqr/yield.hpp"

#include <algorithm>
#include <cmath>

#include "satqr/errors.hpp"
#include "satqr/link_model.hpp"

namespace satqr {
namespace {

// ceil() that ignores floating-point residue just above an integer.
std::uint64_t ceil_count(double x) {
  if (!(x > 0.0)) return 0;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

YieldEstimate expected_counts_two_memory(const SystemParams& p, double loss_db,
                                         double emissions_per_pass) {
  const LinkBudget lb = link_budget(p, loss_db, Arm::with_memory);
  const double herald = click_probability(lb.eta, lb.p_d);

  YieldEstimate est;
  est.scheme = Scheme::two_memory;
  est.emissions_per_pass = emissions_per_pass;
  est.n_heralded_a = emissions_per_pass * herald;
  est.n_heralded_b = est.n_heralded_a;  // identical passes
  // 1/2 BSM success, then 1/2 basis match and 1/2 Z/X split.
  est.n_swapped = 0.5 * std::min(est.n_heralded_a, est.n_heralded_b);
  est.counts.n_z = est.n_swapped / 4.0;
  est.counts.n_x = est.n_swapped / 4.0;
  return est;
}

YieldEstimate expected_counts_one_memory(const SystemParams& p, double loss_db,
                                         double emissions_per_pass) {
  const LinkBudget a = link_budget(p, loss_db, Arm::direct);
  const LinkBudget b = link_budget(p, loss_db, Arm::with_memory);

  YieldEstimate est;
  est.scheme = Scheme::one_memory;
  est.emissions_per_pass = emissions_per_pass;
  est.n_heralded_a = emissions_per_pass * click_probability(a.eta, a.p_d);
  est.n_heralded_b = est.n_heralded_a * click_probability(b.eta, b.p_d);
  est.n_swapped = 0.0;
  est.counts.n_z = est.n_heralded_b / 4.0;
  est.counts.n_x = est.n_heralded_b / 4.0;
  return est;
}

YieldEstimate expected_counts_two_memory(const SystemParams& p, double loss_db) {
  return expected_counts_two_memory(p, loss_db, p.s * p.t_pass);
}

YieldEstimate expected_counts_one_memory(const SystemParams& p, double loss_db) {
  return expected_counts_one_memory(p, loss_db, p.s * p.t_pass);
}

YieldEstimate expected_counts(Scheme scheme, const SystemParams& p, double loss_db) {
  return scheme == Scheme::two_memory ? expected_counts_two_memory(p, loss_db)
                                      : expected_counts_one_memory(p, loss_db);
}

std::uint64_t qm1_capacity(const YieldEstimate& est) {
  if (est.scheme != Scheme::two_memory) {
    throw InvalidInput("qm1_capacity applies to two-memory estimates only");
  }
  return ceil_count(4.0 * (est.counts.n_z + est.counts.n_x));
}

std::uint64_t qm2_buffer(const SystemParams& p, const PassGeometry& g) {
  if (!(g.slant_range >= 0.0) || !(g.light_speed > 0.0)) {
    throw InvalidInput("slant_range must be >= 0 and light_speed > 0");
  }
  return ceil_count(p.s * 2.0 * g.slant_range / g.light_speed);
}

AfcModes afc_capacity(std::uint64_t n_afc, std::uint64_t n_f, std::uint64_t n_s) {
  if (n_afc == 0 || n_f == 0 || n_s == 0) throw InvalidInput("AFC mode counts must be positive");
  AfcModes m;
  m.n_t = n_afc / 6;
  m.n_f = n_f;
  m.n_s = n_s;
  m.n_total = m.n_t * m.n_f * m.n_s;
  return m;
}

}  // namespace satqr
