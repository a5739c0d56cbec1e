#include "satqr/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "satqr/errors.hpp"

namespace satqr {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidInput("binary_entropy argument must lie in [0,1], got " + std::to_string(x));
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double phase_error_deviation(double n_main, double n_other, const SystemParams& p) {
  const double log_term = log_in_base(1.0 / p.eps_sec, p.deviation_log);
  return std::sqrt((n_main + 1.0) * log_term / (2.0 * n_other * (n_other + n_main)));
}

double security_overhead_bits(const SystemParams& p) {
  return log_in_base(2.0 / (p.eps_corr * p.eps_sec * p.eps_sec), p.final_term_log);
}

BasisKey finite_key_basis(double n_main, double n_other, double e_phase, double e_bit,
                          const SystemParams& p) {
  if (!(n_main >= 0.0) || !(n_other >= 0.0)) throw InvalidInput("basis counts must be >= 0");
  if (n_main == 0.0) return {0.0, KeyStatus::no_raw_key};
  if (n_other == 0.0) return {0.0, KeyStatus::no_statistics};

  const double phase = (e_phase + phase_error_deviation(n_main, n_other, p)) / (1.0 - p.delta);
  if (phase >= 0.5) return {0.0, KeyStatus::phase_error_overflow};

  const double bits = n_main - n_main * binary_entropy(phase) -
                      p.f_e * n_main * binary_entropy(e_bit) - n_main * p.delta -
                      security_overhead_bits(p);
  if (bits <= 0.0) return {0.0, KeyStatus::negative};
  return {bits, KeyStatus::ok};
}

BasisKey asymptotic_key_basis(double n_main, double e_phase, double e_bit, const SystemParams& p) {
  if (!(n_main >= 0.0)) throw InvalidInput("basis counts must be >= 0");
  if (n_main == 0.0) return {0.0, KeyStatus::no_raw_key};
  const double phase = e_phase / (1.0 - p.delta);
  if (phase >= 0.5) return {0.0, KeyStatus::phase_error_overflow};
  const double fraction =
      1.0 - binary_entropy(phase) - p.f_e * binary_entropy(e_bit) - p.delta;
  if (fraction <= 0.0) return {0.0, KeyStatus::negative};
  return {n_main * fraction, KeyStatus::ok};
}

namespace {

KeyResult combine(const BasisKey& z, const BasisKey& x, const BasisCounts& c, KeyMode mode) {
  KeyResult r;
  r.mode = mode;
  r.l_z = z.bits;
  r.l_x = x.bits;
  r.status_z = z.status;
  r.status_x = x.status;
  r.l_total = r.l_z + r.l_x;
  const double n = c.n_z + c.n_x;
  r.r_per_pair = n > 0.0 ? r.l_total / n : 0.0;
  return r;
}

}  // namespace

KeyResult total_key(const BasisCounts& counts, const QberPair& q, const SystemParams& p) {
  const BasisKey z = finite_key_basis(counts.n_z, counts.n_x, q.e_x, q.e_z, p);
  const BasisKey x = finite_key_basis(counts.n_x, counts.n_z, q.e_z, q.e_x, p);
  return combine(z, x, counts, KeyMode::finite);
}

KeyResult asymptotic_key(const BasisCounts& counts, const QberPair& q, const SystemParams& p) {
  const BasisKey z = asymptotic_key_basis(counts.n_z, q.e_x, q.e_z, p);
  const BasisKey x = asymptotic_key_basis(counts.n_x, q.e_z, q.e_x, p);
  return combine(z, x, counts, KeyMode::asymptotic);
}

}  // namespace satqr
