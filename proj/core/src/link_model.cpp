#include "satqr/link_model.hpp"

#include <cmath>
#include <string>

#include "satqr/diagnostics.hpp"
#include "satqr/errors.hpp"

namespace satqr {
namespace {

void require_prob(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidInput(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
  }
}

}  // namespace

double db_to_linear(double loss_db) {
  if (!(loss_db >= 0.0)) {
    throw InvalidInput("loss_db must be >= 0 (negative loss is gain), got " +
                       std::to_string(loss_db));
  }
  return std::pow(10.0, -loss_db / 10.0);
}

double linear_to_db(double transmittance) {
  if (!(transmittance > 0.0 && transmittance <= 1.0)) {
    throw InvalidInput("transmittance must lie in (0,1], got " + std::to_string(transmittance));
  }
  return -10.0 * std::log10(transmittance);
}

double incoherent_click_prob(const SystemParams& p, double eta_ch) {
  require_prob(eta_ch, "eta_ch");
  if (p.p_d_total) return *p.p_d_total;
  return clamp_probability(eta_ch * p.p_n + p.p_bg + p.p_dc, "incoherent_click_prob");
}

double click_probability(double eta, double p_d) {
  const double miss = 1.0 - p_d;
  return clamp_probability(1.0 - (1.0 - eta) * miss * miss, "click_probability");
}

ClickFraction real_click_fraction(double eta, double p_d) {
  require_prob(eta, "eta");
  require_prob(p_d, "p_d");
  const double denom = 1.0 - (1.0 - eta) * (1.0 - p_d) * (1.0 - p_d);
  if (denom <= 0.0) return {0.0, false};
  return {clamp_probability(eta * (1.0 - p_d) / denom, "real_click_fraction"), true};
}

LinkBudget link_budget(const SystemParams& p, double loss_db, Arm arm) {
  LinkBudget lb;
  lb.loss_db = loss_db;
  lb.arm = arm;
  lb.eta_ch = db_to_linear(loss_db);
  lb.eta = lb.eta_ch * p.eta_det;
  if (arm == Arm::with_memory) lb.eta *= p.eta_mem;
  lb.p_d = incoherent_click_prob(p, lb.eta_ch);
  const ClickFraction a = real_click_fraction(lb.eta, lb.p_d);
  lb.alpha = a.value;
  lb.clicks_possible = a.clicks_possible;
  return lb;
}

double combined_dephasing(double e_m1, double e_m2) {
  require_prob(e_m1, "e_m1");
  require_prob(e_m2, "e_m2");
  return clamp_probability(e_m1 * (1.0 - e_m2) + (1.0 - e_m1) * e_m2, "combined_dephasing");
}

QberPair qber_two_memory(double alpha_a, double alpha_b, const SystemParams& p) {
  require_prob(alpha_a, "alpha_a");
  require_prob(alpha_b, "alpha_b");
  const double coherent = p.lambda_bsm * alpha_a * alpha_b;
  const double noise = 0.5 * (1.0 - coherent);
  const double eps_dp = combined_dephasing(p.e_m, p.e_m);
  QberPair q;
  q.scheme = Scheme::two_memory;
  q.e_x = clamp_probability(
      coherent * (p.eps_m * (1.0 - eps_dp) + (1.0 - p.eps_m) * eps_dp) + noise, "qber_two_memory");
  q.e_z = clamp_probability(coherent * p.eps_m + noise, "qber_two_memory");
  return q;
}

QberPair qber_one_memory(double alpha_a, double alpha_b, const SystemParams& p) {
  require_prob(alpha_a, "alpha_a");
  require_prob(alpha_b, "alpha_b");
  const double coherent = alpha_a * alpha_b;
  const double noise = 0.5 * (1.0 - coherent);
  const double eps_dp = combined_dephasing(p.e_m, 0.0);
  QberPair q;
  q.scheme = Scheme::one_memory;
  double e_x = coherent * (p.eps_m * (1.0 - eps_dp) + eps_dp * (1.0 - p.eps_m));
  if (p.one_memory_ex_noise_term) e_x += noise;
  q.e_x = clamp_probability(e_x, "qber_one_memory");
  q.e_z = clamp_probability(coherent * p.eps_m + noise, "qber_one_memory");
  return q;
}

double bsm_fidelity(double lambda_bsm) {
  require_prob(lambda_bsm, "lambda_bsm");
  return std::sqrt((3.0 * lambda_bsm + 1.0) / 4.0);
}

}  // namespace satqr
