#include "satqr/params.hpp"

#include <cmath>
#include <string>

#include "satqr/diagnostics.hpp"
#include "satqr/errors.hpp"

namespace satqr {
namespace {

void require(bool ok, const char* field, const char* constraint) {
  if (!ok) throw InvalidInput(std::string(field) + " must satisfy " + constraint);
}

bool is_prob(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }
bool is_open_prob(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

}  // namespace

std::string_view to_string(Scheme s) { return s == Scheme::one_memory ? "1qm" : "2qm"; }

std::string_view to_string(KeyMode m) { return m == KeyMode::finite ? "finite" : "asymptotic"; }

std::string_view to_string(Arm a) { return a == Arm::direct ? "direct" : "with-memory"; }

Scheme parse_scheme(std::string_view s) {
  if (s == "1qm" || s == "one-memory") return Scheme::one_memory;
  if (s == "2qm" || s == "two-memory") return Scheme::two_memory;
  throw InvalidInput("unknown scheme '" + std::string(s) + "' (expected 1qm or 2qm)");
}

KeyMode parse_key_mode(std::string_view s) {
  if (s == "finite") return KeyMode::finite;
  if (s == "asymptotic") return KeyMode::asymptotic;
  throw InvalidInput("unknown mode '" + std::string(s) + "' (expected finite or asymptotic)");
}

double log_in_base(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

void SystemParams::validate() const {
  require(std::isfinite(s) && s > 0.0, "s", "s > 0");
  require(std::isfinite(t_pass) && t_pass > 0.0, "t_pass", "t_pass > 0");
  require(is_prob(eta_det), "eta_det", "0 <= eta_det <= 1");
  require(is_prob(eta_mem), "eta_mem", "0 <= eta_mem <= 1");
  require(is_prob(e_m), "e_m", "0 <= e_m <= 1");
  require(is_prob(eps_m), "eps_m", "0 <= eps_m <= 1");
  require(std::isfinite(delta) && delta >= 0.0 && delta < 1.0, "delta", "0 <= delta < 1");
  require(is_prob(lambda_bsm), "lambda_bsm", "0 <= lambda_bsm <= 1");
  require(std::isfinite(f_e) && f_e >= 1.0, "f_e", "f_e >= 1");
  require(std::isfinite(tau_win) && tau_win > 0.0, "tau_win", "tau_win > 0");
  require(is_prob(p_n), "p_n", "0 <= p_n <= 1");
  require(is_prob(p_bg), "p_bg", "0 <= p_bg <= 1");
  require(is_prob(p_dc), "p_dc", "0 <= p_dc <= 1");
  require(is_open_prob(eps_sec), "eps_sec", "0 < eps_sec < 1");
  require(is_open_prob(eps_corr), "eps_corr", "0 < eps_corr < 1");
  if (p_d_total) require(is_prob(*p_d_total), "p_d_total", "0 <= p_d_total <= 1");
}

double window_probability(double rate_hz, double tau_win) {
  if (!(rate_hz >= 0.0) || !(tau_win > 0.0)) {
    throw InvalidInput("window_probability: rate must be >= 0 and tau_win > 0");
  }
  return clamp_probability(rate_hz * tau_win, "window_probability");
}

}  // namespace satqr
