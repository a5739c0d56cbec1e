#pragma once

#include <optional>
#include <string_view>

namespace satqr {

inline constexpr const char* kVersion = "0.1.0";

enum class Scheme { one_memory, two_memory };

// Whether the memory efficiency multiplies a downlink's detection probability.
enum class Arm { with_memory, direct };

enum class KeyMode { finite, asymptotic };

enum class LogBase { natural, binary };

std::string_view to_string(Scheme s);
std::string_view to_string(KeyMode m);
std::string_view to_string(Arm a);
Scheme parse_scheme(std::string_view s);
KeyMode parse_key_mode(std::string_view s);

double log_in_base(double x, LogBase base);

/// Full parameter record for one system configuration.
///
/// Default construction gives the reference parameter set: 5 MHz pair source,
/// 240 s passes, 60 % memory and 80 % detector efficiency, 2 % detector
/// imbalance, BSM ideality 0.98 and 5e-12 security parameters. Probabilities
/// marked "per window" refer to one detection window of length `tau_win`.
struct SystemParams {
  double s = 5e6;                   // pair-emission rate (Hz)
  double t_pass = 240.0;            // usable transmission time per ground station (s)
  double eta_det = 0.8;             // detector efficiency
  double eta_mem = 0.6;             // write-in times read-out efficiency
  double e_m = 0.05;                // per-memory dephasing probability
  double eps_m = 0.02;              // misalignment (includes source infidelity)
  double delta = 0.02;              // detector imbalance
  double lambda_bsm = 0.98;         // BSM ideality
  double f_e = 1.1;                 // error-correction inefficiency
  double tau_win = 200e-9;          // detection window (s)
  double p_n = 1e-3;                // memory noise per storage trial
  double p_bg = 6.4e-7;             // background click probability per window
  double p_dc = 1e-7;               // dark-count probability per window
  double eps_sec = 5e-12;
  double eps_corr = 5e-12;

  // Replaces the composed incoherent-click probability when set.
  std::optional<double> p_d_total;

  // Adds the 1/2 (1 - alpha_A alpha_B) incoherent term to the one-memory
  // X-basis error. Off keeps the one-memory expression without it.
  bool one_memory_ex_noise_term = false;

  LogBase deviation_log = LogBase::natural;   // log(1/eps_sec) in the tail term
  LogBase final_term_log = LogBase::binary;   // log(2/(eps_corr eps_sec^2))

  /// Throws InvalidInput naming the first offending field.
  void validate() const;
};

// Converts an externally supplied noise rate (Hz) to a per-window probability.
double window_probability(double rate_hz, double tau_win);

}  // namespace satqr
