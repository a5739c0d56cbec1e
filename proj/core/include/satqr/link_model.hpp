#pragma once

// Elementary closed-form quantities for one downlink: dB conversion,
// detection and incoherent-click probabilities, the real-click fraction,
// memory dephasing, basis error rates and BSM fidelity.

#include "satqr/params.hpp"

namespace satqr {

/// 10^(-loss_db/10). Negative loss (gain) is rejected.
double db_to_linear(double loss_db);

/// Inverse of db_to_linear; transmittance must be in (0, 1].
double linear_to_db(double transmittance);

/// Probability of any incoherent click in one window:
/// memory noise leaking through the channel, plus background, plus dark counts.
/// Honors SystemParams::p_d_total when set.
double incoherent_click_prob(const SystemParams& p, double eta_ch);

/// Probability that a window registers at least one click when a photon
/// arrives with probability `eta` and each of the two detectors fires
/// spuriously with probability `p_d`.
double click_probability(double eta, double p_d);

struct ClickFraction {
  double value = 0.0;
  // False when eta = p_d = 0, where the fraction is 0/0.
  bool clicks_possible = true;
};

/// Fraction of clicks caused by the signal photon with no spurious click in
/// the opposite detector: eta (1 - p_d) / (1 - (1 - eta)(1 - p_d)^2).
ClickFraction real_click_fraction(double eta, double p_d);

struct LinkBudget {
  double loss_db = 0.0;
  double eta_ch = 1.0;   // channel transmittance
  double eta = 1.0;      // total detection probability
  double p_d = 0.0;      // incoherent click probability per window
  double alpha = 1.0;    // real-click fraction
  bool clicks_possible = true;
  Arm arm = Arm::with_memory;
};

LinkBudget link_budget(const SystemParams& p, double loss_db, Arm arm);

/// e1 (1 - e2) + (1 - e1) e2: odd number of phase flips across two memories.
double combined_dephasing(double e_m1, double e_m2);

struct QberPair {
  double e_x = 0.0;
  double e_z = 0.0;
  Scheme scheme = Scheme::two_memory;
};

/// Error rates after swapping through two memories with a non-ideal BSM.
QberPair qber_two_memory(double alpha_a, double alpha_b, const SystemParams& p);

/// Error rates for the single stored photon scheme (no BSM).
QberPair qber_one_memory(double alpha_a, double alpha_b, const SystemParams& p);

/// sqrt((3 lambda + 1) / 4).
double bsm_fidelity(double lambda_bsm);

}  // namespace satqr
