#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satqr/keyrate.hpp"
#include "satqr/link_model.hpp"
#include "satqr/params.hpp"
#include "satqr/yield.hpp"

namespace satqr {

struct TrialConfig {
  std::uint64_t n_emissions_per_pass = 1'000'000;
  double loss_db = 30.0;
  SystemParams params;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> qm1_cap;
  std::optional<std::uint64_t> qm2_cap;
  // Emission slots a QM2 mode stays occupied while the click/no-click signal
  // travels back from the ground (s * 2L/c). 0 behaves like 1.
  std::uint64_t qm2_hold_slots = 0;
  Scheme scheme = Scheme::two_memory;
  // Worker threads for per-emission sampling; 0 picks hardware concurrency.
  unsigned threads = 0;
};

struct SimOutcome {
  Scheme scheme = Scheme::two_memory;
  BasisCounts counts;              // integral values
  std::uint64_t errors_z = 0;
  std::uint64_t errors_x = 0;
  double empirical_e_z = 0.0;
  double empirical_e_x = 0.0;
  std::uint64_t heralded_a = 0;    // photons held in QM1 after pass A
  std::uint64_t heralded_b = 0;    // pass-B heralds (two-memory) or B detections (one-memory)
  std::uint64_t swapped = 0;       // successful BSMs (two-memory only)
  std::uint64_t peak_qm1_occupancy = 0;
  std::uint64_t peak_qm2_occupancy = 0;
  std::uint64_t dropped_capacity = 0;

  bool operator==(const SimOutcome&) const = default;
};

/// Event-level Monte Carlo of one pair of passes.
///
/// Each emission samples signal arrival (probability eta) and a spurious
/// click in each of the two detectors (probability p_d). A click whose photon
/// arrived without a spurious click in the opposite detector is "real";
/// everything else yields a uniformly random bit. Pass A fills QM1 (up to
/// qm1_cap, excess heralds counted in dropped_capacity). In the two-memory
/// scheme pass B buffers every emission in QM2 for qm2_hold_slots, pairs each
/// herald with the oldest unused QM1 mode and runs a BSM that succeeds with
/// probability 1/2. In the one-memory scheme every stored photon is released
/// towards B instead. Bases are chosen independently and uniformly at both
/// ends; mismatched rounds are sifted out.
///
/// The result depends only on the config: serial and threaded runs with the
/// same seed are identical.
SimOutcome simulate_protocol(const TrialConfig& cfg);

struct ZScores {
  double n_z = 0.0;
  double n_x = 0.0;
  double e_z = 0.0;
  double e_x = 0.0;
};

struct ValidationReport {
  ZScores z;
  double expected_n_z = 0.0;
  double expected_n_x = 0.0;
  double expected_e_z = 0.0;
  double expected_e_x = 0.0;
  bool flagged = false;             // any |z| > flag_threshold
  double flag_threshold = 4.0;
  std::vector<std::string> flags;   // names of the offending statistics

  // True when every |z| <= bound.
  bool within(double bound) const;
};

/// Compares a simulated outcome with the analytic counts and error rates.
/// Count z-scores use binomial error bars over the emissions per pass;
/// error-rate z-scores use sqrt(e (1 - e) / n) with the simulated n.
/// The estimate must describe the same scheme and emission count.
ValidationReport validate_against_analytic(const SimOutcome& outcome, const YieldEstimate& est,
                                           const QberPair& q);

}  // namespace satqr
