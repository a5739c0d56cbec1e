#pragma once

#include <cstdint>

#include "satqr/keyrate.hpp"
#include "satqr/params.hpp"

namespace satqr {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Expected event counts for one pair of passes.
///
/// Two-memory: n_heralded_a/b are photons stored and heralded in QM1/QM2,
/// n_swapped the successful BSM outcomes. One-memory: n_heralded_a is the
/// number of stored photons, n_heralded_b the number of them detected at B
/// (the coincidences), n_swapped is 0.
struct YieldEstimate {
  double n_heralded_a = 0.0;
  double n_heralded_b = 0.0;
  double n_swapped = 0.0;
  BasisCounts counts;
  Scheme scheme = Scheme::two_memory;
  double emissions_per_pass = 0.0;
};

YieldEstimate expected_counts_two_memory(const SystemParams& p, double loss_db);
YieldEstimate expected_counts_one_memory(const SystemParams& p, double loss_db);

// Same models for an explicit number of emissions per pass (used to compare
// against short simulations).
YieldEstimate expected_counts_two_memory(const SystemParams& p, double loss_db,
                                         double emissions_per_pass);
YieldEstimate expected_counts_one_memory(const SystemParams& p, double loss_db,
                                         double emissions_per_pass);

YieldEstimate expected_counts(Scheme scheme, const SystemParams& p, double loss_db);

struct PassGeometry {
  double slant_range = 2.0e6;  // m
  double light_speed = kSpeedOfLight;
};

struct AfcModes {
  std::uint64_t n_t = 0;
  std::uint64_t n_f = 0;
  std::uint64_t n_s = 0;
  std::uint64_t n_total = 0;
};

struct MemoryBudget {
  std::uint64_t n_qm1 = 0;
  std::uint64_t n_qm2 = 0;
  AfcModes afc;
};

/// QM1 modes needed to hold every heralded photon: ceil(4 (n_z + n_x)).
/// Two-memory estimates only.
std::uint64_t qm1_capacity(const YieldEstimate& est);

/// Modes in flight while waiting for the ground station's click signal:
/// ceil(s * 2 L / c).
std::uint64_t qm2_buffer(const SystemParams& p, const PassGeometry& g);

/// Atomic-frequency-comb multiplexing: n_afc / 6 temporal modes (floored),
/// times spectral and spatial channels.
AfcModes afc_capacity(std::uint64_t n_afc, std::uint64_t n_f, std::uint64_t n_s);

}  // namespace satqr
