#pragma once

// Analytic front-end operations: single points, parameter sweeps, scheme
// crossover, noise tolerance and memory reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satqr/keyrate.hpp"
#include "satqr/link_model.hpp"
#include "satqr/params.hpp"
#include "satqr/yield.hpp"

namespace satqr {

// Full analytic chain at one loss value.
struct PointResult {
  double loss_db = 0.0;
  Scheme scheme = Scheme::two_memory;
  LinkBudget arm_a;
  LinkBudget arm_b;
  YieldEstimate yield;
  QberPair qber;
  KeyResult finite;
  KeyResult asymptotic;

  const KeyResult& key(KeyMode m) const { return m == KeyMode::finite ? finite : asymptotic; }
};

PointResult analyze_point(const SystemParams& p, double loss_db, Scheme scheme);

enum class SweepVariable { loss_db, p_d_total, e_m };

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view s);

struct SweepSpec {
  SweepVariable variable = SweepVariable::loss_db;
  double start = 20.0;
  double stop = 45.0;
  double step = 0.5;
  std::vector<Scheme> schemes{Scheme::two_memory};
  std::vector<KeyMode> modes{KeyMode::finite};
  // Channel loss held fixed when sweeping p_d_total or e_m.
  double fixed_loss_db = 30.0;

  void validate() const;
  // start + i*step for i = 0.. while <= stop (with 1e-9 relative slack).
  std::vector<double> grid() const;
};

struct SweepRow {
  double variable = 0.0;
  Scheme scheme = Scheme::two_memory;
  KeyMode mode = KeyMode::finite;
  double n_z = 0.0;
  double n_x = 0.0;
  double e_z = 0.0;
  double e_x = 0.0;
  double l_z = 0.0;
  double l_x = 0.0;
  double l_total = 0.0;
  double r_per_pair = 0.0;

  bool operator==(const SweepRow&) const = default;
};

SweepRow make_row(double variable, const PointResult& r, KeyMode mode);

/// Rows ordered by grid index, then scheme, then mode.
/// Grid points are evaluated in parallel.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SystemParams& p);

/// Loss at which the finite key rate per received pair of the two schemes
/// coincide, located by bisection to `tolerance_db`. Throws NoResult when
/// R(2QM) - R(1QM) has the same sign at both ends of [lo, hi].
double find_crossover(const SystemParams& p, double lo_db, double hi_db,
                      double tolerance_db = 0.01);

struct PdGrid {
  double start = 1e-7;
  double stop = 1e-4;
  std::size_t points = 31;
  bool log_spaced = true;

  std::vector<double> values() const;
};

/// Key versus total incoherent click probability at fixed loss. The p_d
/// override replaces the composed noise budget; eta is unchanged.
std::vector<SweepRow> noise_sweep(const SystemParams& p, double loss_db, const PdGrid& grid,
                                  const std::vector<Scheme>& schemes,
                                  const std::vector<KeyMode>& modes = {KeyMode::finite});

/// Largest p_d that still leaves a positive key at `loss_db`, by bisection on
/// [0, 0.5]. Returns 0 if there is no key even without noise.
double max_tolerable_pd(const SystemParams& p, double loss_db, Scheme scheme,
                        KeyMode mode = KeyMode::finite);

/// Last point on the loss grid [lo, hi] (step) with positive key, if any.
std::optional<double> loss_threshold(const SystemParams& p, Scheme scheme, KeyMode mode,
                                     double lo_db, double hi_db, double step_db);

// Reference QM1 capacity estimate for 30 dB, 60 % memory, 80 % detector efficiency.
inline constexpr double kReferenceQm1Modes = 2e6;

struct AfcInputs {
  std::uint64_t n_afc = 600;
  std::uint64_t n_f = 1000;
  std::uint64_t n_s = 10000;
};

struct MemoryReport {
  double loss_db = 0.0;
  double slant_range = 0.0;
  MemoryBudget budget;
  double n_heralded_a = 0.0;
  double reference_qm1 = kReferenceQm1Modes;
  double reference_ratio = 0.0;     // reference_qm1 / n_qm1 (0 when n_qm1 = 0)
  bool afc_sufficient = false;      // afc.n_total >= n_qm1
  std::string note;
};

MemoryReport memory_report(const SystemParams& p, double loss_db, double slant_range,
                           const AfcInputs& afc = {});

}  // namespace satqr
