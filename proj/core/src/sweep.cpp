#include "satqr/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "parallel.hpp"
#include "satqr/errors.hpp"

namespace satqr {

PointResult analyze_point(const SystemParams& p, double loss_db, Scheme scheme) {
  PointResult r;
  r.loss_db = loss_db;
  r.scheme = scheme;
  if (scheme == Scheme::two_memory) {
    r.arm_a = link_budget(p, loss_db, Arm::with_memory);
    r.arm_b = r.arm_a;
    r.yield = expected_counts_two_memory(p, loss_db);
    r.qber = qber_two_memory(r.arm_a.alpha, r.arm_b.alpha, p);
  } else {
    r.arm_a = link_budget(p, loss_db, Arm::direct);
    r.arm_b = link_budget(p, loss_db, Arm::with_memory);
    r.yield = expected_counts_one_memory(p, loss_db);
    r.qber = qber_one_memory(r.arm_a.alpha, r.arm_b.alpha, p);
  }
  r.finite = total_key(r.yield.counts, r.qber, p);
  r.asymptotic = asymptotic_key(r.yield.counts, r.qber, p);
  return r;
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::loss_db: return "loss_db";
    case SweepVariable::p_d_total: return "p_d_total";
    case SweepVariable::e_m: return "e_m";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view s) {
  if (s == "loss_db") return SweepVariable::loss_db;
  if (s == "p_d_total") return SweepVariable::p_d_total;
  if (s == "e_m") return SweepVariable::e_m;
  throw InvalidInput("unknown sweep variable '" + std::string(s) +
                     "' (expected loss_db, p_d_total or e_m)");
}

void SweepSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start <= stop)) {
    throw InvalidInput("sweep requires finite start <= stop");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidInput("sweep step must be > 0");
  if (schemes.empty()) throw InvalidInput("sweep needs at least one scheme");
  if (modes.empty()) throw InvalidInput("sweep needs at least one mode");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  const double span = (stop - start) / step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = start + static_cast<double>(i) * step;
  return g;
}

SweepRow make_row(double variable, const PointResult& r, KeyMode mode) {
  const KeyResult& k = r.key(mode);
  SweepRow row;
  row.variable = variable;
  row.scheme = r.scheme;
  row.mode = mode;
  row.n_z = r.yield.counts.n_z;
  row.n_x = r.yield.counts.n_x;
  row.e_z = r.qber.e_z;
  row.e_x = r.qber.e_x;
  row.l_z = k.l_z;
  row.l_x = k.l_x;
  row.l_total = k.l_total;
  row.r_per_pair = k.r_per_pair;
  return row;
}

namespace {

// Evaluates `points` grid values; rows for point i occupy a fixed block so
// the output order is independent of scheduling.
template <class Configure>
std::vector<SweepRow> evaluate_grid(const std::vector<double>& values,
                                    const std::vector<Scheme>& schemes,
                                    const std::vector<KeyMode>& modes, Configure&& configure) {
  if (values.empty()) throw InvalidInput("empty sweep grid");
  const std::size_t per_point = schemes.size() * modes.size();
  std::vector<SweepRow> rows(values.size() * per_point);
  detail::parallel_for(values.size(), 0, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SystemParams p;
      double loss_db = 0.0;
      configure(values[i], p, loss_db);
      std::size_t k = i * per_point;
      for (const Scheme s : schemes) {
        const PointResult r = analyze_point(p, loss_db, s);
        for (const KeyMode m : modes) rows[k++] = make_row(values[i], r, m);
      }
    }
  });
  return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SystemParams& base) {
  const std::vector<double> values = spec.grid();
  base.validate();
  // Reject bad grid values up front rather than from worker threads.
  for (const double v : values) {
    SystemParams p = base;
    if (spec.variable == SweepVariable::p_d_total) p.p_d_total = v;
    if (spec.variable == SweepVariable::e_m) p.e_m = v;
    p.validate();
    const double loss = spec.variable == SweepVariable::loss_db ? v : spec.fixed_loss_db;
    if (!(loss >= 0.0)) throw InvalidInput("loss_db must be >= 0");
  }
  return evaluate_grid(values, spec.schemes, spec.modes,
                       [&](double v, SystemParams& p, double& loss_db) {
                         p = base;
                         loss_db = spec.fixed_loss_db;
                         switch (spec.variable) {
                           case SweepVariable::loss_db: loss_db = v; break;
                           case SweepVariable::p_d_total: p.p_d_total = v; break;
                           case SweepVariable::e_m: p.e_m = v; break;
                         }
                       });
}

namespace {

struct RateGap {
  double diff;
  bool any_key;
};

RateGap rate_difference(const SystemParams& p, double loss_db) {
  const double two = analyze_point(p, loss_db, Scheme::two_memory).finite.r_per_pair;
  const double one = analyze_point(p, loss_db, Scheme::one_memory).finite.r_per_pair;
  return {two - one, two > 0.0 || one > 0.0};
}

constexpr double kDeadZoneStep = 0.1;

std::string format_db(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

double find_crossover(const SystemParams& p, double lo_db, double hi_db, double tolerance_db) {
  if (!(lo_db >= 0.0 && lo_db < hi_db)) throw InvalidInput("crossover needs 0 <= lo < hi");
  if (!(tolerance_db > 0.0)) throw InvalidInput("crossover tolerance must be > 0");
  p.validate();

  // Where neither scheme yields key the difference is zero without a crossing;
  // pull the upper end back to the last loss with any key.
  RateGap g_hi = rate_difference(p, hi_db);
  while (!g_hi.any_key) {
    hi_db -= kDeadZoneStep;
    if (hi_db <= lo_db) {
      throw NoResult("no crossover in range: neither scheme yields key above " +
                     format_db(lo_db) + " dB");
    }
    g_hi = rate_difference(p, hi_db);
  }
  const RateGap g_lo = rate_difference(p, lo_db);
  if (!g_lo.any_key) throw NoResult("no crossover in range: no key at " + format_db(lo_db) + " dB");
  double f_lo = g_lo.diff;
  const double f_hi = g_hi.diff;
  if (f_lo == 0.0) return lo_db;
  if (f_hi == 0.0) return hi_db;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NoResult("no crossover in range [" + format_db(lo_db) + ", " + format_db(hi_db) +
                   "] dB: " + (f_lo > 0.0 ? "2qm" : "1qm") + " dominates throughout");
  }
  while (hi_db - lo_db > tolerance_db) {
    const double mid = 0.5 * (lo_db + hi_db);
    const double f_mid = rate_difference(p, mid).diff;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo_db = mid;
      f_lo = f_mid;
    } else {
      hi_db = mid;
    }
  }
  return 0.5 * (lo_db + hi_db);
}

std::vector<double> PdGrid::values() const {
  if (points == 0) throw InvalidInput("p_d grid needs at least one point");
  if (!(start >= 0.0 && start <= stop && stop <= 1.0)) {
    throw InvalidInput("p_d grid needs 0 <= start <= stop <= 1");
  }
  if (log_spaced && !(start > 0.0)) throw InvalidInput("log-spaced p_d grid needs start > 0");
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = start;
    return v;
  }
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    v[i] = log_spaced ? start * std::pow(stop / start, t) : start + t * (stop - start);
  }
  v.back() = stop;
  return v;
}

std::vector<SweepRow> noise_sweep(const SystemParams& base, double loss_db, const PdGrid& grid,
                                  const std::vector<Scheme>& schemes,
                                  const std::vector<KeyMode>& modes) {
  base.validate();
  if (!(loss_db >= 0.0)) throw InvalidInput("loss_db must be >= 0");
  if (schemes.empty() || modes.empty()) throw InvalidInput("noise sweep needs schemes and modes");
  return evaluate_grid(grid.values(), schemes, modes,
                       [&](double v, SystemParams& p, double& loss) {
                         p = base;
                         p.p_d_total = v;
                         loss = loss_db;
                       });
}

double max_tolerable_pd(const SystemParams& base, double loss_db, Scheme scheme, KeyMode mode) {
  const auto has_key = [&](double pd) {
    SystemParams p = base;
    p.p_d_total = pd;
    return analyze_point(p, loss_db, scheme).key(mode).l_total > 0.0;
  };
  if (!has_key(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 0.5;
  if (has_key(hi)) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (has_key(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::optional<double> loss_threshold(const SystemParams& p, Scheme scheme, KeyMode mode,
                                     double lo_db, double hi_db, double step_db) {
  SweepSpec spec;
  spec.start = lo_db;
  spec.stop = hi_db;
  spec.step = step_db;
  spec.schemes = {scheme};
  spec.modes = {mode};
  std::optional<double> last;
  for (const SweepRow& row : run_sweep(spec, p)) {
    if (row.l_total > 0.0) last = row.variable;
  }
  return last;
}

MemoryReport memory_report(const SystemParams& p, double loss_db, double slant_range,
                           const AfcInputs& afc) {
  p.validate();
  MemoryReport r;
  r.loss_db = loss_db;
  r.slant_range = slant_range;
  const YieldEstimate est = expected_counts_two_memory(p, loss_db);
  r.n_heralded_a = est.n_heralded_a;
  r.budget.n_qm1 = qm1_capacity(est);
  r.budget.n_qm2 = qm2_buffer(p, PassGeometry{slant_range, kSpeedOfLight});
  r.budget.afc = afc_capacity(afc.n_afc, afc.n_f, afc.n_s);
  r.afc_sufficient = r.budget.afc.n_total >= r.budget.n_qm1;

  char buf[256];
  if (r.budget.n_qm1 == 0) {
    r.reference_ratio = 0.0;
    std::snprintf(buf, sizeof buf, "no heralded photons expected at %.6g dB", loss_db);
  } else {
    r.reference_ratio = r.reference_qm1 / static_cast<double>(r.budget.n_qm1);
    std::snprintf(buf, sizeof buf,
                  "QM1 capacity from N = 4(n_z + n_x) is %llu modes; the reference estimate "
                  "of %.3g modes (30 dB) is %.2fx larger and is not reproduced by this "
                  "counting model",
                  static_cast<unsigned long long>(r.budget.n_qm1), r.reference_qm1,
                  r.reference_ratio);
  }
  r.note = buf;
  return r;
}

}  // namespace satqr
