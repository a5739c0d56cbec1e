#include "satqr/simkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "parallel.hpp"
#include "satqr/errors.hpp"
#include "satqr/rng.hpp"

namespace satqr {
namespace {

constexpr std::uint64_t kStreamPassA = 1;
constexpr std::uint64_t kStreamPassB = 2;
constexpr std::uint64_t kStreamPair = 3;
constexpr std::uint64_t kStreamRelease = 4;

constexpr std::uint8_t kClick = 1;
constexpr std::uint8_t kReal = 2;

constexpr std::size_t kBatch = std::size_t{1} << 18;

// One detection window at a two-detector receiver.
std::uint8_t sample_window(SubstreamRng& rng, double eta, double p_d) {
  const bool photon = rng.bernoulli(eta);
  const bool spurious_same = rng.bernoulli(p_d);
  const bool spurious_other = rng.bernoulli(p_d);
  if (!photon && !spurious_same && !spurious_other) return 0;
  return (photon && !spurious_other) ? (kClick | kReal) : kClick;
}

// Fills flags[i] for emissions [first, first + flags.size()).
void sample_pass(std::vector<std::uint8_t>& flags, std::uint64_t first, const TrialConfig& cfg,
                 std::uint64_t stream, double eta, double p_d) {
  detail::parallel_for(flags.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SubstreamRng rng(cfg.seed, stream, first + i);
      flags[i] = sample_window(rng, eta, p_d);
    }
  });
}

struct Tally {
  std::uint64_t n_z = 0, n_x = 0, errors_z = 0, errors_x = 0;

  void add(const Tally& o) {
    n_z += o.n_z;
    n_x += o.n_x;
    errors_z += o.errors_z;
    errors_x += o.errors_x;
  }
};

// Sifting and error sampling for one coincidence. `coherent` means both
// detections were real and the swap (if any) was ideal.
void sift(SubstreamRng& rng, bool coherent, int memories, const SystemParams& p, Tally& t) {
  const bool alice_x = rng.bernoulli(0.5);
  const bool bob_x = rng.bernoulli(0.5);
  if (alice_x != bob_x) return;
  bool error;
  if (!coherent) {
    error = rng.bernoulli(0.5);
  } else if (!alice_x) {
    error = rng.bernoulli(p.eps_m);
  } else {
    error = rng.bernoulli(p.eps_m);
    for (int m = 0; m < memories; ++m) error ^= rng.bernoulli(p.e_m);
  }
  if (alice_x) {
    ++t.n_x;
    t.errors_x += error;
  } else {
    ++t.n_z;
    t.errors_z += error;
  }
}

// Pass A: heralded photons are kept in QM1 in arrival order.
std::vector<std::uint8_t> fill_qm1(const TrialConfig& cfg, double eta, double p_d,
                                   SimOutcome& out) {
  std::vector<std::uint8_t> qm1;
  std::vector<std::uint8_t> flags;
  const std::uint64_t cap = cfg.qm1_cap.value_or(std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t first = 0; first < cfg.n_emissions_per_pass; first += kBatch) {
    flags.resize(std::min<std::uint64_t>(kBatch, cfg.n_emissions_per_pass - first));
    sample_pass(flags, first, cfg, kStreamPassA, eta, p_d);
    for (const std::uint8_t f : flags) {
      if (!(f & kClick)) continue;
      if (qm1.size() < cap) {
        qm1.push_back(static_cast<std::uint8_t>((f & kReal) != 0));
      } else {
        ++out.dropped_capacity;
      }
    }
  }
  out.heralded_a = qm1.size();
  out.peak_qm1_occupancy = qm1.size();
  return qm1;
}

void run_two_memory(const TrialConfig& cfg, SimOutcome& out) {
  const SystemParams& p = cfg.params;
  const LinkBudget lb = link_budget(p, cfg.loss_db, Arm::with_memory);
  const std::vector<std::uint8_t> qm1 = fill_qm1(cfg, lb.eta, lb.p_d, out);

  const std::uint64_t hold = std::max<std::uint64_t>(1, cfg.qm2_hold_slots);
  const std::uint64_t cap2 = cfg.qm2_cap.value_or(std::numeric_limits<std::uint64_t>::max());
  std::vector<std::uint8_t> ring(std::min(hold, cfg.n_emissions_per_pass), 0);
  std::uint64_t occupancy = 0;
  std::uint64_t next_qm1 = 0;
  Tally tally;

  std::vector<std::uint8_t> flags;
  for (std::uint64_t first = 0; first < cfg.n_emissions_per_pass; first += kBatch) {
    flags.resize(std::min<std::uint64_t>(kBatch, cfg.n_emissions_per_pass - first));
    sample_pass(flags, first, cfg, kStreamPassB, lb.eta, lb.p_d);
    for (std::size_t i = 0; i < flags.size(); ++i) {
      const std::uint64_t j = first + i;
      // The mode written `hold` slots ago has received its herald decision.
      std::uint8_t& slot = ring[j % hold % ring.size()];
      if (j >= hold && slot) {
        slot = 0;
        --occupancy;
      }
      const bool buffered = occupancy < cap2;
      if (buffered) {
        slot = 1;
        ++occupancy;
        out.peak_qm2_occupancy = std::max(out.peak_qm2_occupancy, occupancy);
      }
      const std::uint8_t f = flags[i];
      if (!(f & kClick)) continue;
      if (!buffered) {
        ++out.dropped_capacity;
        continue;
      }
      ++out.heralded_b;
      if (next_qm1 >= qm1.size()) continue;
      const std::uint64_t pair = next_qm1++;
      SubstreamRng rng(cfg.seed, kStreamPair, pair);
      if (!rng.bernoulli(0.5)) continue;
      ++out.swapped;
      const bool both_real = qm1[pair] && (f & kReal);
      const bool coherent = both_real && rng.bernoulli(p.lambda_bsm);
      sift(rng, coherent, 2, p, tally);
    }
  }
  out.counts = {static_cast<double>(tally.n_z), static_cast<double>(tally.n_x)};
  out.errors_z = tally.errors_z;
  out.errors_x = tally.errors_x;
}

void run_one_memory(const TrialConfig& cfg, SimOutcome& out) {
  const SystemParams& p = cfg.params;
  const LinkBudget a = link_budget(p, cfg.loss_db, Arm::direct);
  const LinkBudget b = link_budget(p, cfg.loss_db, Arm::with_memory);
  const std::vector<std::uint8_t> qm1 = fill_qm1(cfg, a.eta, a.p_d, out);

  // Every stored photon is released towards B; modes are independent.
  const unsigned workers = detail::resolve_threads(cfg.threads);
  std::vector<Tally> tallies(workers);
  std::vector<std::uint64_t> detections(workers, 0);
  const std::size_t chunk = (qm1.size() + workers - 1) / std::max<std::size_t>(workers, 1);
  detail::parallel_for(workers, workers, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(qm1.size(), begin + chunk);
      for (std::size_t k = begin; k < end; ++k) {
        SubstreamRng rng(cfg.seed, kStreamRelease, k);
        const std::uint8_t f = sample_window(rng, b.eta, b.p_d);
        if (!(f & kClick)) continue;
        ++detections[w];
        sift(rng, qm1[k] && (f & kReal), 1, p, tallies[w]);
      }
    }
  });
  Tally tally;
  for (unsigned w = 0; w < workers; ++w) {
    tally.add(tallies[w]);
    out.heralded_b += detections[w];
  }
  out.counts = {static_cast<double>(tally.n_z), static_cast<double>(tally.n_x)};
  out.errors_z = tally.errors_z;
  out.errors_x = tally.errors_x;
}

double ratio(std::uint64_t num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

SimOutcome simulate_protocol(const TrialConfig& cfg) {
  if (cfg.n_emissions_per_pass == 0) throw InvalidInput("n_emissions_per_pass must be > 0");
  cfg.params.validate();

  SimOutcome out;
  out.scheme = cfg.scheme;
  if (cfg.scheme == Scheme::two_memory) {
    run_two_memory(cfg, out);
  } else {
    run_one_memory(cfg, out);
  }
  out.empirical_e_z = ratio(out.errors_z, out.counts.n_z);
  out.empirical_e_x = ratio(out.errors_x, out.counts.n_x);
  return out;
}

bool ValidationReport::within(double bound) const {
  return std::abs(z.n_z) <= bound && std::abs(z.n_x) <= bound && std::abs(z.e_z) <= bound &&
         std::abs(z.e_x) <= bound;
}

namespace {

double z_score(double observed, double expected, double variance) {
  if (variance > 0.0) return (observed - expected) / std::sqrt(variance);
  return observed == expected ? 0.0 : std::numeric_limits<double>::infinity();
}

double count_z(double observed, double expected, double trials) {
  const double p = trials > 0.0 ? expected / trials : 0.0;
  return z_score(observed, expected, expected * (1.0 - p));
}

double rate_z(double observed, double expected, double n) {
  if (n <= 0.0) return 0.0;
  return z_score(observed, expected, expected * (1.0 - expected) / n);
}

}  // namespace

ValidationReport validate_against_analytic(const SimOutcome& outcome, const YieldEstimate& est,
                                           const QberPair& q) {
  if (outcome.scheme != est.scheme || est.scheme != q.scheme) {
    throw InvalidInput("validate_against_analytic: outcome, estimate and QBERs disagree on scheme");
  }
  ValidationReport r;
  r.expected_n_z = est.counts.n_z;
  r.expected_n_x = est.counts.n_x;
  r.expected_e_z = q.e_z;
  r.expected_e_x = q.e_x;
  r.z.n_z = count_z(outcome.counts.n_z, est.counts.n_z, est.emissions_per_pass);
  r.z.n_x = count_z(outcome.counts.n_x, est.counts.n_x, est.emissions_per_pass);
  r.z.e_z = rate_z(outcome.empirical_e_z, q.e_z, outcome.counts.n_z);
  r.z.e_x = rate_z(outcome.empirical_e_x, q.e_x, outcome.counts.n_x);

  const auto check = [&](double z, const char* name) {
    if (std::abs(z) > r.flag_threshold) r.flags.emplace_back(name);
  };
  check(r.z.n_z, "n_z");
  check(r.z.n_x, "n_x");
  check(r.z.e_z, "e_z");
  check(r.z.e_x, "e_x");
  r.flagged = !r.flags.empty();
  return r;
}

}  // namespace satqr
