#pragma once

#include "satqr/link_model.hpp"
#include "satqr/params.hpp"

namespace satqr {

/// Shannon entropy of a Bernoulli(x) variable in bits. x must lie in [0,1].
double binary_entropy(double x);

/// Matched coincident events per basis. Real-valued so that expectations and
/// sampled integer counts share one code path.
struct BasisCounts {
  double n_z = 0.0;
  double n_x = 0.0;
  bool operator==(const BasisCounts&) const = default;
};

enum class KeyStatus {
  ok,
  no_raw_key,          // n_main == 0
  no_statistics,       // n_other == 0, the deviation term diverges
  phase_error_overflow,// adjusted phase error >= 1/2
  negative,            // evaluation < 0, clamped
};

struct BasisKey {
  double bits = 0.0;
  KeyStatus status = KeyStatus::ok;
};

/// Statistical deviation added to the observed phase error:
/// sqrt((n_main + 1) log(1/eps_sec) / (2 n_other (n_other + n_main))).
double phase_error_deviation(double n_main, double n_other, const SystemParams& p);

/// Constant security cost log(2 / (eps_corr eps_sec^2)).
double security_overhead_bits(const SystemParams& p);

/// Finite-size secure length for the key drawn from one basis.
///
/// For the Z key pass (n_z, n_x, e_x, e_z); for the X key swap every role.
/// The phase error is inflated by the sampling deviation and divided by
/// (1 - delta); if that exceeds 1/2 the basis contributes nothing. The
/// remaining terms subtract error correction (f_e h(e_bit)), the imbalance
/// penalty and the constant security overhead. Never negative.
BasisKey finite_key_basis(double n_main, double n_other, double e_phase, double e_bit,
                          const SystemParams& p);

/// n -> infinity limit of finite_key_basis:
/// n_main * max(0, 1 - h(e_phase/(1-delta)) - f_e h(e_bit) - delta).
BasisKey asymptotic_key_basis(double n_main, double e_phase, double e_bit,
                              const SystemParams& p);

struct KeyResult {
  double l_z = 0.0;
  double l_x = 0.0;
  double l_total = 0.0;
  double r_per_pair = 0.0;  // l_total / (n_z + n_x)
  KeyMode mode = KeyMode::finite;
  KeyStatus status_z = KeyStatus::ok;
  KeyStatus status_x = KeyStatus::ok;
};

KeyResult total_key(const BasisCounts& counts, const QberPair& q, const SystemParams& p);
KeyResult asymptotic_key(const BasisCounts& counts, const QberPair& q, const SystemParams& p);

}  // namespace satqr
