#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

namespace satqr {

// Receives non-fatal numerical warnings (e.g. a probability that had to be
// clamped by more than kClampWarnThreshold). The default sink writes to stderr.
using DiagnosticSink = std::function<void(std::string_view)>;

inline constexpr double kClampWarnThreshold = 1e-9;

// Installs a sink and returns the previous one. Passing an empty function
// silences warnings.
DiagnosticSink set_diagnostic_sink(DiagnosticSink sink);

void warn(std::string_view message);

// Number of warnings emitted since process start.
std::size_t warning_count();

// Clamps to [0,1]; drift larger than kClampWarnThreshold is reported.
double clamp_probability(double value, std::string_view where);

}  // namespace satqr
