#include "satqr/diagnostics.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <string>

namespace satqr {
namespace {

std::mutex g_sink_mutex;
std::atomic<std::size_t> g_warnings{0};

DiagnosticSink& sink_ref() {
  static DiagnosticSink sink = [](std::string_view msg) {
    std::fprintf(stderr, "satqr: warning: %.*s\n", static_cast<int>(msg.size()), msg.data());
  };
  return sink;
}

}  // namespace

DiagnosticSink set_diagnostic_sink(DiagnosticSink sink) {
  std::lock_guard lock(g_sink_mutex);
  DiagnosticSink prev = std::move(sink_ref());
  sink_ref() = std::move(sink);
  return prev;
}

void warn(std::string_view message) {
  g_warnings.fetch_add(1, std::memory_order_relaxed);
  std::lock_guard lock(g_sink_mutex);
  if (sink_ref()) sink_ref()(message);
}

std::size_t warning_count() { return g_warnings.load(std::memory_order_relaxed); }

double clamp_probability(double value, std::string_view where) {
  if (value >= 0.0 && value <= 1.0) return value;
  if (value < -kClampWarnThreshold || value > 1.0 + kClampWarnThreshold) {
    std::string msg(where);
    msg += ": probability ";
    msg += std::to_string(value);
    msg += " clamped to [0,1]";
    warn(msg);
  }
  return value < 0.0 ? 0.0 : 1.0;
}

}  // namespace satqr
