#include "satqr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "satqr/errors.hpp"

namespace satqr {

std::string format_sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_sig6(r.variable) << ',' << to_string(r.scheme) << ',' << to_string(r.mode) << ','
        << format_sig6(r.n_z) << ',' << format_sig6(r.n_x) << ',' << format_sig6(r.e_z) << ','
        << format_sig6(r.e_x) << ',' << format_sig6(r.l_z) << ',' << format_sig6(r.l_x) << ','
        << format_sig6(r.l_total) << ',' << format_sig6(r.r_per_pair) << '\n';
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw InvalidInput("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw InvalidInput("invalid boolean for '" + std::string(key) + "': '" + std::string(v) + "'");
}

LogBase parse_log_base(std::string_view key, std::string_view v) {
  if (v == "natural" || v == "ln" || v == "e") return LogBase::natural;
  if (v == "binary" || v == "log2" || v == "2") return LogBase::binary;
  throw InvalidInput("invalid log base for '" + std::string(key) + "': '" + std::string(v) +
                     "' (expected natural or binary)");
}

std::string_view to_string(LogBase b) { return b == LogBase::natural ? "natural" : "binary"; }

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using DoubleField = double SystemParams::*;

const std::map<std::string_view, DoubleField>& double_fields() {
  static const std::map<std::string_view, DoubleField> fields{
      {"s", &SystemParams::s},
      {"t_pass", &SystemParams::t_pass},
      {"eta_det", &SystemParams::eta_det},
      {"eta_mem", &SystemParams::eta_mem},
      {"e_m", &SystemParams::e_m},
      {"eps_m", &SystemParams::eps_m},
      {"delta", &SystemParams::delta},
      {"lambda_bsm", &SystemParams::lambda_bsm},
      {"f_e", &SystemParams::f_e},
      {"tau_win", &SystemParams::tau_win},
      {"p_n", &SystemParams::p_n},
      {"p_bg", &SystemParams::p_bg},
      {"p_dc", &SystemParams::p_dc},
      {"eps_sec", &SystemParams::eps_sec},
      {"eps_corr", &SystemParams::eps_corr},
  };
  return fields;
}

}  // namespace

void set_param(SystemParams& p, std::string_view key, std::string_view raw) {
  const std::string_view value = unquote(trim(raw));
  if (const auto it = double_fields().find(key); it != double_fields().end()) {
    p.*(it->second) = parse_double(key, value);
  } else if (key == "p_d_total") {
    if (value == "none" || value.empty()) {
      p.p_d_total.reset();
    } else {
      p.p_d_total = parse_double(key, value);
    }
  } else if (key == "one_memory_ex_noise_term") {
    p.one_memory_ex_noise_term = parse_bool(key, value);
  } else if (key == "deviation_log") {
    p.deviation_log = parse_log_base(key, value);
  } else if (key == "final_term_log") {
    p.final_term_log = parse_log_base(key, value);
  } else {
    throw InvalidInput("unknown parameter '" + std::string(key) + "'");
  }
}

SystemParams load_config(std::istream& in, SystemParams base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    // '#' outside quotes starts a comment.
    char quote = 0;
    for (std::size_t i = 0; i < view.size(); ++i) {
      const char c = view[i];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '#') {
        view = view.substr(0, i);
        break;
      }
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string_view key = trim(view.substr(0, eq));
    try {
      set_param(base, key, view.substr(eq + 1));
    } catch (const InvalidInput& e) {
      throw InvalidInput("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

SystemParams load_config_file(const std::string& path, SystemParams base) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  return load_config(in, std::move(base));
}

std::vector<std::pair<std::string, std::string>> describe_params(const SystemParams& p) {
  std::vector<std::pair<std::string, std::string>> out;
  const std::pair<const char*, double> numeric[] = {
      {"s", p.s},           {"t_pass", p.t_pass},   {"eta_det", p.eta_det},
      {"eta_mem", p.eta_mem}, {"e_m", p.e_m},       {"eps_m", p.eps_m},
      {"delta", p.delta},   {"lambda_bsm", p.lambda_bsm}, {"f_e", p.f_e},
      {"tau_win", p.tau_win}, {"p_n", p.p_n},       {"p_bg", p.p_bg},
      {"p_dc", p.p_dc},     {"eps_sec", p.eps_sec}, {"eps_corr", p.eps_corr},
  };
  for (const auto& [name, value] : numeric) out.emplace_back(name, exact(value));
  out.emplace_back("p_d_total", p.p_d_total ? exact(*p.p_d_total) : std::string("none"));
  out.emplace_back("one_memory_ex_noise_term", p.one_memory_ex_noise_term ? "true" : "false");
  out.emplace_back("deviation_log", std::string(to_string(p.deviation_log)));
  out.emplace_back("final_term_log", std::string(to_string(p.final_term_log)));
  return out;
}

void write_svg(std::ostream& out, const std::vector<SweepRow>& rows, const SvgOptions& opt) {
  constexpr double kW = 720, kH = 480, kLeft = 70, kRight = 160, kTop = 40, kBottom = 60;
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;

  // Series keyed by (scheme, mode) in first-seen order.
  std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  for (const SweepRow& r : rows) {
    x_min = std::min(x_min, r.variable);
    x_max = std::max(x_max, r.variable);
    const std::string name = std::string(to_string(r.scheme)) + " " + std::string(to_string(r.mode));
    auto it = std::find_if(series.begin(), series.end(), [&](auto& s) { return s.first == name; });
    if (it == series.end()) {
      series.emplace_back(name, std::vector<std::pair<double, double>>{});
      it = std::prev(series.end());
    }
    const double v = opt.plot_rate ? r.r_per_pair : r.l_total;
    if (v > 0.0) {
      const double y = std::log10(v);
      it->second.emplace_back(r.variable, y);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!std::isfinite(x_min)) x_min = 0, x_max = 1;
  if (x_max == x_min) x_max = x_min + 1;
  if (!std::isfinite(y_min)) y_min = 0, y_max = 1;
  y_min = std::floor(y_min);
  y_max = std::ceil(y_max);
  if (y_max == y_min) y_max = y_min + 1;

  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };
  static constexpr const char* kColors[] = {"#d62728", "#1f77b4", "#ff7f0e", "#2ca02c",
                                            "#9467bd", "#8c564b"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\">" << opt.title
      << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double y = y_min; y <= y_max + 1e-9; y += 1.0) {
    out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\"" << py(y)
        << "\" y2=\"" << py(y) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
        << format_sig6(y) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double x = x_min + (x_max - x_min) * i / 5.0;
    out << "<text x=\"" << px(x) << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\">" << format_sig6(x) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kH - 15
      << "\" text-anchor=\"middle\">" << opt.x_label << "</text>\n";
  out << "<text transform=\"translate(18," << kTop + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">"
      << (opt.plot_rate ? "log10 key rate per received pair" : opt.y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    const bool dashed = series[s].first.find("asymptotic") != std::string::npos;
    if (!series[s].second.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\""
          << (dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      for (const auto& [x, y] : series[s].second) out << px(x) << ',' << py(y) << ' ';
      out << "\"/>\n";
    }
    const double ly = kTop + 16 + 18 * static_cast<double>(s);
    out << "<line x1=\"" << kW - kRight + 10 << "\" x2=\"" << kW - kRight + 40 << "\" y1=\"" << ly
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\""
        << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    out << "<text x=\"" << kW - kRight + 46 << "\" y=\"" << ly + 4 << "\">" << series[s].first
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace satqr
