#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "satqr/params.hpp"
#include "satqr/sweep.hpp"

namespace satqr {

/// printf("%.6g") without locale surprises.
std::string format_sig6(double v);

inline constexpr std::string_view kCsvHeader =
    "variable,scheme,mode,n_z,n_x,e_z,e_x,l_z,l_x,l_total,r_per_pair";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Flat `key = value` file (TOML-compatible subset). Keys are SystemParams
/// field names; `#` starts a comment; string values may be quoted.
/// Unknown keys and malformed values throw InvalidInput with the line number.
SystemParams load_config(std::istream& in, SystemParams base = {});
SystemParams load_config_file(const std::string& path, SystemParams base = {});

// Sets one field by name; throws InvalidInput for unknown keys.
void set_param(SystemParams& p, std::string_view key, std::string_view value);

// Every SystemParams field as (name, value) in declaration order.
std::vector<std::pair<std::string, std::string>> describe_params(const SystemParams& p);

struct SvgOptions {
  std::string title;
  std::string x_label = "average single-channel loss (dB)";
  std::string y_label = "log10 key length (bits)";
  bool plot_rate = false;  // plot log10 r_per_pair instead of l_total
};

/// Line plot of log10(l_total) (or log10 R) versus the sweep variable, one
/// polyline per (scheme, mode). Non-positive values are left out.
void write_svg(std::ostream& out, const std::vector<SweepRow>& rows, const SvgOptions& opt);

}  // namespace satqr
