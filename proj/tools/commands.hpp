#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satqr/params.hpp"

namespace satqr::cli {

enum ExitCode { kOk = 0, kInvalidInput = 1, kNoResult = 2 };

// Everything a subcommand produced. Files are written by the caller so that
// replays can compare in memory.
struct Output {
  std::string command;
  std::string text;                  // CSV or JSON body
  std::string format;                // "csv" or "json"
  std::optional<std::string> svg;    // SVG body when --svg was given
  std::string out_path;
  std::string svg_path;
  std::string record_path;
  nlohmann::json inputs = nlohmann::json::object();
  SystemParams params;
  int exit_code = kOk;
  std::string message;               // printed to stderr
};

// Parses args (without the program name) and runs one subcommand. When
// `forced` is set the resolved parameters are taken from it and --config,
// --set and the shorthand overrides are ignored.
Output dispatch(const std::vector<std::string>& args, const SystemParams* forced = nullptr);

nlohmann::json run_record(const Output& out, const std::vector<std::string>& args,
                          const std::string& timestamp);

// Re-runs a record and compares the regenerated outputs with the stored ones.
Output replay(const nlohmann::json& record);

}  // namespace satqr::cli
