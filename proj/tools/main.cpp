#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
  f.close();
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const satqr::cli::Output out = satqr::cli::dispatch(args);
  if (!out.message.empty()) {
    (out.exit_code == 0 && out.text.empty() ? std::cout : std::cerr) << out.message;
  }
  if (out.text.empty()) return out.exit_code;

  if (out.out_path.empty()) {
    std::cout << out.text;
  } else if (!write_file(out.out_path, out.text)) {
    return satqr::cli::kInvalidInput;
  }
  if (out.svg && !write_file(out.svg_path, *out.svg)) return satqr::cli::kInvalidInput;
  if (!out.record_path.empty()) {
    const auto rec = satqr::cli::run_record(out, args, utc_now());
    if (!write_file(out.record_path, rec.dump(2) + "\n")) return satqr::cli::kInvalidInput;
  }
  return out.exit_code;
}
