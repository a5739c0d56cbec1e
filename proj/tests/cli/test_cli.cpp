#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path tmp_dir() {
  static const fs::path dir = [] {
    fs::path d = SATQR_TEST_TMP;
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Run satqr(const std::string& args) {
  const fs::path err = tmp_dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + SATQR_CLI_PATH + "\" " + args + " 2>\"" +
                          err.string() + "\"";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string value_of(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and version") {
  CHECK(satqr("--help").exit_code == 0);
  const Run v = satqr("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("point CSV is byte-stable") {
  const Run a = satqr("point --loss 30 --scheme 2qm");
  const Run b = satqr("point --loss 30 --scheme 2qm");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out ==
        "variable,scheme,mode,n_z,n_x,e_z,e_x,l_z,l_x,l_total,r_per_pair\n"
        "30,2qm,finite,72521.7,72521.7,0.0363457,0.12444,11258.6,7963.45,19222,0.132526\n");
}

TEST_CASE("--scheme both is the union of the single-scheme runs") {
  const std::string grid = "sweep --start 20 --stop 40 --step 1 --mode both";
  auto both = data_lines(satqr(grid + " --scheme both").out);
  auto one = data_lines(satqr(grid + " --scheme 1qm").out);
  const auto two = data_lines(satqr(grid + " --scheme 2qm").out);
  one.insert(one.end(), two.begin(), two.end());
  std::sort(both.begin(), both.end());
  std::sort(one.begin(), one.end());
  CHECK(both.size() == 21 * 4);
  CHECK(both == one);
}

TEST_CASE("run record sidecar replays") {
  const fs::path out = tmp_dir() / "sweep.csv";
  const fs::path svg = tmp_dir() / "sweep.svg";
  fs::remove(out.string() + ".run.json");
  const Run r = satqr("sweep --start 20 --stop 45 --step 0.5 --mode both --em 0 --out \"" +
                      out.string() + "\" --svg \"" + svg.string() + "\"");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  const fs::path rec_path = out.string() + ".run.json";
  REQUIRE(fs::exists(rec_path));
  CHECK(fs::exists(svg));

  const auto rec = nlohmann::json::parse(slurp(rec_path));
  CHECK(rec.at("command") == "sweep");
  CHECK(rec.at("version") == "0.1.0");
  CHECK(rec.at("params").at("e_m") == "0");
  CHECK(rec.at("inputs").at("step") == 0.5);
  CHECK(rec.at("outputs").at("content") == slurp(out));

  const std::string first = slurp(out);
  std::vector<std::string> argv = rec.at("argv");
  std::string joined;
  for (const std::string& a : argv) joined += "\"" + a + "\" ";
  REQUIRE(satqr(joined).exit_code == 0);
  CHECK(slurp(out) == first);

  const Run replay = satqr("replay \"" + rec_path.string() + "\"");
  CHECK(replay.exit_code == 0);
  CHECK(replay.out.find("matches") != std::string::npos);

  auto tampered = rec;
  tampered["outputs"]["content"] = "variable\n";
  const fs::path bad = tmp_dir() / "tampered.run.json";
  std::ofstream(bad) << tampered.dump();
  CHECK(satqr("replay \"" + bad.string() + "\"").exit_code == 2);

  // The record carries the resolved parameters, so replay ignores a config
  // file that changed in the meantime.
  const fs::path cfg = tmp_dir() / "changing.toml";
  std::ofstream(cfg) << "e_m = 0.0\n";
  const fs::path out2 = tmp_dir() / "cfg.csv";
  REQUIRE(satqr("point --config \"" + cfg.string() + "\" --out \"" + out2.string() + "\"")
              .exit_code == 0);
  std::ofstream(cfg) << "e_m = 0.1\n";
  CHECK(satqr("replay \"" + out2.string() + ".run.json\"").exit_code == 0);
}

TEST_CASE("config values are overridden by flags") {
  const fs::path cfg = tmp_dir() / "params.toml";
  std::ofstream(cfg) << "# test\ne_m = 0.0\nf_e = 1.2\n";
  const std::string base = "point --loss 30 --scheme 2qm --config \"" + cfg.string() + "\"";
  const Run from_file = satqr(base);
  const Run overridden = satqr(base + " --em 0.05 --fe 1.1");
  const Run defaults = satqr("point --loss 30 --scheme 2qm");
  CHECK(from_file.out != defaults.out);
  CHECK(overridden.out == defaults.out);
  CHECK(satqr("point --scheme 2qm --set e_m=0.05 --set f_e=1.1").out == defaults.out);
}

TEST_CASE("exit codes") {
  CHECK(satqr("").exit_code == 1);
  CHECK(satqr("point --bogus").exit_code == 1);
  CHECK(satqr("point --scheme 3qm").exit_code == 1);
  CHECK(satqr("point --em 1.5").exit_code == 1);
  CHECK(satqr("point --config /nonexistent.toml").exit_code == 1);
  CHECK(satqr("point --set nope=1").exit_code == 1);
  CHECK(satqr("sweep --start 5 --stop 1").exit_code == 1);
  CHECK(satqr("simulate --emissions 0").exit_code == 1);
  CHECK(satqr("point --svg x.svg").exit_code == 1);

  CHECK(satqr("point --loss 60").exit_code == 0);
  CHECK(satqr("point --loss 60 --check").exit_code == 2);
  CHECK(satqr("point --loss 30 --check").exit_code == 0);

  const Run none = satqr("crossover --lo 30 --hi 40");
  CHECK(none.exit_code == 0);
  CHECK(value_of(none.out, "crossover_db") == "none");
  CHECK(none.err.find("no crossover") != std::string::npos);
  CHECK(satqr("crossover --lo 30 --hi 40 --check").exit_code == 2);
}

TEST_CASE("crossover") {
  const Run r = satqr("crossover --lo 15 --hi 30");
  REQUIRE(r.exit_code == 0);
  const double x = std::stod(value_of(r.out, "crossover_db"));
  CHECK(x > 22.9);
  CHECK(x < 28.9);
}

TEST_CASE("memory report") {
  const Run r = satqr("memory-report --loss 30 --slant-range 2e6");
  REQUIRE(r.exit_code == 0);
  CHECK(value_of(r.out, "n_qm1") == "580174");
  CHECK(value_of(r.out, "n_qm2") == "66713");
  CHECK(value_of(r.out, "afc_total_modes") == "1000000000");
  CHECK(value_of(r.out, "note").find("not reproduced") != std::string::npos);

  const Run dark = satqr("memory-report --loss 1000 --set p_n=0 --set p_bg=0 --set p_dc=0");
  CHECK(value_of(dark.out, "n_qm1") == "0");

  const Run j = satqr("memory-report --format json");
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("n_qm2") == 66713);
}

TEST_CASE("noise sweep and geo comparison") {
  const Run n = satqr("noise-sweep --loss 25.9 --pd-start 0 --pd-stop 1e-4 --pd-points 5 --linear");
  REQUIRE(n.exit_code == 0);
  CHECK(data_lines(n.out).size() == 10);

  const Run g = satqr("geo-compare");
  REQUIRE(g.exit_code == 0);
  CHECK(value_of(g.out, "flyover_pairs_per_year") == "1257");
  CHECK(std::stod(value_of(g.out, "geo_loss_db")) > 37.0);
  const Run g2 = satqr("geo-compare --key-per-pass 10000 --format json");
  const auto doc = nlohmann::json::parse(g2.out);
  CHECK(doc.at("annual_key_2qm").get<double>() == doctest::Approx(1.257e7));
}

TEST_CASE("simulate is reproducible per seed") {
  const std::string args = "simulate --loss 10 --emissions 20000 --seed 5";
  const Run a = satqr(args + " --threads 1");
  const Run b = satqr(args + " --threads 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(data_lines(a.out).size() == 2);
  CHECK(satqr("simulate --loss 10 --emissions 20000 --seed 6 --threads 1").out != a.out);
}

}  // TEST_SUITE
