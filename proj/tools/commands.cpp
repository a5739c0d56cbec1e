#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "satqr/satqr.hpp"

namespace satqr::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string config;
  std::string scheme = "both";
  std::string mode = "finite";
  std::optional<double> em;
  std::optional<double> fe;
  std::vector<std::string> sets;
  std::string out;
  std::string format = "csv";
  std::string svg;
  std::string record;
  bool check = false;
  unsigned threads = 0;
};

struct PointOpts {
  double loss = 30.0;
};

struct SweepOpts {
  std::string variable = "loss_db";
  double start = 20.0;
  double stop = 45.0;
  double step = 0.5;
  double fixed_loss = 30.0;
};

struct NoiseOpts {
  double loss = 25.9;
  PdGrid grid;
  bool linear = false;
};

struct CrossoverOpts {
  double lo = 15.0;
  double hi = 30.0;
  double tol = 0.01;
};

struct MemoryOpts {
  double loss = 30.0;
  double slant_range = 2.0e6;
  AfcInputs afc;
};

struct GeoOpts {
  GeoParams geo;
  double loss = 30.0;
  std::optional<double> key_per_pass;
  double flyovers = kFlyoverPairsPerYear;
};

struct SimOpts {
  double loss = 30.0;
  std::uint64_t seed = 1;
  double emissions = 1e6;
  std::optional<std::uint64_t> qm1_cap;
  std::optional<std::uint64_t> qm2_cap;
  std::uint64_t hold_slots = 0;
};

std::vector<Scheme> schemes_of(const std::string& s) {
  if (s == "both") return {Scheme::one_memory, Scheme::two_memory};
  return {parse_scheme(s)};
}

std::vector<KeyMode> modes_of(const std::string& s) {
  if (s == "both") return {KeyMode::finite, KeyMode::asymptotic};
  return {parse_key_mode(s)};
}

SystemParams resolve_params(const Common& c, const SystemParams* forced) {
  if (forced) {
    forced->validate();
    return *forced;
  }
  SystemParams p = c.config.empty() ? SystemParams{} : load_config_file(c.config);
  for (const std::string& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidInput("--set expects key=value, got '" + kv + "'");
    set_param(p, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.em) p.e_m = *c.em;
  if (c.fe) p.f_e = *c.fe;
  p.validate();
  return p;
}

std::string rows_text(const std::vector<SweepRow>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    write_csv(os, rows);
    return os.str();
  }
  json arr = json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"variable", r.variable},
                   {"scheme", to_string(r.scheme)},
                   {"mode", to_string(r.mode)},
                   {"n_z", r.n_z},
                   {"n_x", r.n_x},
                   {"e_z", r.e_z},
                   {"e_x", r.e_x},
                   {"l_z", r.l_z},
                   {"l_x", r.l_x},
                   {"l_total", r.l_total},
                   {"r_per_pair", r.r_per_pair}});
  }
  return json{{"rows", arr}}.dump(2) + "\n";
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

// Ordered quantity/value pairs for the report-style subcommands.
class Table {
 public:
  void add(std::string key, double v) { rows_.emplace_back(std::move(key), json(v)); }
  void add_count(std::string key, std::uint64_t v) { rows_.emplace_back(std::move(key), json(v)); }
  void add_text(std::string key, std::string v) { rows_.emplace_back(std::move(key), json(v)); }

  std::string render(const std::string& format) const {
    if (format == "json") {
      json obj = json::object();
      for (const auto& [k, v] : rows_) obj[k] = v;
      return obj.dump(2) + "\n";
    }
    std::string s = "quantity,value\n";
    for (const auto& [k, v] : rows_) {
      s += k + ',';
      if (v.is_number_float()) {
        s += format_sig6(v.get<double>());
      } else if (v.is_number()) {
        s += std::to_string(v.get<std::uint64_t>());
      } else {
        s += csv_field(v.get<std::string>());
      }
      s += '\n';
    }
    return s;
  }

 private:
  std::vector<std::pair<std::string, json>> rows_;
};

bool any_key(const std::vector<SweepRow>& rows) {
  for (const SweepRow& r : rows) {
    if (r.l_total > 0.0) return true;
  }
  return false;
}

void no_svg(const Common& c, const std::string& cmd) {
  if (!c.svg.empty()) throw InvalidInput("--svg is only available for sweep and noise-sweep, not " + cmd);
}

void run_point(Output& o, const Common& c, const PointOpts& opt) {
  no_svg(c, o.command);
  std::vector<SweepRow> rows;
  for (Scheme s : schemes_of(c.scheme)) {
    const PointResult r = analyze_point(o.params, opt.loss, s);
    for (KeyMode m : modes_of(c.mode)) rows.push_back(make_row(opt.loss, r, m));
  }
  o.inputs = {{"loss_db", opt.loss}, {"scheme", c.scheme}, {"mode", c.mode}};
  o.text = rows_text(rows, c.format);
  if (c.check && !any_key(rows)) {
    o.exit_code = kNoResult;
    o.message = "no key at " + format_sig6(opt.loss) + " dB";
  }
}

void emit_rows(Output& o, const Common& c, const std::vector<SweepRow>& rows, SvgOptions svg) {
  o.text = rows_text(rows, c.format);
  if (!c.svg.empty()) {
    std::ostringstream os;
    write_svg(os, rows, svg);
    o.svg = os.str();
  }
  if (c.check && !any_key(rows)) {
    o.exit_code = kNoResult;
    o.message = "no key anywhere on the grid";
  }
}

void run_sweep_cmd(Output& o, const Common& c, const SweepOpts& opt) {
  SweepSpec spec;
  spec.variable = parse_sweep_variable(opt.variable);
  spec.start = opt.start;
  spec.stop = opt.stop;
  spec.step = opt.step;
  spec.fixed_loss_db = opt.fixed_loss;
  spec.schemes = schemes_of(c.scheme);
  spec.modes = modes_of(c.mode);
  o.inputs = {{"variable", opt.variable}, {"start", opt.start},   {"stop", opt.stop},
              {"step", opt.step},         {"fixed_loss_db", opt.fixed_loss},
              {"scheme", c.scheme},       {"mode", c.mode}};
  SvgOptions svg;
  svg.title = "key length versus " + opt.variable;
  if (spec.variable != SweepVariable::loss_db) svg.x_label = opt.variable;
  emit_rows(o, c, run_sweep(spec, o.params), svg);
}

void run_noise(Output& o, const Common& c, NoiseOpts opt) {
  opt.grid.log_spaced = !opt.linear;
  o.inputs = {{"loss_db", opt.loss},
              {"pd_start", opt.grid.start},
              {"pd_stop", opt.grid.stop},
              {"pd_points", opt.grid.points},
              {"log_spaced", opt.grid.log_spaced},
              {"scheme", c.scheme},
              {"mode", c.mode}};
  SvgOptions svg;
  svg.title = "key length versus incoherent click probability at " + format_sig6(opt.loss) + " dB";
  svg.x_label = "p_d per window";
  emit_rows(o, c, noise_sweep(o.params, opt.loss, opt.grid, schemes_of(c.scheme), modes_of(c.mode)),
            svg);
}

void run_crossover(Output& o, const Common& c, const CrossoverOpts& opt) {
  no_svg(c, o.command);
  o.inputs = {{"lo_db", opt.lo}, {"hi_db", opt.hi}, {"tolerance_db", opt.tol}};
  Table t;
  t.add("lo_db", opt.lo);
  t.add("hi_db", opt.hi);
  t.add("tolerance_db", opt.tol);
  try {
    t.add("crossover_db", find_crossover(o.params, opt.lo, opt.hi, opt.tol));
  } catch (const NoResult& e) {
    if (c.check) throw;
    t.add_text("crossover_db", "none");
    o.message = e.what();
  }
  o.text = t.render(c.format);
}

void run_memory(Output& o, const Common& c, const MemoryOpts& opt) {
  no_svg(c, o.command);
  o.inputs = {{"loss_db", opt.loss},
              {"slant_range_m", opt.slant_range},
              {"n_afc", opt.afc.n_afc},
              {"n_f", opt.afc.n_f},
              {"n_s", opt.afc.n_s}};
  const MemoryReport r = memory_report(o.params, opt.loss, opt.slant_range, opt.afc);
  Table t;
  t.add("loss_db", r.loss_db);
  t.add("slant_range_m", r.slant_range);
  t.add("n_heralded_a", r.n_heralded_a);
  t.add_count("n_qm1", r.budget.n_qm1);
  t.add_count("n_qm2", r.budget.n_qm2);
  t.add_count("afc_time_modes", r.budget.afc.n_t);
  t.add_count("afc_frequency_modes", r.budget.afc.n_f);
  t.add_count("afc_spatial_modes", r.budget.afc.n_s);
  t.add_count("afc_total_modes", r.budget.afc.n_total);
  t.add_text("afc_sufficient", r.afc_sufficient ? "true" : "false");
  t.add("reference_qm1", r.reference_qm1);
  t.add("reference_ratio", r.reference_ratio);
  t.add_text("note", r.note);
  o.text = t.render(c.format);
}

void run_geo(Output& o, const Common& c, const GeoOpts& opt) {
  no_svg(c, o.command);
  opt.geo.validate();
  double per_pass = 0.0;
  if (opt.key_per_pass) {
    per_pass = *opt.key_per_pass;
  } else {
    per_pass = analyze_point(o.params, opt.loss, Scheme::two_memory).finite.l_total;
  }
  const double rate = geo_asymptotic_key_rate(opt.geo, o.params);
  const AnnualComparison a = annual_comparison(per_pass, rate, opt.flyovers);
  o.inputs = {{"loss_db", opt.loss},
              {"key_per_pass", opt.key_per_pass ? json(*opt.key_per_pass) : json(nullptr)},
              {"flyovers", opt.flyovers},
              {"altitude", opt.geo.altitude},
              {"divergence", opt.geo.divergence},
              {"d_tx", opt.geo.d_tx},
              {"d_rx", opt.geo.d_rx},
              {"source_rate", opt.geo.source_rate},
              {"geo_p_d", opt.geo.p_d},
              {"atm_transmittance", opt.geo.atm_transmittance}};
  const double eta = geo_channel_transmittance(opt.geo);
  Table t;
  t.add("geo_transmittance", eta);
  t.add("geo_loss_db", eta > 0.0 ? linear_to_db(eta) : INFINITY);
  t.add("geo_key_rate_bps", rate);
  t.add("key_per_pass_2qm", a.key_per_pass);
  t.add("flyover_pairs_per_year", a.flyover_pairs_per_year);
  t.add("annual_key_2qm", a.annual_key_2qm);
  t.add("annual_key_geo", a.annual_key_geo);
  if (a.gain_infinite) {
    t.add_text("gain_ratio", "inf");
  } else {
    t.add("gain_ratio", a.gain_ratio);
  }
  o.text = t.render(c.format);
}

void run_simulate(Output& o, const Common& c, const SimOpts& opt) {
  no_svg(c, o.command);
  if (!(opt.emissions >= 1.0 && opt.emissions == std::floor(opt.emissions) && opt.emissions <= 1e12)) {
    throw InvalidInput("--emissions must be a whole number in [1, 1e12]");
  }
  const auto emissions = static_cast<std::uint64_t>(opt.emissions);
  o.inputs = {{"loss_db", opt.loss},
              {"seed", opt.seed},
              {"emissions", emissions},
              {"qm1_cap", opt.qm1_cap ? json(*opt.qm1_cap) : json(nullptr)},
              {"qm2_cap", opt.qm2_cap ? json(*opt.qm2_cap) : json(nullptr)},
              {"hold_slots", opt.hold_slots},
              {"scheme", c.scheme}};

  static constexpr const char* kHeader =
      "scheme,emissions,seed,n_z,n_x,e_z,e_x,expected_n_z,expected_n_x,expected_e_z,expected_e_x,"
      "z_n_z,z_n_x,z_e_z,z_e_x,heralded_a,heralded_b,swapped,dropped_capacity,peak_qm1,peak_qm2,"
      "flagged";
  std::string csv = std::string(kHeader) + "\n";
  json arr = json::array();
  bool flagged = false;
  for (Scheme s : schemes_of(c.scheme)) {
    TrialConfig cfg;
    cfg.n_emissions_per_pass = emissions;
    cfg.loss_db = opt.loss;
    cfg.params = o.params;
    cfg.seed = opt.seed;
    cfg.qm1_cap = opt.qm1_cap;
    cfg.qm2_cap = opt.qm2_cap;
    cfg.qm2_hold_slots = opt.hold_slots;
    cfg.scheme = s;
    cfg.threads = c.threads;
    const SimOutcome r = simulate_protocol(cfg);

    // The simulator always tallies the incoherent half in the one-memory X basis.
    SystemParams analytic = o.params;
    if (s == Scheme::one_memory) analytic.one_memory_ex_noise_term = true;
    const YieldEstimate est = s == Scheme::two_memory
                                  ? expected_counts_two_memory(analytic, opt.loss, opt.emissions)
                                  : expected_counts_one_memory(analytic, opt.loss, opt.emissions);
    const ValidationReport v =
        validate_against_analytic(r, est, analyze_point(analytic, opt.loss, s).qber);
    flagged = flagged || v.flagged;

    const auto count = [](double x) { return std::to_string(static_cast<std::uint64_t>(x)); };
    csv += std::string(to_string(s)) + ',' + std::to_string(emissions) + ',' +
           std::to_string(opt.seed) + ',' + count(r.counts.n_z) + ',' + count(r.counts.n_x) + ',' +
           format_sig6(r.empirical_e_z) + ',' + format_sig6(r.empirical_e_x) + ',' +
           format_sig6(v.expected_n_z) + ',' + format_sig6(v.expected_n_x) + ',' +
           format_sig6(v.expected_e_z) + ',' + format_sig6(v.expected_e_x) + ',' +
           format_sig6(v.z.n_z) + ',' + format_sig6(v.z.n_x) + ',' + format_sig6(v.z.e_z) + ',' +
           format_sig6(v.z.e_x) + ',' + std::to_string(r.heralded_a) + ',' +
           std::to_string(r.heralded_b) + ',' + std::to_string(r.swapped) + ',' +
           std::to_string(r.dropped_capacity) + ',' + std::to_string(r.peak_qm1_occupancy) + ',' +
           std::to_string(r.peak_qm2_occupancy) + ',' + (v.flagged ? "true" : "false") + '\n';
    arr.push_back({{"scheme", to_string(s)},
                   {"emissions", emissions},
                   {"seed", opt.seed},
                   {"n_z", r.counts.n_z},
                   {"n_x", r.counts.n_x},
                   {"e_z", r.empirical_e_z},
                   {"e_x", r.empirical_e_x},
                   {"expected", {{"n_z", v.expected_n_z}, {"n_x", v.expected_n_x},
                                 {"e_z", v.expected_e_z}, {"e_x", v.expected_e_x}}},
                   {"z", {{"n_z", v.z.n_z}, {"n_x", v.z.n_x}, {"e_z", v.z.e_z}, {"e_x", v.z.e_x}}},
                   {"heralded_a", r.heralded_a},
                   {"heralded_b", r.heralded_b},
                   {"swapped", r.swapped},
                   {"dropped_capacity", r.dropped_capacity},
                   {"peak_qm1", r.peak_qm1_occupancy},
                   {"peak_qm2", r.peak_qm2_occupancy},
                   {"flagged", v.flagged},
                   {"flags", v.flags}});
  }
  o.text = c.format == "csv" ? csv : json{{"runs", arr}}.dump(2) + "\n";
  if (flagged) {
    o.message = "simulation deviates from the analytic model by more than 4 sigma";
    if (c.check) o.exit_code = kNoResult;
  }
}

std::vector<const char*> c_argv(const std::vector<std::string>& args) {
  std::vector<const char*> v{"satqr"};
  for (const std::string& a : args) v.push_back(a.c_str());
  return v;
}

}  // namespace

Output dispatch(const std::vector<std::string>& args, const SystemParams* forced) {
  Output o;
  Common c;
  PointOpts point;
  SweepOpts sweep;
  NoiseOpts noise;
  CrossoverOpts cross;
  MemoryOpts memory;
  GeoOpts geo;
  SimOpts sim;
  std::string record_in;

  CLI::App app{"Finite-key analysis of memory-assisted satellite QKD"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--config", c.config, "flat key = value parameter file");
  app.add_option("--scheme", c.scheme, "1qm, 2qm or both")
      ->check(CLI::IsMember({"1qm", "2qm", "both"}))
      ->capture_default_str();
  app.add_option("--mode", c.mode, "finite, asymptotic or both")
      ->check(CLI::IsMember({"finite", "asymptotic", "both"}))
      ->capture_default_str();
  app.add_option("--em", c.em, "per-memory dephasing probability e_m");
  app.add_option("--fe", c.fe, "error-correction inefficiency f_e");
  app.add_option("--set", c.sets, "override any parameter, key=value (repeatable)");
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--svg", c.svg, "SVG plot path (sweep, noise-sweep)");
  app.add_option("--record", c.record, "run record path (default <out>.run.json)");
  app.add_flag("--check", c.check, "exit 2 when no key / no crossover / flagged simulation");
  app.add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();

  auto* p_cmd = app.add_subcommand("point", "key at one channel loss");
  p_cmd->add_option("--loss", point.loss, "average channel loss (dB)")->capture_default_str();

  auto* s_cmd = app.add_subcommand("sweep", "key table over loss, p_d_total or e_m");
  s_cmd->add_option("--variable", sweep.variable, "loss_db, p_d_total or e_m")
      ->check(CLI::IsMember({"loss_db", "p_d_total", "e_m"}))
      ->capture_default_str();
  s_cmd->add_option("--start", sweep.start)->capture_default_str();
  s_cmd->add_option("--stop", sweep.stop)->capture_default_str();
  s_cmd->add_option("--step", sweep.step)->capture_default_str();
  s_cmd->add_option("--fixed-loss", sweep.fixed_loss, "loss (dB) when sweeping p_d_total or e_m")
      ->capture_default_str();

  auto* n_cmd = app.add_subcommand("noise-sweep", "key versus incoherent click probability");
  n_cmd->add_option("--loss", noise.loss, "average channel loss (dB)")->capture_default_str();
  n_cmd->add_option("--pd-start", noise.grid.start)->capture_default_str();
  n_cmd->add_option("--pd-stop", noise.grid.stop)->capture_default_str();
  n_cmd->add_option("--pd-points", noise.grid.points)->capture_default_str();
  n_cmd->add_flag("--linear", noise.linear, "linear instead of logarithmic p_d spacing");

  auto* x_cmd = app.add_subcommand("crossover", "loss where the two schemes' key rates meet");
  x_cmd->add_option("--lo", cross.lo)->capture_default_str();
  x_cmd->add_option("--hi", cross.hi)->capture_default_str();
  x_cmd->add_option("--tol", cross.tol, "bisection tolerance (dB)")->capture_default_str();

  auto* m_cmd = app.add_subcommand("memory-report", "memory mode budget");
  m_cmd->add_option("--loss", memory.loss)->capture_default_str();
  m_cmd->add_option("--slant-range", memory.slant_range, "ground-satellite distance (m)")
      ->capture_default_str();
  m_cmd->add_option("--n-afc", memory.afc.n_afc)->capture_default_str();
  m_cmd->add_option("--n-f", memory.afc.n_f)->capture_default_str();
  m_cmd->add_option("--n-s", memory.afc.n_s)->capture_default_str();

  auto* g_cmd = app.add_subcommand("geo-compare", "annual key versus a GEO dual downlink");
  g_cmd->add_option("--loss", geo.loss, "loss for the 2qm key per pass (dB)")->capture_default_str();
  g_cmd->add_option("--key-per-pass", geo.key_per_pass, "use this key per pass instead");
  g_cmd->add_option("--flyovers", geo.flyovers, "pass pairs per year")->capture_default_str();
  g_cmd->add_option("--d-rx", geo.geo.d_rx, "receiver aperture (m)")->capture_default_str();
  g_cmd->add_option("--d-tx", geo.geo.d_tx, "sender aperture (m)")->capture_default_str();
  g_cmd->add_option("--divergence", geo.geo.divergence, "full divergence (rad)")
      ->capture_default_str();
  g_cmd->add_option("--altitude", geo.geo.altitude, "link range (m)")->capture_default_str();
  g_cmd->add_option("--source-rate", geo.geo.source_rate, "pairs/s")->capture_default_str();
  g_cmd->add_option("--geo-pd", geo.geo.p_d, "incoherent click probability")->capture_default_str();
  g_cmd->add_option("--atm", geo.geo.atm_transmittance, "atmospheric transmittance")
      ->capture_default_str();

  auto* m_sim = app.add_subcommand("simulate", "Monte Carlo run checked against the model");
  m_sim->add_option("--loss", sim.loss)->capture_default_str();
  m_sim->add_option("--seed", sim.seed)->capture_default_str();
  m_sim->add_option("--emissions", sim.emissions, "emissions per pass")->capture_default_str();
  m_sim->add_option("--qm1-cap", sim.qm1_cap, "QM1 mode capacity");
  m_sim->add_option("--qm2-cap", sim.qm2_cap, "QM2 mode capacity");
  m_sim->add_option("--hold-slots", sim.hold_slots, "emission slots a QM2 mode stays busy")
      ->capture_default_str();

  auto* r_cmd = app.add_subcommand("replay", "re-run a run record and compare outputs");
  r_cmd->add_option("record", record_in, "run record JSON")->required();

  try {
    const auto argv = c_argv(args);
    app.parse(static_cast<int>(argv.size()), argv.data());
    CLI::App* sub = app.get_subcommands().front();
    o.command = sub->get_name();
    o.format = c.format;

    if (sub == r_cmd) {
      std::ifstream in(record_in);
      if (!in) throw InvalidInput("cannot open run record '" + record_in + "'");
      json rec;
      try {
        rec = json::parse(in);
      } catch (const json::exception& e) {
        throw InvalidInput("run record '" + record_in + "' is not valid JSON: " + e.what());
      }
      return replay(rec);
    }

    o.params = resolve_params(c, forced);
    o.out_path = c.out;
    o.svg_path = c.svg;
    o.record_path = !c.record.empty() ? c.record : (c.out.empty() ? "" : c.out + ".run.json");

    if (sub == p_cmd) run_point(o, c, point);
    else if (sub == s_cmd) run_sweep_cmd(o, c, sweep);
    else if (sub == n_cmd) run_noise(o, c, noise);
    else if (sub == x_cmd) run_crossover(o, c, cross);
    else if (sub == m_cmd) run_memory(o, c, memory);
    else if (sub == g_cmd) run_geo(o, c, geo);
    else run_simulate(o, c, sim);
  } catch (const CLI::CallForHelp&) {
    o.message = app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help();
    o.exit_code = kOk;
  } catch (const CLI::CallForAllHelp&) {
    o.message = app.help("", CLI::AppFormatMode::All);
    o.exit_code = kOk;
  } catch (const CLI::CallForVersion&) {
    o.message = std::string(kVersion) + "\n";
    o.exit_code = kOk;
  } catch (const CLI::ParseError& e) {
    o.message = std::string("error: ") + e.what() + "\nRun with --help for usage.\n";
    o.exit_code = kInvalidInput;
  } catch (const NoResult& e) {
    o.message = std::string("no result: ") + e.what() + "\n";
    o.exit_code = kNoResult;
  } catch (const std::invalid_argument& e) {
    o.message = std::string("error: ") + e.what() + "\n";
    o.exit_code = kInvalidInput;
  }
  if (!o.message.empty() && o.message.back() != '\n') o.message += '\n';
  return o;
}

nlohmann::json run_record(const Output& out, const std::vector<std::string>& args,
                          const std::string& timestamp) {
  json params = json::object();
  for (const auto& [k, v] : describe_params(out.params)) params[k] = v;
  json outputs = {{"format", out.format}, {"path", out.out_path}, {"content", out.text}};
  if (out.svg) {
    outputs["svg_path"] = out.svg_path;
    outputs["svg"] = *out.svg;
  }
  return {{"tool", "satqr"},
          {"version", kVersion},
          {"timestamp", timestamp},
          {"command", out.command},
          {"argv", args},
          {"params", params},
          {"inputs", out.inputs},
          {"exit_code", out.exit_code},
          {"outputs", outputs}};
}

Output replay(const nlohmann::json& record) {
  Output o;
  o.command = "replay";
  try {
    const auto args = record.at("argv").get<std::vector<std::string>>();
    if (!args.empty() && args.front() == "replay") throw InvalidInput("record replays a replay");
    SystemParams p;
    for (const auto& [k, v] : record.at("params").items()) set_param(p, k, v.get<std::string>());
    const Output again = dispatch(args, &p);
    const json& outputs = record.at("outputs");
    const bool same_text = again.text == outputs.at("content").get<std::string>();
    const bool same_svg = !outputs.contains("svg") ||
                          (again.svg && *again.svg == outputs.at("svg").get<std::string>());
    if (same_text && same_svg && again.exit_code == record.value("exit_code", 0)) {
      o.message = "replay of '" + record.value("command", std::string("?")) + "' matches\n";
    } else {
      o.exit_code = kNoResult;
      o.message = std::string("replay differs from the record") + (same_text ? "" : " (table)") +
                  (same_svg ? "" : " (svg)") + "\n";
    }
  } catch (const json::exception& e) {
    o.exit_code = kInvalidInput;
    o.message = std::string("error: malformed run record: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    o.exit_code = kInvalidInput;
    o.message = std::string("error: ") + e.what() + "\n";
  }
  return o;
}

}  // namespace satqr::cli
