#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "oracles.hpp"
#include "reflectsim/config.hpp"
#include "reflectsim/error.hpp"
#include "reflectsim/metrics.hpp"
#include "reflectsim/profile_io.hpp"
#include "reflectsim/sweep.hpp"

namespace fs = std::filesystem;
using namespace reflectsim;

namespace {

struct CommonFlags {
  std::string config;
  std::string band;
  std::string reflector;
  std::string mode;
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Scenario YAML file")->check(CLI::ExistingFile);
  cmd->add_option("--band", f.band, "Band override")->check(CLI::IsMember({"28", "39", "120"}));
  cmd->add_option("--reflector", f.reflector, "Reflector override")
      ->check(CLI::IsMember({"flat", "convex"}));
  cmd->add_option("--mode", f.mode, "Engine sum mode")
      ->check(CLI::IsMember({"literal", "physical"}));
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--format", f.format, "Profile format")->check(CLI::IsMember({"csv", "json"}));
}

ScenarioConfig resolve(const CommonFlags& f) {
  ConfigOverrides o;
  if (!f.band.empty()) o.band = parse_band(f.band);
  if (!f.reflector.empty()) o.reflector = parse_reflector_kind(f.reflector);
  if (!f.mode.empty()) o.mode = parse_sum_mode(f.mode);
  if (!f.out.empty()) o.out_dir = f.out;
  if (!f.format.empty()) o.formats = std::vector{parse_profile_format(f.format)};
  ScenarioConfig c = f.config.empty() ? parse_config("", o) : load_config(f.config, o);
  // A label left over from the file would be wrong after a band or shape override.
  if (c.output.label.empty() || o.band || o.reflector) {
    c.output.label = std::to_string(band_ghz(c.band)) + "ghz_" + to_string(c.kind());
  }
  return c;
}

std::string extension(ProfileFormat f) { return f == ProfileFormat::kCsv ? ".csv" : ".json"; }

int simulate(const CommonFlags& f, bool dump_only) {
  const ScenarioConfig c = resolve(f);
  if (dump_only) {
    std::cout << dump_config(c);
    return 0;
  }
  const PowerProfile profile = run_sweep(c);
  const fs::path dir = c.output.dir;
  fs::create_directories(dir);
  for (ProfileFormat fmt : c.output.formats) {
    const fs::path p = dir / (c.output.label + extension(fmt));
    export_profile(profile, fmt, p);
    std::cout << "wrote " << p.string() << '\n';
  }
  const ProfileStats stats = analyze(profile, c.analysis);
  const fs::path sp = dir / (c.output.label + "_stats.json");
  write_text_file(sp, stats_to_json(stats));
  std::cout << "wrote " << sp.string() << '\n';
  return 0;
}

int compare_cmd(const CommonFlags& f, const std::string& measured_path) {
  const ScenarioConfig c = resolve(f);
  const PowerProfile sim = run_sweep(c);
  const PowerProfile measured = import_measured(measured_path);
  const ComparisonReport report = compare(sim, measured, c.analysis);
  const std::string json = report_to_json(report);
  if (f.out.empty()) {
    std::cout << json;
    return 0;
  }
  fs::create_directories(c.output.dir);
  const fs::path p = fs::path(c.output.dir) /
                     (c.output.label + "_vs_" + measured.label + ".json");
  write_text_file(p, json);
  std::cout << "wrote " << p.string() << '\n';
  return 0;
}

int bands() {
  std::printf("%-7s %-3s %10s %12s %12s %14s\n", "band", "end", "gain_dbi", "hpbw_az_deg",
              "hpbw_el_deg", "tx_power_dbm");
  for (Band b : kAllBands) {
    const BandDefaults d = band_defaults(b);
    for (const auto& [end, pat] : {std::pair{"tx", d.tx_pattern}, std::pair{"rx", d.rx_pattern}}) {
      std::printf("%-7s %-3s %10.1f %12.1f %12.1f %14.1f\n", to_string(b).c_str(), end,
                  pat.boresight_gain_dbi, pat.hpbw_az_deg, pat.hpbw_el_deg, d.tx_power_dbm);
    }
  }
  return 0;
}

int run_oracle() {
  int failed = 0;
  for (const auto& r : oracle::run_checks()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
    failed += r.passed ? 0 : 1;
  }
  std::cout << failed << " check(s) failed\n";
  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reflector NLOS link simulator"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  bool dump = false;
  auto* sim = app.add_subcommand("simulate", "Run one scenario and write profile and stats");
  add_common(sim, sim_flags);
  sim->add_flag("--dump-config", dump, "Print the resolved config and exit");

  CommonFlags cmp_flags;
  std::string measured;
  auto* cmp = app.add_subcommand("compare", "Compare a simulated scenario to a measured CSV");
  add_common(cmp, cmp_flags);
  cmp->add_option("--measured", measured, "Measured profile CSV")
      ->required()
      ->check(CLI::ExistingFile);

  app.add_subcommand("bands", "Print per-band antenna defaults");
  app.add_subcommand("oracle", "Run the independent reference checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*sim) return simulate(sim_flags, dump);
    if (*cmp) return compare_cmd(cmp_flags, measured);
    if (app.got_subcommand("bands")) return bands();
    return run_oracle();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
