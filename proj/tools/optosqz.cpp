// Command-line front end: single points, sweeps, figure presets and unit
// conversion. Exit codes: 0 ok, 2 usage/validation, 3 numerical, 4 I/O.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "optosqz/config.hpp"
#include "optosqz/model.hpp"
#include "optosqz/report.hpp"
#include "optosqz/sweep.hpp"

namespace {

using namespace optosqz;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  std::string format;
  int jobs = 0;
  std::string branch;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--set", f.sets, "Override, key=value (repeatable)")
      ->allow_extra_args(false);
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--format", f.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", f.jobs, "Worker threads")
      ->check(CLI::Range(1, 4096));
  cmd->add_option("--branch", f.branch, "lowest|highest|index:<k>");
}

ConfigSources sources_from(const CommonFlags& f) {
  ConfigSources src;
  if (!f.config.empty()) src.config_path = f.config;
  src.overrides = f.sets;
  // Dedicated flags win over --set.
  if (!f.out.empty()) src.overrides.push_back("output=\"" + f.out + "\"");
  if (!f.format.empty()) src.overrides.push_back("format=\"" + f.format + "\"");
  if (f.jobs > 0) src.overrides.push_back("jobs=" + std::to_string(f.jobs));
  if (!f.branch.empty()) {
    src.overrides.push_back("branch=\"" + f.branch + "\"");
  }
  return src;
}

// Output sink: a file when a path is configured, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot open '" + path + "' for writing");
    }
    path_ = path;
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write to '" + path_ + "' failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

int run_point(const RunConfig& cfg) {
  const PointReport rep = evaluate_point_report(cfg);
  Sink sink(cfg.output);
  if (cfg.format == OutputFormat::Json) {
    write_point_json(rep, sink.stream());
  } else {
    write_point_text(rep, sink.stream());
  }
  sink.finish();
  if (rep.numerical_failure) {
    std::cerr << "error: " << rep.failure_message << '\n';
    return kExitNumerical;
  }
  return 0;
}

int run_sweep_cmd(const RunConfig& cfg) {
  if (!cfg.sweep) {
    throw ValidationError("sweep: no sweep section in the configuration");
  }
  // Open the sink first so an unwritable path fails before any work.
  Sink sink(cfg.output);
  const std::size_t total = cfg.sweep->size();
  std::size_t last_reported = 0;
  auto progress = [&](std::size_t done, std::size_t n) {
    if (done == n || done >= last_reported + std::max<std::size_t>(1, n / 20)) {
      std::cerr << "\r" << done << "/" << n << " points" << std::flush;
      last_reported = done;
    }
  };
  const SweepResult result = run_sweep(*cfg.sweep, cfg.jobs, progress);
  std::cerr << '\n';

  std::size_t anomalies = 0;
  for (const PointRecord& row : result.rows) {
    if (row.anomaly) {
      if (anomalies++ < 5) {
        std::cerr << "warning: numerical anomaly at a stable point: "
                  << row.anomaly_message << '\n';
      }
    }
  }
  if (anomalies > 0) {
    std::cerr << "warning: " << anomalies << " of " << total
              << " points flagged as anomalies (measures set to nan)\n";
  }

  if (cfg.format == OutputFormat::Json) {
    write_json(result, sink.stream());
  } else {
    write_csv(result, sink.stream());
  }
  sink.finish();
  return 0;
}

struct UnitFlags {
  double optical_frequency_hz = 0.0;
  double wavelength_m = 0.0;
  double kappa_hz = 0.0;
  double q_optical = 0.0;
  double mech_frequency_hz = 0.0;
  double q_mech = 0.0;
  double power_w = 0.0;
  double J_hz = 0.0;
  double g_hz = 0.0;
  bool example = false;
};

// Device values of a 1550 nm whispering-gallery setup that are often quoted
// together with a pump rate of 3.2e5 omega_m.
void fill_example(UnitFlags& u) {
  u.optical_frequency_hz = 193.4e12;
  u.kappa_hz = 6.43e6;
  u.mech_frequency_hz = 23.4e6;
  u.q_mech = 1e5;
  u.power_w = 0.2e-3;
  u.J_hz = 16.1e6;
  u.g_hz = 1.17e3;
}

bool near(double a, double b) { return std::abs(a - b) <= 0.01 * std::abs(b); }

bool matches_example(const UnitFlags& u) {
  const double nu = u.optical_frequency_hz > 0.0
                        ? u.optical_frequency_hz
                        : (u.wavelength_m > 0.0 ? kSpeedOfLight / u.wavelength_m
                                                : 0.0);
  return near(nu, 193.4e12) && near(u.power_w, 0.2e-3) &&
         near(u.mech_frequency_hz, 23.4e6);
}

int run_convert(UnitFlags u, OutputFormat format, const std::string& out) {
  if (u.example) fill_example(u);
  PhysicalParams phys;
  phys.optical_frequency_hz = u.optical_frequency_hz;
  phys.laser_wavelength_m = u.wavelength_m;
  phys.kappa_hz = u.kappa_hz;
  phys.q_optical = u.q_optical;
  phys.mechanical_frequency_hz = u.mech_frequency_hz;
  phys.q_mechanical = u.q_mech;
  phys.input_power_w = u.power_w;
  phys.J_hz = u.J_hz;
  phys.g_hz = u.g_hz;
  const UnitConversion conv = physical_to_dimensionless(phys);

  PointReport rep;
  auto add = [&](const std::string& k, double v) {
    rep.entries.emplace_back(k, format_number(v));
  };
  add("omega_optical_rad_s", conv.omega_optical);
  add("omega_m_rad_s", conv.omega_m);
  add("kappa_rad_s", conv.kappa);
  add("gamma_m_rad_s", conv.gamma_m);
  add("pump_rate_s", conv.pump_rate);
  add("kappa1", conv.params.kappa1);
  add("kappa2", conv.params.kappa2);
  add("gamma_m", conv.params.gamma_m);
  add("g", conv.params.g);
  add("J", conv.params.J);
  add("E", conv.params.E);
  if (matches_example(u)) {
    std::ostringstream note;
    note << "these inputs are sometimes quoted with E = 3.2e5 omega_m; "
            "E = sqrt(kappa P_in / (hbar omega)) evaluates to "
         << format_number(conv.params.E)
         << " omega_m. The formula is applied as written.";
    rep.entries.emplace_back("notice", note.str());
  }

  Sink sink(out);
  if (format == OutputFormat::Json) {
    write_point_json(rep, sink.stream());
  } else {
    write_point_text(rep, sink.stream());
  }
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement and EPR steering of a squeezed-"
               "vacuum-driven two-cavity optomechanical system"};
  app.require_subcommand(1);

  CommonFlags point_flags, sweep_flags, preset_flags;
  auto* point = app.add_subcommand("point", "Evaluate one operating point");
  add_common(point, point_flags);
  auto* sweep = app.add_subcommand("sweep", "Run the configured sweep");
  add_common(sweep, sweep_flags);
  auto* preset_cmd = app.add_subcommand("preset", "Run a named figure preset");
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "Preset name")->required();
  add_common(preset_cmd, preset_flags);

  auto* convert =
      app.add_subcommand("convert-units", "Physical units to omega_m units");
  UnitFlags units;
  std::string convert_format;
  std::string convert_out;
  convert->add_option("--optical-frequency-hz", units.optical_frequency_hz);
  convert->add_option("--wavelength-m", units.wavelength_m);
  convert->add_option("--kappa-hz", units.kappa_hz);
  convert->add_option("--q-optical", units.q_optical);
  convert->add_option("--mech-frequency-hz", units.mech_frequency_hz);
  convert->add_option("--q-mech", units.q_mech);
  convert->add_option("--power-w", units.power_w);
  convert->add_option("--J-hz", units.J_hz);
  convert->add_option("--g-hz", units.g_hz);
  convert->add_flag("--example", units.example,
                    "Use the 1550 nm WGM device values");
  convert->add_option("--format", convert_format, "text|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  convert->add_option("--out", convert_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*convert) {
      return run_convert(units,
                         convert_format == "json" ? OutputFormat::Json
                                                  : OutputFormat::Csv,
                         convert_out);
    }
    if (*point) return run_point(load_run_config(sources_from(point_flags)));
    if (*sweep) {
      return run_sweep_cmd(load_run_config(sources_from(sweep_flags)));
    }
    if (*preset_cmd) {
      ConfigSources src = sources_from(preset_flags);
      src.preset = preset_name;
      return run_sweep_cmd(load_run_config(src));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
