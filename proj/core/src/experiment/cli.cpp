#include "membranekit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "membranekit/experiment.hpp"

namespace mkit::experiment {

namespace {

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(std::string("cannot open ") + what + " '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw Error("failed writing output file '" + path + "'");
}

ExperimentConfig config_from(const std::string& path) {
  if (path.empty()) return load_config("[membrane]\n");
  return load_config(read_file(path, "config file"));
}

std::optional<Format> report_format(const std::string& name) {
  if (name.empty() || name == "text") return std::nullopt;
  return parse_format(name);
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::string axis;
  std::optional<std::uint64_t> seed;
  std::string trace;
  std::string method = "ringdown";
};

void add_common(CLI::App* cmd, Options& o, bool with_axis) {
  cmd->add_option("--config", o.config, "Configuration document")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Write output to this file instead of standard output");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  if (with_axis) {
    cmd->add_option("--axis", o.axis, "Sweep axis")
        ->check(CLI::IsMember({"separation_d", "temperature_T", "he3_fraction_x3"}));
  }
  cmd->add_option("--seed", o.seed, "Override the simulator seed");
}

int run_report(Report (*make)(const ExperimentConfig&), const Options& o, std::ostream& out,
               std::ostream& err) {
  const auto config = config_from(o.config);
  const Report report = make(config);
  print_warnings(report.warnings, err);
  write_output(o.out, emit_report(report, report_format(o.format)), out);
  return kExitOk;
}

int run_sweep_command(const Options& o, std::ostream& out) {
  const auto config = config_from(o.config);
  SweepSpec sweep;
  if (!o.axis.empty()) {
    const SweepAxis axis = parse_axis(o.axis);
    sweep = config.sweep && config.sweep->axis == axis ? *config.sweep : default_sweep(axis);
  } else if (config.sweep) {
    sweep = *config.sweep;
  } else {
    throw ConfigError("sweep needs --axis or a [sweep] section in the config");
  }
  const Format format = o.format.empty() || o.format == "text" ? Format::kCsv : parse_format(o.format);
  write_output(o.out, emit(run_sweep(config, sweep), format), out);
  return kExitOk;
}

int run_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) throw ConfigError("ringdown simulate needs --out PATH for the trace");
  const auto config = config_from(o.config);
  ringdown::SimConfig sim = config.sim ? *config.sim : ringdown::SimConfig{};
  if (o.seed) sim.seed = *o.seed;
  const OperatingPoint op = operating_point(config);
  const Quantity m_eff = op.m_eff * config.environment.meff_multiplier;
  Diagnostics diag;
  const auto series = ringdown::simulate(m_eff, op.k, op.gamma_total, op.temperature, sim, &diag);
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error("cannot open output file '" + o.out + "'");
  ringdown::write_trace(file, series);
  file.close();

  Report r;
  r.title = "ringdown simulation; rng: " + std::string(ringdown::kRngAlgorithm);
  const double omega = std::sqrt(op.k.value() / m_eff.value());
  r.entries = {{"seed", static_cast<double>(sim.seed), "1"},
               {"samples", static_cast<double>(series.size()), "1"},
               {"sample_interval", series.dt, "s"},
               {"temperature", op.temperature.value(), "K"},
               {"m_eff", m_eff.value(), "kg"},
               {"k", op.k.value(), "N/m"},
               {"omega0", omega, "rad/s"},
               {"gamma_total", op.gamma_total.value(), "1/s"},
               {"q_configured", omega / op.gamma_total.value(), "1"}};
  print_warnings(diag.warnings(), err);
  out << emit_report(r, report_format(o.format));
  return kExitOk;
}

int run_fit(const Options& o, std::ostream& out) {
  std::istringstream in(read_file(o.trace, "trace file"));
  const auto series = ringdown::read_trace(in);
  Report report;
  if (o.method == "lorentzian") {
    report = fit_report(ringdown::lorentzian_fit(ringdown::power_spectrum(series)),
                        "Lorentzian spectral fit");
    for (auto& e : report.entries) {
      if (e.name == "residual_rms") e.unit = "m^2/Hz";
    }
  } else {
    report = fit_report(ringdown::fit_ringdown(series), "ring-down fit");
  }
  write_output(o.out, emit_report(report, report_format(o.format)), out);
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Membrane resonator force-sensing toolkit", std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Options o;
  auto* noise_cmd = app.add_subcommand("noise", "Thermal force-noise floor");
  auto* casimir_cmd = app.add_subcommand("casimir", "Casimir force regimes");
  auto* helium_cmd = app.add_subcommand("helium", "Superfluid helium damping");
  auto* readout_cmd = app.add_subcommand("readout", "Capacitive readout estimates");
  for (auto* cmd : {noise_cmd, casimir_cmd, helium_cmd, readout_cmd}) add_common(cmd, o, false);

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep table");
  add_common(sweep_cmd, o, true);

  auto* ringdown_cmd = app.add_subcommand("ringdown", "Time-domain simulation and fitting");
  ringdown_cmd->require_subcommand(1);
  auto* simulate_cmd = ringdown_cmd->add_subcommand("simulate", "Simulate a ring-down trace");
  add_common(simulate_cmd, o, false);
  auto* fit_cmd = ringdown_cmd->add_subcommand("fit", "Fit a ring-down trace");
  fit_cmd->add_option("trace", o.trace, "Trace file")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--out", o.out, "Write output to this file");
  fit_cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  fit_cmd->add_option("--method", o.method, "Estimator")
      ->check(CLI::IsMember({"ringdown", "lorentzian"}));

  std::vector<const char*> argv{"membrane-kit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitValidation;
  }

  try {
    if (noise_cmd->parsed()) return run_report(noise_report, o, out, err);
    if (casimir_cmd->parsed()) return run_report(casimir_report, o, out, err);
    if (helium_cmd->parsed()) return run_report(helium_report, o, out, err);
    if (readout_cmd->parsed()) return run_report(readout_report, o, out, err);
    if (sweep_cmd->parsed()) return run_sweep_command(o, out);
    if (simulate_cmd->parsed()) return run_simulate(o, out, err);
    if (fit_cmd->parsed()) return run_fit(o, out);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  err << app.help();
  return kExitValidation;
}

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_dispatch(args, out, err);
}

}  // namespace mkit::experiment
