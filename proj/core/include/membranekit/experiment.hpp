#pragma once

// Experiment orchestration: configuration documents, composite models, sweeps,
// and table emission.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "membranekit/casimir.hpp"
#include "membranekit/membrane.hpp"
#include "membranekit/readout.hpp"
#include "membranekit/ringdown.hpp"
#include "membranekit/units.hpp"

namespace mkit::experiment {

inline constexpr std::string_view kToolName = "membrane-kit";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class MediumKind { kVacuum, kHelium };

struct Environment {
  MediumKind medium = MediumKind::kVacuum;
  Quantity temperature = 300.0 * units::K;
  double he3_fraction = 0.0;
  Quantity medium_valid_below = 0.6 * units::K;
  /// User-supplied added-mass factor applied to m_eff in the simulator.
  double meff_multiplier = 1.0;

  bool operator==(const Environment&) const = default;
};

/// Support loss: Q_support = mass_ratio * mount_q.
struct SupportModel {
  double mass_ratio = 1e5;
  double mount_q = 1.0;

  bool operator==(const SupportModel&) const = default;
};

enum class SweepAxis { kSeparation, kTemperature, kHe3Fraction };
enum class SweepScale { kLinear, kLog };

struct SweepSpec {
  SweepAxis axis = SweepAxis::kSeparation;
  Quantity start = 1.0 * units::um;
  Quantity stop = 1.0 * units::mm;
  int points = 61;
  SweepScale scale = SweepScale::kLog;

  bool operator==(const SweepSpec&) const = default;
};

struct ExperimentConfig {
  membrane::MembraneSpec membrane;
  std::optional<SupportModel> support;
  Environment environment;
  std::optional<casimir::SpherePlaneGeometry> geometry;
  casimir::ThermalCoefficient coefficient = casimir::ThermalCoefficient::kStated;
  std::optional<readout::CapacitiveReadout> readout;
  std::optional<SweepSpec> sweep;
  std::optional<ringdown::SimConfig> sim;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses a `[section]` / `key = value unit` document. Throws ConfigError
/// naming the line and field on any missing key, unknown key, unit mismatch,
/// or invariant violation.
ExperimentConfig load_config(std::string_view text);

/// Canonical document with every default resolved, values in SI base units
/// and shortest round-trip formatting; load_config(effective_config(c)) == c.
std::string effective_config(const ExperimentConfig& config);

/// FNV-1a 64 of the effective configuration, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

std::string_view axis_name(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);
/// Default sweep range used when a config has no [sweep] section for `axis`.
SweepSpec default_sweep(SweepAxis axis);
/// Axis values; the endpoints are exactly start and stop.
std::vector<double> sweep_values(const SweepSpec& sweep);

// ---------------------------------------------------------------------------
// Composite single-point models shared by sweeps and reports.

/// Damping budget of the fundamental at temperature T with 3He fraction x3:
/// intrinsic (table), support (if configured), and in helium phonon and 3He.
membrane::DampingBudget damping_budget(const ExperimentConfig& config, const Quantity& temperature,
                                       double he3_fraction);

struct OperatingPoint {
  Quantity k;
  Quantity m_eff;
  Quantity f0;
  Quantity omega0;
  double q_total = 0.0;
  Quantity gamma_total;
  Quantity temperature;
  Quantity s_f;
};

/// Mechanics and noise floor at the configured environment.
OperatingPoint operating_point(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Sweeps.

struct Column {
  std::string name;
  std::string unit;

  bool operator==(const Column&) const = default;
};

/// Labelled scalar attached to a result, e.g. `snr_unity_d.paper_stated`.
struct Note {
  std::string key;
  double value = 0.0;
  std::string unit;

  bool operator==(const Note&) const = default;
};

struct Provenance {
  std::string tool;
  std::string config_hash;
  std::string constants;

  bool operator==(const Provenance&) const = default;
};

struct SweepResult {
  Provenance provenance;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Note> notes;

  bool operator==(const SweepResult&) const = default;
};

/// Channel rates and combined Q against temperature; reports crossover
/// temperatures between channels located by bisection between rows.
SweepResult total_q_vs_temperature(const ExperimentConfig& config, const SweepSpec& sweep);

/// Thermal and zero-temperature sphere-plane forces, the noise floor, and
/// S/N against separation; reports the S/N = 1 crossing.
SweepResult snr_vs_separation(const ExperimentConfig& config, const SweepSpec& sweep);

/// 3He damping, combined Q, and the inverted concentration against x3.
SweepResult he3_fraction_sweep(const ExperimentConfig& config, const SweepSpec& sweep);

/// Dispatches on sweep.axis.
SweepResult run_sweep(const ExperimentConfig& config, const SweepSpec& sweep);

enum class Format { kCsv, kJson };

Format parse_format(std::string_view name);

std::string emit(const SweepResult& result, Format format);
SweepResult parse_result(std::string_view document, Format format);

// ---------------------------------------------------------------------------
// Point reports printed by the CLI subcommands.

struct ReportEntry {
  std::string name;
  double value = 0.0;
  std::string unit;
};

struct Report {
  std::string title;
  std::vector<ReportEntry> entries;
  std::vector<std::string> warnings;
};

Report noise_report(const ExperimentConfig& config);
Report casimir_report(const ExperimentConfig& config);
Report helium_report(const ExperimentConfig& config);
Report readout_report(const ExperimentConfig& config);
Report fit_report(const ringdown::FitResult& fit, std::string title);

/// Text form is `name = value unit` lines (comment lines for title and
/// warnings); CSV and JSON carry the same entries.
std::string emit_report(const Report& report, std::optional<Format> format);

}  // namespace mkit::experiment
