#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "detail/format.hpp"
#include "membranekit/experiment.hpp"
#include "membranekit/helium.hpp"

namespace mkit::experiment {

namespace {

using detail::format_double;
using detail::parse_double;
using detail::trim;

struct UnitSuffix {
  std::string_view name;
  double factor;
  Dimension dim;
  bool angular = false;
};

constexpr UnitSuffix kUnits[] = {
    {"m", 1.0, dims::kLength},          {"cm", 1e-2, dims::kLength},
    {"mm", 1e-3, dims::kLength},        {"um", 1e-6, dims::kLength},
    {"nm", 1e-9, dims::kLength},        {"s", 1.0, dims::kTime},
    {"ms", 1e-3, dims::kTime},          {"us", 1e-6, dims::kTime},
    {"ns", 1e-9, dims::kTime},
    {"Hz", 1.0, dims::kFrequency},      {"kHz", 1e3, dims::kFrequency},
    {"rad/s", 1.0, dims::kFrequency, true},
    {"K", 1.0, dims::kTemperature},     {"mK", 1e-3, dims::kTemperature},
    {"Pa", 1.0, dims::kPressure},       {"MPa", 1e6, dims::kPressure},
    {"N/m", 1.0, dims::kStiffness},     {"V", 1.0, dims::kVoltage},
    {"kg/m3", 1.0, dims::kDensity},     {"N", 1.0, dims::kForce},
    {"N*s", 1.0, dims::kMomentum},      {"m/s", 1.0, dims::kVelocity},
};

// Canonical echo unit of each physical kind (factor 1, so values round-trip).
struct Kind {
  Dimension dim;
  bool angular;
  std::string_view canonical;
  std::string_view description;
};

constexpr Kind kLengthKind{dims::kLength, false, "m", "a length"};
constexpr Kind kTimeKind{dims::kTime, false, "s", "a time"};
constexpr Kind kFrequencyKind{dims::kFrequency, false, "Hz", "a frequency (Hz)"};
constexpr Kind kAngularKind{dims::kFrequency, true, "rad/s", "an angular frequency (rad/s)"};
constexpr Kind kTemperatureKind{dims::kTemperature, false, "K", "a temperature"};
constexpr Kind kPressureKind{dims::kPressure, false, "Pa", "a pressure"};
constexpr Kind kStiffnessKind{dims::kStiffness, false, "N/m", "a stiffness"};
constexpr Kind kVoltageKind{dims::kVoltage, false, "V", "a voltage"};
constexpr Kind kDensityKind{dims::kDensity, false, "kg/m3", "a mass density"};
constexpr Kind kForceKind{dims::kForce, false, "N", "a force"};
constexpr Kind kImpulseKind{dims::kMomentum, false, "N*s", "an impulse"};
constexpr Kind kVelocityKind{dims::kVelocity, false, "m/s", "a velocity"};

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;
  // Repeatable key.
  std::vector<Entry> q_points;
};

[[noreturn]] void fail_at(int line, const std::string& section, const std::string& key,
                          const std::string& message) {
  std::string where = "config line " + std::to_string(line) + ": [" + section + "]";
  if (!key.empty()) where += " " + key;
  throw ConfigError(where + ": " + message);
}

class SectionReader {
 public:
  explicit SectionReader(Section& section) : s_(section) {}

  bool has(const std::string& key) const { return s_.entries.count(key) != 0; }

  int line_of(const std::string& key) const {
    const auto it = s_.entries.find(key);
    return it == s_.entries.end() ? s_.line : it->second.line;
  }

  Quantity quantity(const std::string& key, const Kind& kind, const Quantity& fallback) {
    return has(key) ? required_quantity(key, kind) : fallback;
  }

  std::optional<Quantity> optional_quantity(const std::string& key, const Kind& kind) {
    if (!has(key)) return std::nullopt;
    return required_quantity(key, kind);
  }

  Quantity required_quantity(const std::string& key, const Kind& kind) {
    Entry& e = take(key);
    return parse_quantity(e.value, kind, e.line, key);
  }

  double number(const std::string& key, double fallback) {
    return has(key) ? required_number(key) : fallback;
  }

  double required_number(const std::string& key) {
    Entry& e = take(key);
    return parse_number(e.value, e.line, key);
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
    return has(key) ? required_integer(key) : fallback;
  }

  std::uint64_t required_integer(const std::string& key) {
    Entry& e = take(key);
    std::uint64_t out = 0;
    const auto* first = e.value.data();
    const auto* last = first + e.value.size();
    const auto r = std::from_chars(first, last, out);
    if (r.ec != std::errc() || r.ptr != last) {
      fail_at(e.line, s_.name, key, "expected a non-negative integer, got '" + e.value + "'");
    }
    return out;
  }

  std::string word(const std::string& key, const std::string& fallback) {
    return has(key) ? required_word(key) : fallback;
  }

  std::string required_word(const std::string& key) { return take(key).value; }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    fail_at(line_of(key), s_.name, key, message);
  }

  void finish() const {
    for (const auto& [key, entry] : s_.entries) {
      if (!entry.used) fail_at(entry.line, s_.name, key, "unknown key");
    }
  }

  Quantity parse_quantity(const std::string& text, const Kind& kind, int line,
                          const std::string& key) const {
    std::istringstream tokens(text);
    std::string number_text, unit_text, extra;
    tokens >> number_text >> unit_text;
    if (tokens >> extra) fail_at(line, s_.name, key, "unexpected trailing text '" + extra + "'");
    double value = 0.0;
    if (!parse_double(number_text, value)) {
      fail_at(line, s_.name, key, "malformed number '" + number_text + "'");
    }
    if (unit_text.empty()) {
      fail_at(line, s_.name, key,
              "missing unit; expected " + std::string(kind.description) + " such as '" +
                  std::string(kind.canonical) + "'");
    }
    for (const auto& unit : kUnits) {
      if (unit.name != unit_text) continue;
      if (!(unit.dim == kind.dim) || unit.angular != kind.angular) {
        fail_at(line, s_.name, key,
                "unit mismatch: '" + unit_text + "' is not " + std::string(kind.description));
      }
      return Quantity(value * unit.factor, unit.dim);
    }
    fail_at(line, s_.name, key, "unknown unit '" + unit_text + "'");
  }

  double parse_number(const std::string& text, int line, const std::string& key) const {
    std::istringstream tokens(text);
    std::string number_text, extra;
    tokens >> number_text;
    if (tokens >> extra) {
      fail_at(line, s_.name, key,
              "unit mismatch: dimensionless value takes no unit, got '" + extra + "'");
    }
    double value = 0.0;
    if (!parse_double(number_text, value)) {
      fail_at(line, s_.name, key, "malformed number '" + number_text + "'");
    }
    return value;
  }

  std::vector<Entry>& q_points() { return s_.q_points; }
  const std::string& name() const { return s_.name; }

 private:
  Entry& take(const std::string& key) {
    auto it = s_.entries.find(key);
    if (it == s_.entries.end()) fail_at(s_.line, s_.name, key, "missing required key");
    it->second.used = true;
    return it->second;
  }

  Section& s_;
};

const std::vector<std::string_view>& known_sections() {
  static const std::vector<std::string_view> names = {"membrane", "environment", "geometry",
                                                      "readout",  "sweep",       "sim"};
  return names;
}

std::map<std::string, Section> split_sections(std::string_view text) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) + ": malformed section header");
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      const auto& known = known_sections();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ConfigError("config line " + std::to_string(line_no) + ": unknown section [" + name +
                          "]");
      }
      if (sections.count(name) != 0) {
        throw ConfigError("config line " + std::to_string(line_no) + ": duplicate section [" +
                          name + "]");
      }
      current = &sections[name];
      current->name = name;
      current->line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value unit'");
    }
    if (current == nullptr) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": key outside of any [section]");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail_at(line_no, current->name, "", "empty key");
    if (value.empty()) fail_at(line_no, current->name, key, "empty value");
    if (current->name == "membrane" && key == "q_intrinsic") {
      current->q_points.push_back({value, line_no, false});
      continue;
    }
    if (current->entries.count(key) != 0) fail_at(line_no, current->name, key, "duplicate key");
    current->entries[key] = {value, line_no, false};
  }
  return sections;
}

membrane::MembraneSpec read_membrane(SectionReader& r, std::optional<SupportModel>& support) {
  membrane::MembraneSpec spec;
  spec.side_x = r.quantity("side_x", kLengthKind, spec.side_x);
  spec.side_y = r.quantity("side_y", kLengthKind, spec.side_y);
  spec.thickness = r.quantity("thickness", kLengthKind, spec.thickness);
  spec.density = r.quantity("density", kDensityKind, spec.density);
  spec.stress = r.quantity("stress", kPressureKind, spec.stress);
  spec.override_k = r.optional_quantity("spring_constant", kStiffnessKind);
  spec.override_f0 = r.optional_quantity("frequency", kFrequencyKind);
  spec.max_linear_amplitude =
      r.quantity("max_linear_amplitude", kLengthKind, spec.max_linear_amplitude);

  if (!r.q_points().empty()) {
    spec.q_intrinsic.clear();
    for (const Entry& e : r.q_points()) {
      const auto at = e.value.find('@');
      if (at == std::string::npos) {
        fail_at(e.line, r.name(), "q_intrinsic", "expected '<Q> @ <temperature> <unit>'");
      }
      const double q = r.parse_number(std::string(trim(std::string_view(e.value).substr(0, at))),
                                      e.line, "q_intrinsic");
      const Quantity t = r.parse_quantity(
          std::string(trim(std::string_view(e.value).substr(at + 1))), kTemperatureKind, e.line,
          "q_intrinsic");
      for (const auto& existing : spec.q_intrinsic) {
        if (existing.temperature.value() == t.value()) {
          fail_at(e.line, r.name(), "q_intrinsic", "duplicate temperature in Q table");
        }
      }
      spec.q_intrinsic.push_back({t, q});
    }
    std::sort(spec.q_intrinsic.begin(), spec.q_intrinsic.end(), [](const auto& a, const auto& b) {
      return a.temperature.value() < b.temperature.value();
    });
  }

  const bool has_ratio = r.has("support_mass_ratio");
  const bool has_mount = r.has("mount_q");
  if (has_ratio != has_mount) {
    r.fail(has_ratio ? "mount_q" : "support_mass_ratio",
           "support loss needs both support_mass_ratio and mount_q");
  }
  if (has_ratio) {
    SupportModel model;
    model.mass_ratio = r.required_number("support_mass_ratio");
    model.mount_q = r.required_number("mount_q");
    if (!(model.mass_ratio >= 1.0)) r.fail("support_mass_ratio", "must be >= 1");
    if (!(model.mount_q >= 1.0)) r.fail("mount_q", "must be >= 1");
    support = model;
  }
  r.finish();
  try {
    membrane::validate(spec);
  } catch (const ValidationError& e) {
    r.fail("", e.what());
  }
  return spec;
}

Environment read_environment(SectionReader* r) {
  Environment env;
  if (r == nullptr) return env;
  const std::string medium = r->word("medium", "vacuum");
  if (medium == "vacuum") {
    env.medium = MediumKind::kVacuum;
  } else if (medium == "helium") {
    env.medium = MediumKind::kHelium;
    env.temperature = 0.03 * units::K;
  } else {
    r->fail("medium", "expected 'vacuum' or 'helium', got '" + medium + "'");
  }
  env.temperature = r->quantity("temperature", kTemperatureKind, env.temperature);
  env.he3_fraction = r->number("he3_fraction", env.he3_fraction);
  env.medium_valid_below =
      r->quantity("medium_valid_below", kTemperatureKind, env.medium_valid_below);
  env.meff_multiplier = r->number("meff_multiplier", env.meff_multiplier);
  r->finish();

  if (!(env.temperature.value() > 0.0)) r->fail("temperature", "must be positive");
  if (!(env.he3_fraction >= 0.0 && env.he3_fraction <= 1.0)) {
    r->fail("he3_fraction", "must lie in [0, 1]");
  }
  if (!(env.meff_multiplier > 0.0)) r->fail("meff_multiplier", "must be positive");
  if (env.medium == MediumKind::kVacuum && env.he3_fraction != 0.0) {
    r->fail("he3_fraction", "a 3He fraction needs medium = helium");
  }
  if (env.medium == MediumKind::kHelium) {
    if (env.medium_valid_below.value() > helium::kPhononOnlyLimit) {
      r->fail("medium_valid_below", "cannot exceed the 0.6 K phonon-only limit of the helium model");
    }
    if (env.temperature.value() >= env.medium_valid_below.value()) {
      r->fail("temperature", "helium environment requires T < " +
                                 format_double(env.medium_valid_below.value()) +
                                 " K (0.6 K limit: above it phonons are not the only "
                                 "thermal excitations)");
    }
  }
  return env;
}

casimir::SpherePlaneGeometry read_geometry(SectionReader& r,
                                           casimir::ThermalCoefficient& coefficient) {
  casimir::SpherePlaneGeometry g;
  g.radius = r.quantity("radius", kLengthKind, g.radius);
  g.separation = r.quantity("separation", kLengthKind, g.separation);
  g.conducting_spot_diameter = r.optional_quantity("spot_diameter", kLengthKind);
  g.film_thickness = r.optional_quantity("film_thickness", kLengthKind);
  const std::string c = r.word("coefficient", "stated");
  if (c == "stated") {
    coefficient = casimir::ThermalCoefficient::kStated;
  } else if (c == "ideal-metal-pfa") {
    coefficient = casimir::ThermalCoefficient::kIdealMetalPfa;
  } else {
    r.fail("coefficient", "expected 'stated' or 'ideal-metal-pfa', got '" + c + "'");
  }
  r.finish();
  try {
    casimir::validate(g);
  } catch (const ValidationError& e) {
    r.fail("", e.what());
  }
  return g;
}

readout::CapacitiveReadout read_readout(SectionReader& r) {
  readout::CapacitiveReadout ro;
  ro.gap = r.quantity("gap", kLengthKind, ro.gap);
  ro.bias_voltage = r.quantity("bias", kVoltageKind, ro.bias_voltage);
  r.finish();
  try {
    readout::validate(ro);
  } catch (const ValidationError& e) {
    r.fail("", e.what());
  }
  return ro;
}

const Kind* axis_kind(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSeparation:
      return &kLengthKind;
    case SweepAxis::kTemperature:
      return &kTemperatureKind;
    case SweepAxis::kHe3Fraction:
      return nullptr;
  }
  return nullptr;
}

SweepSpec read_sweep(SectionReader& r) {
  SweepSpec s;
  const std::string axis = r.required_word("axis");
  try {
    s.axis = parse_axis(axis);
  } catch (const ValidationError& e) {
    r.fail("axis", e.what());
  }
  if (const Kind* kind = axis_kind(s.axis)) {
    s.start = r.required_quantity("start", *kind);
    s.stop = r.required_quantity("stop", *kind);
  } else {
    s.start = Quantity(r.required_number("start"));
    s.stop = Quantity(r.required_number("stop"));
  }
  const std::uint64_t points = r.required_integer("points");
  if (points < 2 || points > 1000000) r.fail("points", "must be an integer in [2, 1e6]");
  s.points = static_cast<int>(points);
  const std::string scale = r.word("scale", "linear");
  if (scale == "linear") {
    s.scale = SweepScale::kLinear;
  } else if (scale == "log") {
    s.scale = SweepScale::kLog;
  } else {
    r.fail("scale", "expected 'linear' or 'log', got '" + scale + "'");
  }
  r.finish();
  if (!(s.start.value() < s.stop.value())) r.fail("stop", "sweep needs start < stop");
  if (s.scale == SweepScale::kLog && !(s.start.value() > 0.0)) {
    r.fail("start", "log sweep needs positive endpoints");
  }
  return s;
}

ringdown::SimConfig read_sim(SectionReader& r) {
  ringdown::SimConfig c;
  c.dt = r.quantity("dt", kTimeKind, c.dt);
  c.duration = r.quantity("duration", kTimeKind, c.duration);
  c.seed = r.integer("seed", c.seed);
  c.initial_amplitude = r.quantity("initial_amplitude", kLengthKind, c.initial_amplitude);
  c.initial_velocity = r.quantity("initial_velocity", kVelocityKind, c.initial_velocity);
  c.record_decimation = r.integer("record_decimation", c.record_decimation);
  c.max_linear_amplitude = r.quantity("max_linear_amplitude", kLengthKind, c.max_linear_amplitude);
  const std::string drive = r.word("drive", "none");
  if (drive == "none") {
    c.drive = ringdown::NoDrive{};
  } else if (drive == "impulse") {
    c.drive = ringdown::ImpulseDrive{r.required_quantity("drive_impulse", kImpulseKind)};
  } else if (drive == "sinusoid") {
    ringdown::SinusoidDrive s;
    s.force = r.required_quantity("drive_force", kForceKind);
    s.omega = r.required_quantity("drive_omega", kAngularKind);
    s.t_on = r.quantity("drive_t_on", kTimeKind, s.t_on);
    s.t_off = r.required_quantity("drive_t_off", kTimeKind);
    c.drive = s;
  } else {
    r.fail("drive", "expected 'none', 'impulse' or 'sinusoid', got '" + drive + "'");
  }
  r.finish();
  if (c.record_decimation < 1) r.fail("record_decimation", "must be >= 1");
  return c;
}

void line(std::ostringstream& out, std::string_view key, const std::string& value) {
  out << key << " = " << value << '\n';
}

void line(std::ostringstream& out, std::string_view key, const Quantity& q, const Kind& kind) {
  line(out, key, format_double(q.value()) + " " + std::string(kind.canonical));
}

void line(std::ostringstream& out, std::string_view key, double v) {
  line(out, key, format_double(v));
}

}  // namespace

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSeparation:
      return "separation_d";
    case SweepAxis::kTemperature:
      return "temperature_T";
    case SweepAxis::kHe3Fraction:
      return "he3_fraction_x3";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "separation_d") return SweepAxis::kSeparation;
  if (name == "temperature_T") return SweepAxis::kTemperature;
  if (name == "he3_fraction_x3") return SweepAxis::kHe3Fraction;
  throw ConfigError("unknown sweep axis '" + std::string(name) +
                    "' (expected separation_d, temperature_T or he3_fraction_x3)");
}

SweepSpec default_sweep(SweepAxis axis) {
  SweepSpec s;
  s.axis = axis;
  s.scale = SweepScale::kLog;
  switch (axis) {
    case SweepAxis::kSeparation:
      s.start = 1.0 * units::um;
      s.stop = 1.0 * units::mm;
      s.points = 61;
      break;
    case SweepAxis::kTemperature:
      s.start = 5.0 * units::mK;
      s.stop = 90.0 * units::mK;
      s.points = 50;
      break;
    case SweepAxis::kHe3Fraction:
      s.start = Quantity(1e-12);
      s.stop = Quantity(1e-8);
      s.points = 41;
      break;
  }
  return s;
}

ExperimentConfig load_config(std::string_view text) {
  auto sections = split_sections(text);
  ExperimentConfig config;

  const auto membrane_it = sections.find("membrane");
  if (membrane_it == sections.end()) throw ConfigError("config: missing [membrane] section");
  {
    SectionReader r(membrane_it->second);
    config.membrane = read_membrane(r, config.support);
  }
  if (auto it = sections.find("environment"); it != sections.end()) {
    SectionReader r(it->second);
    config.environment = read_environment(&r);
  }
  if (auto it = sections.find("geometry"); it != sections.end()) {
    SectionReader r(it->second);
    config.geometry = read_geometry(r, config.coefficient);
  }
  if (auto it = sections.find("readout"); it != sections.end()) {
    SectionReader r(it->second);
    config.readout = read_readout(r);
  }
  if (auto it = sections.find("sweep"); it != sections.end()) {
    SectionReader r(it->second);
    config.sweep = read_sweep(r);
    const auto& s = *config.sweep;
    if (s.axis == SweepAxis::kSeparation && !config.geometry) {
      r.fail("axis", "a separation_d sweep needs a [geometry] section");
    }
    if (s.axis == SweepAxis::kHe3Fraction && config.environment.medium != MediumKind::kHelium) {
      r.fail("axis", "a he3_fraction_x3 sweep needs medium = helium");
    }
    if (s.axis == SweepAxis::kTemperature) {
      if (!(s.start.value() > 0.0)) r.fail("start", "temperatures must be positive");
      if (config.environment.medium == MediumKind::kHelium &&
          s.stop.value() >= config.environment.medium_valid_below.value()) {
        r.fail("stop", "helium sweep must stay below " +
                           format_double(config.environment.medium_valid_below.value()) +
                           " K (0.6 K limit)");
      }
    }
    if (s.axis == SweepAxis::kSeparation && !(s.start.value() > 0.0)) {
      r.fail("start", "separations must be positive");
    }
    if (s.axis == SweepAxis::kHe3Fraction && !(s.start.value() >= 0.0)) {
      r.fail("start", "3He fractions must be non-negative");
    }
  }
  if (auto it = sections.find("sim"); it != sections.end()) {
    SectionReader r(it->second);
    config.sim = read_sim(r);
    try {
      const OperatingPoint op = operating_point(config);
      ringdown::validate(*config.sim, op.m_eff * config.environment.meff_multiplier, op.k,
                         op.gamma_total);
    } catch (const ValidationError& e) {
      r.fail("", e.what());
    }
  }
  return config;
}

std::string effective_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << " effective configuration\n";
  out << "# every default resolved; values in SI units\n\n";

  const auto& m = c.membrane;
  out << "[membrane]\n";
  line(out, "side_x", m.side_x, kLengthKind);
  line(out, "side_y", m.side_y, kLengthKind);
  line(out, "thickness", m.thickness, kLengthKind);
  line(out, "density", m.density, kDensityKind);
  line(out, "stress", m.stress, kPressureKind);
  for (const auto& p : m.q_intrinsic) {
    line(out, "q_intrinsic", format_double(p.q) + " @ " + format_double(p.temperature.value()) + " K");
  }
  if (m.override_k) line(out, "spring_constant", *m.override_k, kStiffnessKind);
  if (m.override_f0) line(out, "frequency", *m.override_f0, kFrequencyKind);
  line(out, "max_linear_amplitude", m.max_linear_amplitude, kLengthKind);
  if (c.support) {
    line(out, "support_mass_ratio", c.support->mass_ratio);
    line(out, "mount_q", c.support->mount_q);
  }

  const auto& e = c.environment;
  out << "\n[environment]\n";
  line(out, "medium", e.medium == MediumKind::kHelium ? "helium" : "vacuum");
  line(out, "temperature", e.temperature, kTemperatureKind);
  line(out, "he3_fraction", e.he3_fraction);
  line(out, "medium_valid_below", e.medium_valid_below, kTemperatureKind);
  line(out, "meff_multiplier", e.meff_multiplier);

  if (c.geometry) {
    const auto& g = *c.geometry;
    out << "\n[geometry]\n";
    line(out, "radius", g.radius, kLengthKind);
    line(out, "separation", g.separation, kLengthKind);
    if (g.conducting_spot_diameter) line(out, "spot_diameter", *g.conducting_spot_diameter, kLengthKind);
    if (g.film_thickness) line(out, "film_thickness", *g.film_thickness, kLengthKind);
    line(out, "coefficient",
         c.coefficient == casimir::ThermalCoefficient::kStated ? "stated" : "ideal-metal-pfa");
  }

  if (c.readout) {
    out << "\n[readout]\n";
    line(out, "gap", c.readout->gap, kLengthKind);
    line(out, "bias", c.readout->bias_voltage, kVoltageKind);
  }

  if (c.sweep) {
    const auto& s = *c.sweep;
    out << "\n[sweep]\n";
    line(out, "axis", std::string(axis_name(s.axis)));
    if (const Kind* kind = axis_kind(s.axis)) {
      line(out, "start", s.start, *kind);
      line(out, "stop", s.stop, *kind);
    } else {
      line(out, "start", s.start.value());
      line(out, "stop", s.stop.value());
    }
    line(out, "points", std::to_string(s.points));
    line(out, "scale", s.scale == SweepScale::kLog ? "log" : "linear");
  }

  if (c.sim) {
    const auto& s = *c.sim;
    out << "\n[sim]\n";
    out << "# rng: " << ringdown::kRngAlgorithm << '\n';
    line(out, "dt", s.dt, kTimeKind);
    line(out, "duration", s.duration, kTimeKind);
    line(out, "seed", std::to_string(s.seed));
    line(out, "initial_amplitude", s.initial_amplitude, kLengthKind);
    line(out, "initial_velocity", s.initial_velocity, kVelocityKind);
    line(out, "record_decimation", std::to_string(s.record_decimation));
    line(out, "max_linear_amplitude", s.max_linear_amplitude, kLengthKind);
    if (const auto* kick = std::get_if<ringdown::ImpulseDrive>(&s.drive)) {
      line(out, "drive", "impulse");
      line(out, "drive_impulse", kick->impulse, kImpulseKind);
    } else if (const auto* sine = std::get_if<ringdown::SinusoidDrive>(&s.drive)) {
      line(out, "drive", "sinusoid");
      line(out, "drive_force", sine->force, kForceKind);
      line(out, "drive_omega", sine->omega, kAngularKind);
      line(out, "drive_t_on", sine->t_on, kTimeKind);
      line(out, "drive_t_off", sine->t_off, kTimeKind);
    } else {
      line(out, "drive", "none");
    }
  }
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : effective_config(config)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mkit::experiment
