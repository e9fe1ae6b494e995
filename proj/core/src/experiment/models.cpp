#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "membranekit/constants.hpp"
#include "membranekit/experiment.hpp"
#include "membranekit/helium.hpp"
#include "membranekit/noise.hpp"
#include "membranekit/roots.hpp"

namespace mkit::experiment {

namespace {

using RowFn = std::function<std::vector<double>(double)>;

// Evaluates rows on worker threads; results land at their axis index.
std::vector<std::vector<double>> evaluate_rows(const std::vector<double>& axis, const RowFn& row) {
  std::vector<std::vector<double>> rows(axis.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(axis.size() / 8, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < axis.size(); ++i) rows[i] = row(axis[i]);
    return rows;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < axis.size(); i += workers) rows[i] = row(axis[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

Provenance make_provenance(const ExperimentConfig& config) {
  return {std::string(kToolName) + " " + std::string(kToolVersion), config_hash(config),
          std::string(constants::kConstantSetName)};
}

void check_axis(const SweepSpec& sweep, SweepAxis expected) {
  if (sweep.axis != expected) {
    throw ConfigError("sweep axis is " + std::string(axis_name(sweep.axis)) + ", expected " +
                      std::string(axis_name(expected)));
  }
}

// Root of f between consecutive rows where f changes sign.
std::optional<double> crossing(const std::vector<double>& axis, const std::function<double(double)>& f) {
  double prev = f(axis.front());
  for (std::size_t i = 1; i < axis.size(); ++i) {
    const double cur = f(axis[i]);
    if (prev == 0.0) return axis[i - 1];
    if ((prev > 0.0) != (cur > 0.0)) return bisect_monotone(f, axis[i - 1], axis[i], 1e-12);
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> sweep_values(const SweepSpec& sweep) {
  if (sweep.points < 2) throw ConfigError("sweep needs at least 2 points");
  const double a = sweep.start.value();
  const double b = sweep.stop.value();
  if (!(a < b)) throw ConfigError("sweep needs start < stop");
  const auto n = static_cast<std::size_t>(sweep.points);
  std::vector<double> values(n);
  const double last = static_cast<double>(n - 1);
  if (sweep.scale == SweepScale::kLog) {
    if (!(a > 0.0)) throw ConfigError("log sweep needs positive endpoints");
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < n; ++i) values[i] = std::exp(la + (lb - la) * static_cast<double>(i) / last);
  } else {
    for (std::size_t i = 0; i < n; ++i) values[i] = a + (b - a) * static_cast<double>(i) / last;
  }
  values.front() = a;
  values.back() = b;
  return values;
}

membrane::DampingBudget damping_budget(const ExperimentConfig& config, const Quantity& temperature,
                                       double he3_fraction) {
  const auto& spec = config.membrane;
  membrane::DampingBudget budget;
  budget.add_q("intrinsic", membrane::intrinsic_q(spec, temperature));
  if (config.support) {
    budget.add_q("support", membrane::support_limited_q(config.support->mass_ratio,
                                                        config.support->mount_q));
  }
  if (config.environment.medium == MediumKind::kHelium) {
    budget.add_rate("phonon", helium::phonon_damping_rate(temperature, spec.density, spec.thickness));
    budget.add_rate("he3",
                    helium::he3_damping_rate(temperature, he3_fraction, spec.density, spec.thickness));
  }
  return budget;
}

OperatingPoint operating_point(const ExperimentConfig& config) {
  const auto& spec = config.membrane;
  OperatingPoint op;
  op.k = membrane::spring_constant(spec);
  op.m_eff = membrane::effective_mass(spec);
  op.f0 = membrane::mode_frequency(spec);
  op.omega0 = membrane::angular_frequency(spec);
  op.temperature = config.environment.temperature;
  const auto combined = membrane::combine_q(
      damping_budget(config, op.temperature, config.environment.he3_fraction), op.f0);
  op.q_total = combined.q_total;
  op.gamma_total = combined.gamma_total;
  op.s_f = noise::force_noise_density(op.k, op.temperature, op.omega0, Quantity(op.q_total));
  return op;
}

SweepResult total_q_vs_temperature(const ExperimentConfig& config, const SweepSpec& sweep) {
  check_axis(sweep, SweepAxis::kTemperature);
  const auto axis = sweep_values(sweep);
  const double x3 = config.environment.he3_fraction;
  const Quantity f0 = membrane::mode_frequency(config.membrane);

  SweepResult result;
  result.provenance = make_provenance(config);
  result.columns.push_back({"T", "K"});
  const auto names = damping_budget(config, axis.front() * units::K, x3).channels();
  for (const auto& ch : names) result.columns.push_back({"gamma_" + ch.name, "1/s"});
  result.columns.push_back({"gamma_total", "1/s"});
  result.columns.push_back({"q_total", "1"});

  result.rows = evaluate_rows(axis, [&](double t) {
    const auto budget = damping_budget(config, t * units::K, x3);
    std::vector<double> row{t};
    for (const auto& ch : budget.channels()) row.push_back(budget.rate_of(ch, f0).value());
    const auto combined = membrane::combine_q(budget, f0);
    row.push_back(combined.gamma_total.value());
    row.push_back(combined.q_total);
    return row;
  });

  if (config.environment.medium == MediumKind::kHelium) {
    auto rate = [&](double t, std::string_view channel) {
      const auto budget = damping_budget(config, t * units::K, x3);
      for (const auto& ch : budget.channels()) {
        if (ch.name == channel) return budget.rate_of(ch, f0).value();
      }
      return 0.0;
    };
    const auto phonon_vs_intrinsic = crossing(axis, [&](double t) {
      return std::log(rate(t, "phonon") / rate(t, "intrinsic"));
    });
    if (phonon_vs_intrinsic) {
      result.notes.push_back({"crossover_T.phonon_intrinsic", *phonon_vs_intrinsic, "K"});
    }
    if (x3 > 0.0) {
      const auto phonon_vs_he3 =
          crossing(axis, [&](double t) { return std::log(rate(t, "phonon") / rate(t, "he3")); });
      if (phonon_vs_he3) result.notes.push_back({"crossover_T.phonon_he3", *phonon_vs_he3, "K"});
    }
  }
  return result;
}

SweepResult snr_vs_separation(const ExperimentConfig& config, const SweepSpec& sweep) {
  check_axis(sweep, SweepAxis::kSeparation);
  if (!config.geometry) throw ConfigError("S/N against separation needs a [geometry] section");
  const auto axis = sweep_values(sweep);
  const auto& geometry = *config.geometry;
  const Quantity temperature = config.environment.temperature;
  const bool helium_medium = config.environment.medium == MediumKind::kHelium;
  const OperatingPoint op = operating_point(config);
  const double s_f = op.s_f.value();
  const auto coefficient = config.coefficient;

  SweepResult result;
  result.provenance = make_provenance(config);
  result.columns = {{"d", "m"}, {"force_thermal", "N"}, {"force_zero_t", "N"}};
  if (helium_medium) result.columns.push_back({"force_phonon_thermal", "N"});
  result.columns.push_back({"s_f", "N/Hz^1/2"});
  result.columns.push_back({"snr", "1"});

  result.rows = evaluate_rows(axis, [&](double d) {
    const Quantity sep = d * units::m;
    const Quantity thermal =
        casimir::thermal_sphere_plane(geometry.radius, temperature, sep, coefficient);
    std::vector<double> row{d, thermal.value(),
                            casimir::zero_temp_sphere_plane(geometry.radius, sep).value()};
    if (helium_medium) {
      row.push_back(
          casimir::phonon_thermal_sphere_plane(geometry.radius, temperature, sep, coefficient).value());
    }
    row.push_back(s_f);
    row.push_back(thermal.value() / s_f);
    return row;
  });

  const auto row_crossing = crossing(axis, [&](double d) {
    return std::log(
        casimir::thermal_sphere_plane(geometry.radius, temperature, d * units::m, coefficient).value() /
        s_f);
  });
  if (row_crossing) result.notes.push_back({"snr_unity_d.sweep_bisection", *row_crossing, "m"});
  const Quantity solved = noise::snr_unity_distance(geometry.radius, temperature, op.s_f, coefficient);
  result.notes.push_back({"snr_unity_d.recomputed", solved.value(), "m"});
  result.notes.push_back({"snr_unity_d.paper_stated", 26e-6, "m"});
  result.notes.push_back({"s_f", s_f, "N/Hz^1/2"});
  result.notes.push_back({"q_total", op.q_total, "1"});
  return result;
}

SweepResult he3_fraction_sweep(const ExperimentConfig& config, const SweepSpec& sweep) {
  check_axis(sweep, SweepAxis::kHe3Fraction);
  if (config.environment.medium != MediumKind::kHelium) {
    throw ConfigError("a 3He fraction sweep needs medium = helium");
  }
  const auto axis = sweep_values(sweep);
  const auto& spec = config.membrane;
  const Quantity temperature = config.environment.temperature;
  const Quantity f0 = membrane::mode_frequency(spec);

  SweepResult result;
  result.provenance = make_provenance(config);
  result.columns = {{"x3", "1"},          {"gamma_he3", "1/s"}, {"gamma_background", "1/s"},
                    {"gamma_total", "1/s"}, {"q_total", "1"},     {"x3_inferred", "1"}};

  result.rows = evaluate_rows(axis, [&](double x3) {
    const auto budget = damping_budget(config, temperature, x3);
    const auto combined = membrane::combine_q(budget, f0);
    double gamma_he3 = 0.0, gamma_other = 0.0;
    for (const auto& ch : budget.channels()) {
      const double rate = budget.rate_of(ch, f0).value();
      if (ch.name == "he3") {
        gamma_he3 = rate;
      } else if (ch.name != "phonon") {
        gamma_other += rate;
      }
    }
    const auto estimate = helium::infer_he3_concentration(
        combined.gamma_total, temperature, helium::Background{gamma_other * units::per_s, true},
        spec.density, spec.thickness);
    return std::vector<double>{x3,
                               gamma_he3,
                               combined.gamma_total.value() - gamma_he3,
                               combined.gamma_total.value(),
                               combined.q_total,
                               estimate.below_detection_floor ? 0.0 : estimate.x3};
  });
  return result;
}

SweepResult run_sweep(const ExperimentConfig& config, const SweepSpec& sweep) {
  switch (sweep.axis) {
    case SweepAxis::kSeparation:
      return snr_vs_separation(config, sweep);
    case SweepAxis::kTemperature:
      return total_q_vs_temperature(config, sweep);
    case SweepAxis::kHe3Fraction:
      return he3_fraction_sweep(config, sweep);
  }
  throw ConfigError("unknown sweep axis");
}

}  // namespace mkit::experiment
