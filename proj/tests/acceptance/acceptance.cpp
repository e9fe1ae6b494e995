// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "membranekit/casimir.hpp"
#include "membranekit/experiment.hpp"
#include "membranekit/helium.hpp"
#include "membranekit/noise.hpp"
#include "oracle.hpp"
#include "scenarios.hpp"

using namespace mkit;

namespace {

// Criterion 1
constexpr double kStatedToleranceRel = 0.30;
constexpr double kOracleRel = 1e-12;
// Criterion 2
constexpr int kRoundTripCases = 100;
constexpr double kRoundTripRel = 1e-12;
// Criterion 3
constexpr double kPhononSlope = 4.0;
constexpr double kPhononSlopeTol = 0.01;
constexpr double kQ7TempLo = 0.020, kQ7TempHi = 0.080;
// Criterion 4
constexpr double kHe3TSlope = 0.5, kHe3XSlope = 1.0, kHe3SlopeTol = 0.01;
constexpr double kParityFactor = 10.0;
constexpr double kInversionRel = 1e-10;
// Criterion 5
constexpr double kEnvelopeRel = 1e-3;
constexpr double kEquipartitionRel = 0.05;
constexpr double kEquipartitionRelaxTimes = 5000.0;
// Criterion 6
constexpr double kNoiselessRel = 0.01;
constexpr double kNoisyMedianRel = 0.05;
constexpr int kNoisySeeds = 100;
constexpr double kAgreementSigmas = 3.0;

struct Check {
  bool ok = true;
  std::vector<std::string> detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) ok = false;
    detail.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { detail.push_back("info " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
std::string fmt(const char* f, double a, double b, double c) {
  char buf[240];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::fabs(a / b - 1.0); }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

const Quantity kRho = 3100.0 * units::kg_per_m3;
const Quantity kThick = 50.0 * units::nm;

Check force_noise_floor() {
  Check c;
  const Quantity w0 = 2.0 * oracle::kPi * 1e5 * units::rad_per_s;
  struct Case {
    double t, q, paper;
  };
  for (const Case k : {Case{300.0, 1e6, 7e-16}, Case{0.3, 1e7, 7e-18}}) {
    const double s = noise::force_noise_density(30.0 * units::N_per_m, k.t * units::K, w0, Quantity(k.q)).value();
    const double hand = oracle::force_noise(30.0, k.t, w0.value(), k.q);
    c.expect(rel(s, k.paper) <= kStatedToleranceRel,
             fmt("T=%g K: S_f=%.4e N/Hz^1/2 vs stated %.0e within 30%%", k.t, s, k.paper));
    c.expect(rel(s, hand) <= kOracleRel, fmt("T=%g K: hand substitution rel diff %.2e", k.t, rel(s, hand)));
  }
  return c;
}

Check snr_unity() {
  Check c;
  gen::Source src(2024);
  double worst = 0.0;
  for (int i = 0; i < kRoundTripCases; ++i) {
    const Quantity r = src.log_uniform(1e-4, 1e-1) * units::m;
    const Quantity t = src.log_uniform(1e-3, 1e3) * units::K;
    const Quantity s_f = src.log_uniform(1e-20, 1e-12) * units::N_per_rtHz;
    const Quantity d = noise::snr_unity_distance(r, t, s_f);
    worst = std::max(worst, rel(casimir::thermal_sphere_plane(r, t, d).value(), s_f.value()));
  }
  c.expect(worst <= kRoundTripRel, fmt("worst round-trip rel error %.2e over 100 inputs", worst));

  const auto config = experiment::load_config(
      "[membrane]\nspring_constant = 30 N/m\nfrequency = 100 kHz\nq_intrinsic = 1e6 @ 300 K\n"
      "[environment]\ntemperature = 300 K\n[geometry]\nradius = 1 cm\nseparation = 26 um\n");
  const auto report = experiment::noise_report(config);
  double stated = 0.0, recomputed = 0.0;
  for (const auto& e : report.entries) {
    if (e.name == "snr_unity_d.paper_stated") stated = e.value;
    if (e.name == "snr_unity_d.recomputed") recomputed = e.value;
  }
  c.expect(stated == 26e-6, fmt("report carries snr_unity_d.paper_stated = %.3g m", stated));
  const double s_f = oracle::force_noise(30.0, 300.0, 2.0 * oracle::kPi * 1e5, 1e6);
  c.expect(recomputed > 0.0 && rel(recomputed, oracle::snr_unity_d(0.01, 300.0, s_f)) <= kRoundTripRel,
           fmt("report carries snr_unity_d.recomputed = %.4e m", recomputed));
  return c;
}

Check phonon_damping() {
  Check c;
  const auto config = experiment::load_config("[membrane]\n[environment]\nmedium = helium\n");
  experiment::SweepSpec sweep{experiment::SweepAxis::kTemperature, 5.0 * units::mK, 90.0 * units::mK, 50,
                              experiment::SweepScale::kLog};
  const auto result = experiment::total_q_vs_temperature(config, sweep);
  std::size_t col = 0;
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (result.columns[i].name == "gamma_phonon") col = i;
  }
  std::vector<double> t, g;
  for (const auto& row : result.rows) {
    t.push_back(row[0]);
    g.push_back(row[col]);
  }
  const double slope = loglog_slope(t, g);
  c.expect(col > 0 && std::fabs(slope - kPhononSlope) <= kPhononSlopeTol,
           fmt("log-log slope over [5, 90] mK = %.6f", slope));
  const auto op = experiment::operating_point(config);
  const double t7 = helium::temperature_for_phonon_q(op.omega0, 1e7, kRho, kThick).value();
  c.expect(t7 >= kQ7TempLo && t7 <= kQ7TempHi, fmt("phonon-limited Q = 1e7 at %.4f K (stated ~0.03 K)", t7));
  return c;
}

Check he3_damping() {
  Check c;
  std::vector<double> ts, gt, xs, gx;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.005 * std::pow(18.0, i / 19.0);
    ts.push_back(t);
    gt.push_back(helium::he3_damping_rate(t * units::K, 1e-10, kRho, kThick).value());
    const double x = 1e-12 * std::pow(1e4, i / 19.0);
    xs.push_back(x);
    gx.push_back(helium::he3_damping_rate(0.03 * units::K, x, kRho, kThick).value());
  }
  const double st = loglog_slope(ts, gt), sx = loglog_slope(xs, gx);
  c.expect(std::fabs(st - kHe3TSlope) <= kHe3SlopeTol, fmt("temperature slope %.6f", st));
  c.expect(std::fabs(sx - kHe3XSlope) <= kHe3SlopeTol, fmt("concentration slope %.6f", sx));

  const double he3 = helium::he3_damping_rate(0.03 * units::K, 1e-10, kRho, kThick).value();
  const double ph = helium::phonon_damping_rate(0.03 * units::K, kRho, kThick).value();
  const double ratio = he3 / ph;
  c.expect(ratio <= kParityFactor && ratio >= 1.0 / kParityFactor,
           fmt("3He / phonon at 30 mK, x3 = 1e-10: %.4f", ratio));

  gen::Source src(4);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = src.uniform(1e-3, 0.09);
    const double x3 = src.log_uniform(1e-10, 1e-5);
    const double bg = src.log_uniform(1e-8, 1e-4);
    const double measured = bg + helium::phonon_damping_rate(t * units::K, kRho, kThick).value() +
                            helium::he3_damping_rate(t * units::K, x3, kRho, kThick).value();
    const auto est = helium::infer_he3_concentration(measured * units::per_s, t * units::K,
                                                     helium::Background{bg * units::per_s, true}, kRho, kThick);
    worst = std::max(worst, est.below_detection_floor ? 1.0 : rel(est.x3, x3));
  }
  c.expect(worst <= kInversionRel, fmt("worst inversion rel error %.2e over 200 inputs", worst));
  return c;
}

Check simulator() {
  Check c;
  const double env = scenario::envelope_error(1e3, 10.0);
  c.expect(env <= kEnvelopeRel, fmt("T=0 envelope at Q=1e3 over 10 decay times: max rel dev %.2e", env));
  const double drift = scenario::energy_drift(1e4);
  c.expect(drift <= 1e-6, fmt("undamped energy drift over 1e4 periods %.2e", drift));
  for (double q : {1e2, 1e3, 1e4}) {
    const double ratio = scenario::equipartition_ratio(q, kEquipartitionRelaxTimes, 17);
    c.expect(std::fabs(ratio - 1.0) <= kEquipartitionRel,
             fmt("Q=%g: <x^2> / (k_b T / k) = %.4f over %g relaxation times", q, ratio, kEquipartitionRelaxTimes));
  }
  const auto a = scenario::noisy_ringdown(1e3, 5.0, 99);
  const auto b = scenario::noisy_ringdown(1e3, 5.0, 99);
  c.expect(a == b, "seeded reruns are bit-identical");
  return c;
}

Check estimators() {
  Check c;
  const auto clean = ringdown::fit_ringdown(scenario::clean_ringdown(1e6, 2000.0));
  c.expect(clean.converged && rel(clean.q_fit, 1e6) <= kNoiselessRel,
           fmt("noiseless Q=1e6: q_fit = %.6e", clean.q_fit));
  const auto stats = scenario::noisy_fit_stats(1e3, kNoisySeeds);
  c.expect(std::fabs(stats.median_error) <= kNoisyMedianRel,
           fmt("300 K, 100 seeds, 30 thermal amplitudes: median rel error %+.4f", stats.median_error) +
               fmt(", mean %+.4f", stats.mean_error) + fmt(", rms pull %.2f", stats.rms_pull));
  // Not gated: at the 0.18 nm linear limit one record carries ~11 thermal
  // amplitudes and the fit is noise-limited.
  const auto limit = scenario::noisy_fit_stats(1e3, kNoisySeeds, 10.0, 0.18e-9);
  c.note(fmt("same at 0.18 nm: median rel error %+.4f", limit.median_error) +
         fmt(", mean %+.4f", limit.mean_error) + fmt(", rms pull %.2f", limit.rms_pull));
  const auto agree = scenario::estimator_agreement(1e3, 21);
  c.expect(agree.difference <= kAgreementSigmas * agree.combined_sigma,
           fmt("Q=1e3: Lorentzian %.1f vs ring-down %.1f, combined sigma %.1f", agree.spectral.q_fit,
               agree.ringdown.q_fit, agree.combined_sigma));
  return c;
}

Check phonon_casimir() {
  Check c;
  gen::Source src(7);
  bool exact = true;
  for (int i = 0; i < 1000; ++i) {
    const Quantity r = src.log_uniform(1e-6, 1.0) * units::m;
    const Quantity t = src.log_uniform(1e-4, 1e3) * units::K;
    const Quantity d = src.log_uniform(1e-9, 1e-2) * units::m;
    for (auto coeff : {casimir::ThermalCoefficient::kStated, casimir::ThermalCoefficient::kIdealMetalPfa}) {
      exact = exact && casimir::phonon_thermal_sphere_plane(r, t, d, coeff).value() ==
                           0.5 * casimir::thermal_sphere_plane(r, t, d, coeff).value();
    }
    exact = exact && casimir::phonon_thermal_plane_plane_pressure(t, d).value() ==
                         0.5 * casimir::thermal_plane_plane_pressure(t, d).value();
  }
  c.expect(exact, "phonon thermal force and pressure are exactly half over 1000 random inputs");
  return c;
}

Check row_equivalence() {
  Check c;
  const char* doc =
      "[membrane]\n[environment]\nmedium = helium\nhe3_fraction = 1e-10\n"
      "[geometry]\nradius = 1 cm\nseparation = 26 um\n";
  const auto config = experiment::load_config(doc);
  using experiment::SweepAxis;

  bool temp_ok = true;
  for (const auto& row : experiment::total_q_vs_temperature(config, experiment::default_sweep(SweepAxis::kTemperature)).rows) {
    auto point = config;
    point.environment.temperature = row[0] * units::K;
    const auto op = experiment::operating_point(point);
    temp_ok = temp_ok && row.back() == op.q_total && row[row.size() - 2] == op.gamma_total.value();
  }
  c.expect(temp_ok, "temperature sweep rows equal single-point operating points");

  bool sep_ok = true;
  const double s_f = experiment::operating_point(config).s_f.value();
  for (const auto& row : experiment::snr_vs_separation(config, experiment::default_sweep(SweepAxis::kSeparation)).rows) {
    const Quantity d = row[0] * units::m;
    const double thermal = casimir::thermal_sphere_plane(1.0 * units::cm, 0.03 * units::K, d).value();
    sep_ok = sep_ok && row[1] == thermal && row[2] == casimir::zero_temp_sphere_plane(1.0 * units::cm, d).value() &&
             row[3] == casimir::phonon_thermal_sphere_plane(1.0 * units::cm, 0.03 * units::K, d).value() &&
             row[4] == s_f && row[5] == thermal / s_f;
  }
  c.expect(sep_ok, "separation sweep rows equal single-point force and noise calls");

  bool x3_ok = true;
  for (const auto& row : experiment::he3_fraction_sweep(config, experiment::default_sweep(SweepAxis::kHe3Fraction)).rows) {
    auto point = config;
    point.environment.he3_fraction = row[0];
    const auto op = experiment::operating_point(point);
    x3_ok = x3_ok && row[4] == op.q_total && row[3] == op.gamma_total.value() &&
            row[1] == helium::he3_damping_rate(0.03 * units::K, row[0], kRho, kThick).value();
  }
  c.expect(x3_ok, "3He fraction sweep rows equal single-point operating points");

  const std::string echo = experiment::effective_config(config);
  const auto again = experiment::load_config(echo);
  c.expect(again == config && experiment::effective_config(again) == echo,
           "effective configuration is a fixed point of the parser");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "thermal force-noise floor", force_noise_floor},
      {2, "unit-S/N separation consistency", snr_unity},
      {3, "phonon damping scaling", phonon_damping},
      {4, "3He damping scaling and inversion", he3_damping},
      {5, "simulator physics", simulator},
      {6, "Q estimators", estimators},
      {7, "phonon Casimir half-force identity", phonon_casimir},
      {8, "sweep row equivalence and config fixed point", row_equivalence},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = cr.run();
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1f s)\n", check.ok ? "PASS" : "FAIL", cr.id, cr.name, secs);
    for (const auto& d : check.detail) std::printf("         %s\n", d.c_str());
    std::fflush(stdout);
    if (!check.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
