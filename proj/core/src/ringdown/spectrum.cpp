#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>

#include "detail/format.hpp"
#include "detail/levenberg_marquardt.hpp"
#include "membranekit/ringdown.hpp"

namespace mkit::ringdown {

namespace {

constexpr double kPi = std::numbers::pi;
// Equivalent noise bandwidth of the Hann window, in bins: neighbouring
// periodogram bins are correlated over roughly this span.
constexpr double kHannEnbw = 1.5;
// Half-width of the Lorentzian fit window, in linewidths.
constexpr double kFitHalfWidth = 8.0;
// Resolution requirement: bin width below linewidth / 10.
constexpr double kMinBinsPerLinewidth = 10.0;

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

Spectrum power_spectrum(const TimeSeries& series) {
  const std::size_t n = series.size();
  if (n < 256) throw DomainError("power spectrum needs at least 256 samples");
  if (!(series.dt > 0.0)) throw DomainError("time series needs a positive sample interval");

  double mean = 0.0;
  for (double v : series.samples) mean += v;
  mean /= static_cast<double>(n);

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  const std::size_t bins = n / 2 + 1;
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));

  double window_power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
    window_power += w * w;
    in.get()[i] = w * (series.samples[i] - mean);
  }

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double fs = 1.0 / series.dt;
  Spectrum spectrum;
  spectrum.df = fs / static_cast<double>(n);
  spectrum.frequency.resize(bins);
  spectrum.psd.resize(bins);
  const double norm = 1.0 / (fs * window_power);
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = out.get()[k][0];
    const double im = out.get()[k][1];
    const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
    spectrum.frequency[k] = static_cast<double>(k) * spectrum.df;
    spectrum.psd[k] = (unpaired ? 1.0 : 2.0) * (re * re + im * im) * norm;
  }
  return spectrum;
}

double band_power(const Spectrum& spectrum, double f_lo, double f_hi) {
  double total = 0.0;
  for (std::size_t k = 0; k < spectrum.psd.size(); ++k) {
    const double f = spectrum.frequency[k];
    if (f >= f_lo && f <= f_hi) total += spectrum.psd[k];
  }
  return total * spectrum.df;
}

FitResult lorentzian_fit(const Spectrum& spectrum) {
  const std::size_t bins = spectrum.psd.size();
  if (bins < 16 || !(spectrum.df > 0.0)) throw DomainError("spectrum too short to fit");

  // A Lorentzian's power is Cauchy-distributed in frequency: its quartiles sit
  // at f0 -+ fwhm / 2. Periodogram scatter averages out in the cumulative sum,
  // unlike a half-maximum search. Two passes: whole spectrum, then a window
  // around the first estimate to shed broadband background.
  auto quartiles = [&](std::size_t lo, std::size_t hi, double out[3]) {
    double total = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) total += spectrum.psd[k];
    const double targets[3] = {0.25 * total, 0.5 * total, 0.75 * total};
    double running = 0.0;
    int next = 0;
    for (std::size_t k = lo; k <= hi && next < 3; ++k) {
      const double before = running;
      running += spectrum.psd[k];
      while (next < 3 && running >= targets[next]) {
        const double frac = spectrum.psd[k] > 0.0 ? (targets[next] - before) / spectrum.psd[k] : 0.0;
        out[next++] = spectrum.frequency[k] + (frac - 0.5) * spectrum.df;
      }
    }
    while (next < 3) out[next++] = spectrum.frequency[hi];
  };
  double q3[3];
  quartiles(1, bins - 1, q3);
  for (int pass = 0; pass < 2; ++pass) {
    const double width = std::max(q3[2] - q3[0], spectrum.df);
    const double lo_f = q3[1] - 40.0 * width, hi_f = q3[1] + 40.0 * width;
    const auto lo = static_cast<std::size_t>(std::clamp(std::floor(lo_f / spectrum.df), 1.0,
                                                        static_cast<double>(bins - 1)));
    const auto hi = static_cast<std::size_t>(std::clamp(std::ceil(hi_f / spectrum.df),
                                                        static_cast<double>(lo), static_cast<double>(bins - 1)));
    quartiles(lo, hi, q3);
  }
  const double fwhm_bins = (q3[2] - q3[0]) / spectrum.df;
  if (fwhm_bins < kMinBinsPerLinewidth) {
    throw ResolutionError("spectral line is not resolved (linewidth ~" +
                          detail::format_double(fwhm_bins) +
                          " bins, need >= 10); use the ring-down fit for this Q");
  }

  const double f0_guess = q3[1];
  const auto peak = static_cast<std::size_t>(std::llround(f0_guess / spectrum.df));
  const double q_guess = f0_guess / (fwhm_bins * spectrum.df);
  // Line area C pi Q / (2 f0^3) matched to the total power.
  double area = 0.0;
  for (std::size_t k = 1; k < bins; ++k) area += spectrum.psd[k];
  area *= spectrum.df;
  const double c_guess = area * 2.0 * f0_guess * f0_guess * f0_guess / (kPi * q_guess);

  const auto span = static_cast<std::size_t>(std::ceil(kFitHalfWidth * fwhm_bins));
  const std::size_t first = peak > span + 1 ? peak - span : 1;
  const std::size_t last = std::min(bins - 1, peak + span);
  std::vector<double> fs, logp;
  for (std::size_t k = first; k <= last; ++k) {
    if (spectrum.psd[k] > 0.0 && spectrum.frequency[k] > 0.0) {
      fs.push_back(spectrum.frequency[k]);
      logp.push_back(std::log(spectrum.psd[k]));
    }
  }
  if (fs.size() < 8) throw NumericalError("too few positive bins around the spectral line");

  using Vec = Eigen::Matrix<double, 3, 1>;
  using Mat = Eigen::Matrix<double, 3, 3>;
  // Parameters (log C, f0, log Q).
  auto normal_equations = [&](const Vec& p, Mat* jtj, Vec* jtr) {
    const double log_c = p(0), f0 = p(1), q = std::exp(p(2));
    double cost = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const double f = fs[i];
      const double detune = f0 * f0 - f * f;
      const double loss = f0 * f / q;
      const double denom = detune * detune + loss * loss;
      const double r = logp[i] - (log_c - std::log(denom));
      cost += r * r;
      if (jtj != nullptr) {
        Vec grad;
        grad << 1.0, -(4.0 * f0 * detune + 2.0 * loss * f / q) / denom, 2.0 * loss * loss / denom;
        jtj->noalias() += grad * grad.transpose();
        jtr->noalias() += grad * r;
      }
    }
    return cost;
  };

  Vec p0;
  p0 << std::log(c_guess), f0_guess, std::log(q_guess);
  const auto lm = detail::levenberg_marquardt<3>(p0, normal_equations);

  const double f0 = lm.params(1);
  const double q = std::exp(lm.params(2));
  if (!(f0 > 0.0) || !std::isfinite(q)) throw NumericalError("Lorentzian fit diverged");
  if (!(spectrum.df < f0 / (kMinBinsPerLinewidth * q))) {
    throw ResolutionError("fitted linewidth " + detail::format_double(f0 / q) +
                          " Hz is not resolved by bins of " + detail::format_double(spectrum.df) +
                          " Hz; use the ring-down fit for this Q");
  }

  FitResult result;
  result.omega_fit = 2.0 * kPi * f0;
  result.q_fit = q;
  result.gamma_fit = result.omega_fit / q;
  const double c = std::exp(lm.params(0));
  // Area of C / D over f from 0 to infinity is C pi Q / (2 f0^3).
  result.amplitude_fit = std::sqrt(c * kPi * q / (2.0 * f0 * f0 * f0));
  result.phase_fit = 0.0;
  double resid = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double f = fs[i];
    const double detune = f0 * f0 - f * f;
    const double loss = f0 * f / q;
    const double model = c / (detune * detune + loss * loss);
    resid += std::pow(std::exp(logp[i]) - model, 2.0);
  }
  result.residual_rms = std::sqrt(resid / static_cast<double>(fs.size()));
  result.converged = lm.converged;
  const double s2 = lm.cost / std::max(static_cast<double>(fs.size()) - 3.0, 1.0);
  const Mat cov = lm.jtj.ldlt().solve(Mat::Identity()) * (s2 * kHannEnbw);
  result.q_uncertainty = cov.allFinite() ? q * std::sqrt(std::max(cov(2, 2), 0.0))
                                         : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace mkit::ringdown
