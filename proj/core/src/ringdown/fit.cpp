#include <algorithm>
#include <array>
#include <complex>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "detail/levenberg_marquardt.hpp"
#include "membranekit/ringdown.hpp"

namespace mkit::ringdown {

namespace {

constexpr double kPi = std::numbers::pi;
// Exact exp/cos/sin are re-anchored every kBlock samples; in between the
// phasor is advanced by complex multiplication.
constexpr std::size_t kBlock = 256;

struct Peak {
  double time;
  double magnitude;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit regress(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

// Walks the record evaluating model = exp(-g tau / 2) (B cos w tau + C sin w tau).
// `visit(i, e, c, s)` receives the envelope and phasor for sample i.
template <class Visit>
void sweep_model(const TimeSeries& series, double gamma, double omega, Visit&& visit) {
  const std::size_t n = series.size();
  const double h = series.dt;
  const double step_decay = std::exp(-0.5 * gamma * h);
  const double step_c = std::cos(omega * h);
  const double step_s = std::sin(omega * h);
  for (std::size_t start = 0; start < n; start += kBlock) {
    const double tau0 = h * static_cast<double>(start);
    double e = std::exp(-0.5 * gamma * tau0);
    double c = std::cos(omega * tau0);
    double s = std::sin(omega * tau0);
    const std::size_t stop = std::min(n, start + kBlock);
    for (std::size_t i = start; i < stop; ++i) {
      visit(i, e, c, s);
      const double nc = c * step_c - s * step_s;
      s = s * step_c + c * step_s;
      c = nc;
      e *= step_decay;
    }
  }
}

struct Initial {
  double omega = 0.0;
  double gamma = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// Solves for (B, C) by linear least squares at fixed (gamma, omega).
void linear_amplitudes(const TimeSeries& series, Initial& init) {
  double scc = 0.0, sss = 0.0, scs = 0.0, sxc = 0.0, sxs = 0.0;
  sweep_model(series, init.gamma, init.omega, [&](std::size_t i, double e, double c, double s) {
    const double ec = e * c;
    const double es = e * s;
    const double x = series.samples[i];
    scc += ec * ec;
    sss += es * es;
    scs += ec * es;
    sxc += x * ec;
    sxs += x * es;
  });
  const double det = scc * sss - scs * scs;
  if (det > 0.0) {
    init.b = (sxc * sss - sxs * scs) / det;
    init.c = (sxs * scc - sxc * scs) / det;
  }
}

Initial initial_estimate(const TimeSeries& series) {
  const auto& x = series.samples;
  const double h = series.dt;

  std::vector<double> crossings;
  std::vector<std::size_t> crossing_index;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const bool before = x[i - 1] >= 0.0;
    const bool after = x[i] >= 0.0;
    if (before != after) {
      const double frac = x[i - 1] / (x[i - 1] - x[i]);
      crossings.push_back(series.t0 + h * (static_cast<double>(i - 1) + frac));
      crossing_index.push_back(i);
    }
  }
  if (crossings.size() < 40) {
    throw DomainError("ring-down record must cover at least 20 oscillation periods");
  }

  // Largest |x| between successive crossings, refined by a parabola.
  std::vector<Peak> peaks;
  for (std::size_t j = 0; j + 1 < crossing_index.size(); ++j) {
    std::size_t best = crossing_index[j];
    for (std::size_t i = crossing_index[j]; i < crossing_index[j + 1]; ++i) {
      if (std::fabs(x[i]) > std::fabs(x[best])) best = i;
    }
    double t = series.time(best);
    double mag = std::fabs(x[best]);
    if (best > 0 && best + 1 < x.size()) {
      const double ym = std::fabs(x[best - 1]);
      const double y0 = mag;
      const double yp = std::fabs(x[best + 1]);
      const double denom = ym - 2.0 * y0 + yp;
      if (denom < 0.0) {
        const double offset = 0.5 * (ym - yp) / denom;
        t += offset * h;
        mag = y0 - 0.25 * (ym - yp) * offset;
      }
    }
    peaks.push_back({t, mag});
  }

  double p_max = 0.0;
  for (const auto& p : peaks) p_max = std::max(p_max, p.magnitude);
  std::vector<double> tail;
  for (std::size_t j = peaks.size() - peaks.size() / 5; j < peaks.size(); ++j) {
    tail.push_back(peaks[j].magnitude);
  }
  const double floor = median(tail);
  // A tail comparable to the maximum means the record never decays into noise.
  const double threshold = floor > 0.5 * p_max ? 0.0 : std::max(3.0 * floor, 1e-9 * p_max);

  std::size_t usable = 0;
  while (usable < peaks.size() && peaks[usable].magnitude > threshold) ++usable;
  usable = std::max<std::size_t>(usable, 4);

  std::vector<double> idx, times;
  for (std::size_t j = 0; j <= usable && j < crossings.size(); ++j) {
    idx.push_back(static_cast<double>(j));
    times.push_back(crossings[j]);
  }
  const LineFit spacing = regress(idx, times);

  std::vector<double> pt, logp;
  for (std::size_t j = 0; j < usable; ++j) {
    pt.push_back(peaks[j].time - series.t0);
    logp.push_back(std::log(peaks[j].magnitude));
  }
  const LineFit envelope = regress(pt, logp);

  Initial init;
  init.omega = kPi / spacing.slope;
  init.gamma = std::max(-2.0 * envelope.slope, 0.0);
  linear_amplitudes(series, init);
  return init;
}

// Residual covariance modelled as thermal motion of the fitted mode, possibly
// still building up from a prepared initial state, plus white noise:
//   C(t, s) = [A exp(-g |t - s| / 2) - B exp(-g (t + s) / 2)] cos(w (t - s))
//             + W [t == s],   0 <= B <= A.
// B = A is a ring-down started from rest; B = 0 a thermalised start.
struct NoiseModel {
  double a = 0.0;
  double b = 0.0;
  double white = 0.0;
};

NoiseModel residual_noise(const std::vector<double>& r, double h, double gamma, double omega) {
  const std::size_t n = r.size();
  NoiseModel model;
  double c0 = 0.0;
  for (double v : r) c0 += v * v;
  c0 /= static_cast<double>(n);
  if (!(gamma > 0.0) || n < 64) {
    model.white = c0;
    return model;
  }
  const double per_period = 2.0 * kPi / (omega * h);
  const std::size_t lags =
      std::clamp<std::size_t>(static_cast<std::size_t>(per_period), 4, std::min<std::size_t>(64, n / 16));
  std::vector<double> shape(lags + 1);
  double shape_norm = 0.0;
  for (std::size_t l = 1; l <= lags; ++l) {
    const double tau = h * static_cast<double>(l);
    shape[l] = std::exp(-0.5 * gamma * tau) * std::cos(omega * tau);
    shape_norm += shape[l] * shape[l];
  }
  if (!(shape_norm > 0.0)) {
    model.white = c0;
    return model;
  }

  // Thermal power per block from short-lag autocovariances, regressed on
  // [1, -exp(-g t)].
  const std::size_t blocks = std::clamp<std::size_t>(n / (8 * lags), 1, 16);
  const std::size_t len = n / blocks;
  double s11 = 0.0, s12 = 0.0, s22 = 0.0, y1 = 0.0, y2 = 0.0;
  std::vector<double> power(blocks), decay(blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t lo = k * len;
    const std::size_t hi = k + 1 == blocks ? n : lo + len;
    double proj = 0.0;
    for (std::size_t l = 1; l <= lags; ++l) {
      double sum = 0.0;
      for (std::size_t i = lo; i < hi && i + l < n; ++i) sum += r[i] * r[i + l];
      proj += sum / static_cast<double>(hi - lo) * shape[l];
    }
    power[k] = proj / shape_norm;
    decay[k] = std::exp(-gamma * h * 0.5 * static_cast<double>(lo + hi));
    s11 += 1.0;
    s12 -= decay[k];
    s22 += decay[k] * decay[k];
    y1 += power[k];
    y2 -= decay[k] * power[k];
  }
  const double det = s11 * s22 - s12 * s12;
  double a = 0.0, b = 0.0;
  if (blocks > 1 && det > 1e-12 * s11 * s22) {
    a = (y1 * s22 - y2 * s12) / det;
    b = (y2 * s11 - y1 * s12) / det;
  } else {
    a = y1 / s11;
  }
  if (b < 0.0) {
    b = 0.0;
    a = y1 / s11;
  } else if (b > a) {
    // Started from rest: power = A (1 - exp(-g t)).
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < blocks; ++k) {
      num += power[k] * (1.0 - decay[k]);
      den += (1.0 - decay[k]) * (1.0 - decay[k]);
    }
    a = b = den > 0.0 ? num / den : 0.0;
  }
  a = std::max(a, 0.0);
  b = std::clamp(b, 0.0, a);

  double mean_decay = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean_decay += std::exp(-gamma * h * static_cast<double>(i));
  mean_decay /= static_cast<double>(n);
  model.a = a;
  model.b = b;
  model.white = std::max(c0 - (a - b * mean_decay), 0.0);
  return model;
}

// y = C v. The stationary part uses forward and backward first-order complex
// recursions (kernel Re(A z^|l|)); the build-up term is rank two.
std::vector<double> apply_covariance(const std::vector<double>& v, const NoiseModel& noise, double h,
                                     double gamma, double omega) {
  const std::size_t n = v.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = noise.white * v[i];
  if (noise.a <= 0.0) return y;
  const std::complex<double> z = std::exp(std::complex<double>(-0.5 * gamma * h, omega * h));
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc = z * acc + v[i];
    y[i] += noise.a * acc.real();
  }
  acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n) y[i] += noise.a * (z * acc).real();
    acc = z * acc + v[i];
  }
  if (noise.b > 0.0) {
    std::complex<double> u = 1.0, proj = 0.0;
    for (std::size_t i = 0; i < n; ++i, u *= z) proj += std::conj(u) * v[i];
    u = 1.0;
    for (std::size_t i = 0; i < n; ++i, u *= z) y[i] -= noise.b * (u * proj).real();
  }
  return y;
}

}  // namespace

FitResult fit_ringdown(const TimeSeries& series, const std::optional<FitResult>& initial_guess) {
  if (!(series.dt > 0.0)) throw DomainError("time series needs a positive sample interval");
  for (double v : series.samples) {
    if (!std::isfinite(v)) throw DomainError("time series contains non-finite samples");
  }

  Initial init;
  if (initial_guess) {
    init.omega = initial_guess->omega_fit;
    init.gamma = initial_guess->gamma_fit;
    init.b = initial_guess->amplitude_fit * std::cos(initial_guess->phase_fit);
    init.c = -initial_guess->amplitude_fit * std::sin(initial_guess->phase_fit);
    initial_estimate(series);  // length check only
  } else {
    init = initial_estimate(series);
  }

  using Vec = Eigen::Matrix<double, 4, 1>;
  using Mat = Eigen::Matrix<double, 4, 4>;
  const auto& x = series.samples;
  const double h = series.dt;

  // Parameters (B, C, gamma, omega).
  auto normal_equations = [&](const Vec& p, Mat* jtj, Vec* jtr) {
    const double b = p(0), c = p(1), g = p(2), w = p(3);
    double cost = 0.0;
    sweep_model(series, g, w, [&](std::size_t i, double e, double cs, double sn) {
      const double tau = h * static_cast<double>(i);
      const double osc = b * cs + c * sn;
      const double model = e * osc;
      const double r = x[i] - model;
      cost += r * r;
      if (jtj != nullptr) {
        Vec grad;
        grad << e * cs, e * sn, -0.5 * tau * model, e * tau * (c * cs - b * sn);
        jtj->noalias() += grad * grad.transpose();
        jtr->noalias() += grad * r;
      }
    });
    return cost;
  };

  Vec p0;
  p0 << init.b, init.c, init.gamma, init.omega;
  const auto lm = detail::levenberg_marquardt<4>(p0, normal_equations);

  FitResult result;
  const double b = lm.params(0), c = lm.params(1);
  result.gamma_fit = lm.params(2);
  result.omega_fit = std::fabs(lm.params(3));
  result.amplitude_fit = std::hypot(b, c);
  result.phase_fit = std::atan2(-c, b);
  result.q_fit = result.gamma_fit > 0.0 ? result.omega_fit / result.gamma_fit
                                        : std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(x.size());
  result.residual_rms = std::sqrt(lm.cost / n);
  result.converged = lm.converged && std::isfinite(result.omega_fit) && result.omega_fit > 0.0;

  // Sandwich covariance H^-1 (J^T C J) H^-1 with C from the residual noise model.
  std::array<std::vector<double>, 4> jac;
  for (auto& col : jac) col.resize(x.size());
  std::vector<double> resid(x.size());
  sweep_model(series, result.gamma_fit, lm.params(3),
              [&](std::size_t i, double e, double cs, double sn) {
                const double tau = h * static_cast<double>(i);
                const double model = e * (b * cs + c * sn);
                resid[i] = x[i] - model;
                jac[0][i] = e * cs;
                jac[1][i] = e * sn;
                jac[2][i] = -0.5 * tau * model;
                jac[3][i] = e * tau * (c * cs - b * sn);
              });
  const NoiseModel noise = residual_noise(resid, h, result.gamma_fit, result.omega_fit);
  Mat hess = Mat::Zero(), meat = Mat::Zero();
  for (int a_col = 0; a_col < 4; ++a_col) {
    const auto cj = apply_covariance(jac[a_col], noise, h, result.gamma_fit, result.omega_fit);
    for (int b_col = 0; b_col < 4; ++b_col) {
      double hs = 0.0, ms = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        hs += jac[b_col][i] * jac[a_col][i];
        ms += jac[b_col][i] * cj[i];
      }
      hess(b_col, a_col) = hs;
      meat(b_col, a_col) = ms;
    }
  }
  const Mat hinv = hess.ldlt().solve(Mat::Identity());
  // The fit absorbs part of slowly varying noise, so the residual understates
  // it. Rescale C until the expected residual power, tr((I - P) C), matches
  // the observed one; for white noise this is the familiar n / (n - 4).
  const double rss = lm.cost;
  const double expected = rss - (hinv * meat).trace();
  const double inflation = expected > 0.0 ? rss / expected : std::numeric_limits<double>::infinity();
  const Mat cov = hinv * meat * hinv * inflation;
  if (result.gamma_fit > 0.0 && cov.allFinite()) {
    // Q = omega / gamma.
    const double dq_dg = -result.q_fit / result.gamma_fit;
    const double dq_dw = 1.0 / result.gamma_fit;
    const double var = dq_dg * dq_dg * cov(2, 2) + dq_dw * dq_dw * cov(3, 3) + 2.0 * dq_dg * dq_dw * cov(2, 3);
    result.q_uncertainty = std::sqrt(std::max(var, 0.0));
  } else {
    result.q_uncertainty = std::numeric_limits<double>::infinity();
  }
  return result;
}

}  // namespace mkit::ringdown
