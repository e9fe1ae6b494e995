#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace mkit::detail {

template <int P>
struct LmOutcome {
  Eigen::Matrix<double, P, 1> params;
  Eigen::Matrix<double, P, P> jtj;  // at the solution
  double cost = 0.0;                // sum of squared residuals
  int iterations = 0;
  bool converged = false;
};

/// Levenberg-Marquardt with Marquardt diagonal scaling. `normal_equations`
/// evaluates the sum of squared residuals at `p` and, when the pointers are
/// non-null, accumulates J^T J and J^T r (r = data - model, J = d model / d p),
/// so no N x P Jacobian is ever stored.
template <int P, class NormalEquations>
LmOutcome<P> levenberg_marquardt(Eigen::Matrix<double, P, 1> p, NormalEquations&& normal_equations,
                                 int max_iterations = 200, double rel_tol = 1e-13) {
  using Vec = Eigen::Matrix<double, P, 1>;
  using Mat = Eigen::Matrix<double, P, P>;
  LmOutcome<P> out;
  Mat jtj = Mat::Zero();
  Vec jtr = Vec::Zero();
  double cost = normal_equations(p, &jtj, &jtr);
  double lambda = 1e-3;
  for (int iter = 0; iter < max_iterations; ++iter) {
    out.iterations = iter + 1;
    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      Mat a = jtj;
      for (int i = 0; i < P; ++i) a(i, i) += lambda * std::max(jtj(i, i), 1e-300);
      const Vec step = a.ldlt().solve(jtr);
      if (!step.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const Vec trial = p + step;
      const double trial_cost = normal_equations(trial, nullptr, nullptr);
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        const double drop = cost - trial_cost;
        bool small_step = true;
        for (int i = 0; i < P; ++i) {
          if (std::fabs(step(i)) > rel_tol * 1e2 * (std::fabs(p(i)) + 1e-300)) small_step = false;
        }
        p = trial;
        jtj.setZero();
        jtr.setZero();
        cost = normal_equations(p, &jtj, &jtr);
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (drop <= rel_tol * cost || small_step || cost == 0.0) {
          out.converged = true;
        }
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) {
      // No downhill step at any damping: we sit at a minimum to rounding.
      out.converged = true;
    }
    if (out.converged) break;
  }
  out.params = p;
  out.jtj = jtj;
  out.cost = cost;
  return out;
}

}  // namespace mkit::detail
