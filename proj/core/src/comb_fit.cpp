#include "afcsim/comb_fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace afcsim {

namespace {

const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::log(2.0));

struct LevMarOptions {
  int max_iterations = 300;
  double sse_tol = 1e-14;
  double step_tol = 1e-12;
};

struct LevMarResult {
  Eigen::VectorXd theta;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Standard Levenberg-Marquardt with Marquardt diagonal scaling. `eval` fills
// residuals and the Jacobian; `valid` rejects parameter vectors outside the
// model domain (the step is retried with a larger damping).
LevMarResult levenberg_marquardt(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd&)>& eval,
    const std::function<bool(const Eigen::VectorXd&)>& valid, Eigen::VectorXd theta,
    int n_residuals, const LevMarOptions& opts = {}) {
  const int np = static_cast<int>(theta.size());
  Eigen::VectorXd r(n_residuals);
  Eigen::MatrixXd J(n_residuals, np);

  eval(theta, r, J);
  double sse = r.squaredNorm();
  double lambda = 1e-3;

  LevMarResult res;
  res.theta = theta;
  res.sse = sse;

  for (int it = 1; it <= opts.max_iterations; ++it) {
    res.iterations = it;
    const Eigen::MatrixXd jtj = J.transpose() * J;
    const Eigen::VectorXd jtr = J.transpose() * r;

    bool stepped = false;
    for (int tries = 0; tries < 40 && !stepped; ++tries) {
      Eigen::MatrixXd damped = jtj;
      for (int k = 0; k < np; ++k)
        damped(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      const Eigen::VectorXd step = damped.ldlt().solve(jtr);
      const Eigen::VectorXd trial = theta - step;
      if (valid(trial)) {
        Eigen::VectorXd r_trial(n_residuals);
        Eigen::MatrixXd J_trial(n_residuals, np);
        eval(trial, r_trial, J_trial);
        const double sse_trial = r_trial.squaredNorm();
        if (sse_trial <= sse) {
          const double drop = sse - sse_trial;
          const double step_scale = step.norm() / (1.0 + theta.norm());
          theta = trial;
          r.swap(r_trial);
          J.swap(J_trial);
          sse = sse_trial;
          lambda = std::max(lambda / 3.0, 1e-12);
          stepped = true;
          res.theta = theta;
          res.sse = sse;
          if (drop <= opts.sse_tol * (1.0 + sse) || step_scale <= opts.step_tol) {
            res.converged = true;
            return res;
          }
          break;
        }
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!stepped) {
      // damping saturated without any acceptable step: stationary point
      res.converged = true;
      return res;
    }
  }
  return res;
}

struct WindowData {
  std::vector<double> f;
  std::vector<double> y;
};

WindowData extract_window(const ComplexSpectrum& s, double lo, double hi) {
  WindowData w;
  for (int n = 0; n < s.grid.count; ++n) {
    const double f = s.grid.freq(n);
    if (f >= lo && f <= hi) {
      w.f.push_back(f);
      w.y.push_back(s.depth[n].real());
    }
  }
  return w;
}

}  // namespace

CombFit fit_comb(const ComplexSpectrum& spectrum, double window_lo_hz, double window_hi_hz,
                 const CombParams& guess, std::optional<double> first_tooth_guess_hz) {
  if (guess.delta_hz <= 0.0) throw std::domain_error("comb fit needs a positive spacing guess");
  if (guess.gamma_hz <= 0.0) throw std::domain_error("comb fit needs a positive width guess");
  const WindowData w = extract_window(spectrum, window_lo_hz, window_hi_hz);
  const int n = static_cast<int>(w.f.size());
  const double span = window_hi_hz - window_lo_hz;
  if (span < 2.0 * guess.delta_hz || n < 16)
    throw std::domain_error("fit window must contain at least two comb teeth");

  const int m_teeth = guess.m_teeth >= 2
                          ? guess.m_teeth
                          : static_cast<int>(std::floor(span / guess.delta_hz)) + 1;

  // frequencies are rescaled by the guessed spacing for conditioning
  const double unit = guess.delta_hz;
  const double f_ref = window_lo_hz;

  double y_max = -std::numeric_limits<double>::infinity();
  double y_min = std::numeric_limits<double>::infinity();
  for (double v : w.y) {
    y_max = std::max(y_max, v);
    y_min = std::min(y_min, v);
  }

  const double d0_guess = guess.d0 > 0.0 ? guess.d0 : std::max(0.0, y_min);
  const double d_guess = guess.d > 0.0 ? guess.d : std::max(y_max - y_min, 1e-12);
  const double sigma_guess = guess.gamma_hz / kFwhmPerSigma;

  // model in rescaled coordinates x = (f - f_ref)/unit
  auto model_eval = [&](const Eigen::VectorXd& th, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
    const double d0 = th[0], d = th[1], x0 = th[2], dx = th[3], sx = th[4];
    for (int i = 0; i < n; ++i) {
      const double x = (w.f[i] - f_ref) / unit;
      double g_sum = 0.0, g_df0 = 0.0, g_dd = 0.0, g_ds = 0.0;
      for (int m = 0; m < m_teeth; ++m) {
        const double u = (x - x0 - m * dx) / sx;
        const double g = std::exp(-0.5 * u * u);
        g_sum += g;
        const double gu = g * u / sx;
        g_df0 += gu;
        g_dd += gu * m;
        g_ds += gu * u;
      }
      r[i] = d0 + d * g_sum - w.y[i];
      J(i, 0) = 1.0;
      J(i, 1) = g_sum;
      J(i, 2) = d * g_df0;
      J(i, 3) = d * g_dd;
      J(i, 4) = d * g_ds;
    }
  };
  auto model_valid = [&](const Eigen::VectorXd& th) {
    return th[3] > 0.1 && th[4] > 1e-4 && th[4] < 10.0;
  };

  // first tooth: explicit guess, or a phase scan over one period
  double x0_guess;
  if (first_tooth_guess_hz) {
    x0_guess = (*first_tooth_guess_hz - f_ref) / unit;
  } else {
    const double sx = sigma_guess / unit;
    double best_sse = std::numeric_limits<double>::infinity();
    double best_x0 = 0.0;
    for (int s = 0; s < 64; ++s) {
      const double x0 = s / 64.0;
      double sse = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = (w.f[i] - f_ref) / unit;
        double g_sum = 0.0;
        for (int m = 0; m < m_teeth; ++m) {
          const double u = (x - x0 - m) / sx;
          g_sum += std::exp(-0.5 * u * u);
        }
        const double e = d0_guess + d_guess * g_sum - w.y[i];
        sse += e * e;
      }
      if (sse < best_sse) {
        best_sse = sse;
        best_x0 = x0;
      }
    }
    x0_guess = best_x0;
  }

  Eigen::VectorXd theta(5);
  theta << d0_guess, d_guess, x0_guess, 1.0, sigma_guess / unit;

  const LevMarResult lm = levenberg_marquardt(model_eval, model_valid, theta, n);

  CombFit fit;
  fit.params.delta_hz = lm.theta[3] * unit;
  fit.params.gamma_hz = lm.theta[4] * unit * kFwhmPerSigma;
  fit.params.d = lm.theta[1];
  fit.params.d0 = lm.theta[0];
  fit.params.m_teeth = m_teeth;
  fit.params.finesse = fit.params.delta_hz / fit.params.gamma_hz;
  fit.first_tooth_hz = f_ref + lm.theta[2] * unit;
  fit.residual_rms = std::sqrt(lm.sse / n);
  fit.iterations = lm.iterations;
  fit.converged = lm.converged;

  if (!lm.converged)
    throw FitError("comb fit did not converge within the iteration budget", fit);

  // per-tooth depths: linear least squares with shape and background fixed
  {
    const double sx = fit.params.gamma_hz / kFwhmPerSigma;
    Eigen::MatrixXd A(n, m_teeth);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < m_teeth; ++m) {
        const double u = (w.f[i] - fit.first_tooth_hz - m * fit.params.delta_hz) / sx;
        A(i, m) = std::exp(-0.5 * u * u);
      }
      b[i] = w.y[i] - fit.params.d0;
    }
    const Eigen::VectorXd depths = (A.transpose() * A).ldlt().solve(A.transpose() * b);
    fit.tooth_depths.assign(depths.data(), depths.data() + m_teeth);

    std::vector<double> sorted = fit.tooth_depths;
    std::sort(sorted.begin(), sorted.end());
    const double median = (m_teeth % 2 == 1)
                              ? sorted[m_teeth / 2]
                              : 0.5 * (sorted[m_teeth / 2 - 1] + sorted[m_teeth / 2]);
    int first_kept = -1, last_kept = -1;
    for (int m = 0; m < m_teeth; ++m) {
      if (fit.tooth_depths[m] >= 0.5 * median) {
        if (first_kept < 0) first_kept = m;
        last_kept = m;
      }
    }
    if (first_kept >= 0)
      fit.params.bandwidth_hz = (last_kept - first_kept) * fit.params.delta_hz + fit.params.gamma_hz;
  }

  const double floor = 3.0 * fit.residual_rms + 1e-9 * std::max(std::abs(y_max), 1.0);
  if (fit.params.d < floor)
    throw NoCombError("no comb: fitted tooth depth " + std::to_string(fit.params.d) +
                          " is below the residual floor",
                      fit.params.d0, fit.residual_rms);

  return fit;
}

PeakFit fit_gaussian_peak(const ComplexSpectrum& spectrum, double window_lo_hz,
                          double window_hi_hz) {
  const WindowData w = extract_window(spectrum, window_lo_hz, window_hi_hz);
  const int n = static_cast<int>(w.f.size());
  if (n < 8) throw std::domain_error("peak fit window holds too few samples");

  double y_max = -std::numeric_limits<double>::infinity();
  double y_min = std::numeric_limits<double>::infinity();
  double f_peak = w.f.front();
  for (int i = 0; i < n; ++i) {
    if (w.y[i] > y_max) {
      y_max = w.y[i];
      f_peak = w.f[i];
    }
    y_min = std::min(y_min, w.y[i]);
  }

  const double span = window_hi_hz - window_lo_hz;
  const double unit = span;
  const double f_ref = window_lo_hz;

  auto eval = [&](const Eigen::VectorXd& th, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
    const double b = th[0], a = th[1], x0 = th[2], sx = th[3];
    for (int i = 0; i < n; ++i) {
      const double x = (w.f[i] - f_ref) / unit;
      const double u = (x - x0) / sx;
      const double g = std::exp(-0.5 * u * u);
      r[i] = b + a * g - w.y[i];
      J(i, 0) = 1.0;
      J(i, 1) = g;
      J(i, 2) = a * g * u / sx;
      J(i, 3) = a * g * u * u / sx;
    }
  };
  auto valid = [](const Eigen::VectorXd& th) { return th[3] > 1e-6 && th[3] < 10.0; };

  // crude width estimate: samples above half maximum
  int above = 0;
  for (int i = 0; i < n; ++i)
    if (w.y[i] >= 0.5 * (y_max + y_min)) ++above;
  const double fwhm_est = std::max(2, above) * (span / n);

  Eigen::VectorXd theta(4);
  theta << std::max(0.0, y_min), std::max(y_max - y_min, 1e-12), (f_peak - f_ref) / unit,
      fwhm_est / (unit * kFwhmPerSigma);

  const LevMarResult lm = levenberg_marquardt(eval, valid, theta, n);

  PeakFit fit;
  fit.background = lm.theta[0];
  fit.amplitude = lm.theta[1];
  fit.centre_hz = f_ref + lm.theta[2] * unit;
  fit.fwhm_hz = lm.theta[3] * unit * kFwhmPerSigma;
  fit.residual_rms = std::sqrt(lm.sse / n);
  fit.iterations = lm.iterations;
  fit.converged = lm.converged;
  return fit;
}

}  // namespace afcsim
