#ifndef AFCSIM_COMB_FIT_HPP
#define AFCSIM_COMB_FIT_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "afcsim/spectral.hpp"

namespace afcsim {

/// Fitted comb description. gamma is the Gaussian tooth FWHM of the fit
/// model; finesse = delta / gamma.
struct CombParams {
  double delta_hz = 0.0;
  double gamma_hz = 0.0;
  double d = 0.0;
  double d0 = 0.0;
  int m_teeth = 0;
  double bandwidth_hz = 0.0;
  double finesse = 0.0;
};

struct CombFit {
  CombParams params;
  double first_tooth_hz = 0.0;
  std::vector<double> tooth_depths;  // per-tooth linear refit, model order
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Fit did not converge within the iteration budget; carries the best
/// parameters seen and their residual.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& msg, CombFit best) : std::runtime_error(msg), best_(std::move(best)) {}
  const CombFit& best() const { return best_; }

 private:
  CombFit best_;
};

/// The window holds no periodic structure: the fitted tooth depth is
/// indistinguishable from the residual floor. Carries the background level.
class NoCombError : public std::runtime_error {
 public:
  NoCombError(const std::string& msg, double d0, double residual_rms)
      : std::runtime_error(msg), d0_(d0), residual_rms_(residual_rms) {}
  double d0() const { return d0_; }
  double residual_rms() const { return residual_rms_; }

 private:
  double d0_;
  double residual_rms_;
};

/// Nonlinear least squares of Re D over [window_lo, window_hi] against a
/// flat background plus m_teeth equal-depth Gaussian teeth at a common
/// spacing. After the periodic fit, per-tooth depths are re-estimated
/// linearly; the bandwidth is the span of teeth whose depth is at least
/// half the median tooth depth, plus one tooth FWHM.
///
/// guess.m_teeth <= 0 derives the tooth count from the window span. The
/// first tooth position is taken from first_tooth_guess_hz or located by a
/// phase scan.
CombFit fit_comb(const ComplexSpectrum& spectrum, double window_lo_hz, double window_hi_hz,
                 const CombParams& guess, std::optional<double> first_tooth_guess_hz = {});

struct PeakFit {
  double centre_hz = 0.0;
  double fwhm_hz = 0.0;
  double amplitude = 0.0;
  double background = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Single Gaussian peak plus flat background over the window; initial values
/// are taken from the data.
PeakFit fit_gaussian_peak(const ComplexSpectrum& spectrum, double window_lo_hz,
                          double window_hi_hz);

}  // namespace afcsim

#endif
