#include <cmath>

#include "afcsim/comb_fit.hpp"
#include "doctest.h"

using namespace afcsim;

namespace {

ComplexSpectrum synthetic_comb(double delta, double gamma, double d, double d0, int teeth,
                               double first_tooth) {
  CombShape shape;
  shape.first_tooth_hz = first_tooth;
  shape.spacing_hz = delta;
  shape.teeth = teeth;
  shape.tooth_fwhm_hz = gamma;
  shape.tooth_depth = d;
  shape.background = d0;
  return make_comb_spectrum(shape, make_centered_grid(0.0, 1.2e9, 16384));
}

}  // namespace

TEST_CASE("flat spectrum: no comb, background recovered") {
  ComplexSpectrum s;
  s.grid = make_centered_grid(0.0, 1.0e9, 4096);
  s.depth.assign(s.grid.count, {0.2, 0.0});

  CombParams guess;
  guess.delta_hz = 100e6;
  guess.gamma_hz = 45e6;
  try {
    fit_comb(s, -400e6, 400e6, guess);
    FAIL("expected NoCombError");
  } catch (const NoCombError& e) {
    CHECK(e.d0() == doctest::Approx(0.2).epsilon(1e-3));
  }
}

TEST_CASE("round trip on a synthetic comb recovers the parameters within 2%") {
  const double delta = 83.7e6, gamma = 45e6, d = 0.55, d0 = 0.2;
  const ComplexSpectrum s = synthetic_comb(delta, gamma, d, d0, 8, -500e6);

  CombParams guess;
  guess.delta_hz = 80e6;  // deliberately off
  guess.gamma_hz = 40e6;
  guess.m_teeth = 8;
  const CombFit fit = fit_comb(s, -560e6, 200e6, guess);

  CHECK(fit.converged);
  CHECK(fit.params.delta_hz == doctest::Approx(delta).epsilon(0.02));
  CHECK(fit.params.gamma_hz == doctest::Approx(gamma).epsilon(0.02));
  CHECK(fit.params.d == doctest::Approx(d).epsilon(0.02));
  CHECK(fit.params.d0 == doctest::Approx(d0).epsilon(0.02));
  CHECK(fit.params.finesse == doctest::Approx(delta / gamma).epsilon(0.05));
  CHECK(fit.params.m_teeth == 8);
  // all teeth equal: bandwidth spans the whole comb
  CHECK(fit.params.bandwidth_hz == doctest::Approx(7 * delta + gamma).epsilon(0.05));
}

TEST_CASE("refitting its own model is a projection") {
  const ComplexSpectrum s = synthetic_comb(100e6, 50e6, 0.6, 0.15, 6, -250e6);
  CombParams guess;
  guess.delta_hz = 95e6;
  guess.gamma_hz = 55e6;
  guess.m_teeth = 6;
  const CombFit first = fit_comb(s, -320e6, 320e6, guess);

  // rebuild the spectrum from the fitted parameters and refit starting there
  const ComplexSpectrum model = synthetic_comb(first.params.delta_hz, first.params.gamma_hz,
                                               first.params.d, first.params.d0, 6,
                                               first.first_tooth_hz);
  CombParams guess2 = first.params;
  const CombFit second = fit_comb(model, -320e6, 320e6, guess2, first.first_tooth_hz);

  CHECK(second.params.delta_hz == doctest::Approx(first.params.delta_hz).epsilon(1e-6));
  CHECK(second.params.gamma_hz == doctest::Approx(first.params.gamma_hz).epsilon(1e-6));
  CHECK(second.params.d == doctest::Approx(first.params.d).epsilon(1e-6));
  CHECK(second.params.d0 == doctest::Approx(first.params.d0).epsilon(1e-6));
}

TEST_CASE("unequal teeth: bandwidth keeps only teeth above half the median") {
  // seven teeth, outer two at 30% depth
  const FrequencyGrid grid = make_centered_grid(0.0, 1.2e9, 16384);
  ComplexSpectrum s;
  s.grid = grid;
  s.depth.assign(grid.count, {0.1, 0.0});
  const double delta = 100e6, sigma = 45e6 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const double first = -300e6;
  const double depths[] = {0.1, 0.6, 0.62, 0.58, 0.61, 0.6, 0.12};
  for (int n = 0; n < grid.count; ++n) {
    const double f = grid.freq(n);
    double v = 0.0;
    for (int m = 0; m < 7; ++m) {
      const double u = (f - first - m * delta) / sigma;
      v += depths[m] * std::exp(-0.5 * u * u);
    }
    s.depth[n] += std::complex<double>(v, 0.0);
  }

  CombParams guess;
  guess.delta_hz = 100e6;
  guess.gamma_hz = 45e6;
  guess.m_teeth = 7;
  const CombFit fit = fit_comb(s, -360e6, 360e6, guess, first);
  // teeth 1..5 kept: bandwidth 4 spacings + one tooth width
  CHECK(fit.params.bandwidth_hz ==
        doctest::Approx(4 * fit.params.delta_hz + fit.params.gamma_hz).epsilon(0.05));
}

TEST_CASE("window must hold at least two teeth") {
  const ComplexSpectrum s = synthetic_comb(100e6, 45e6, 0.5, 0.2, 6, -250e6);
  CombParams guess;
  guess.delta_hz = 100e6;
  guess.gamma_hz = 45e6;
  CHECK_THROWS_AS(fit_comb(s, -40e6, 40e6, guess), std::domain_error);
}

TEST_CASE("single peak fit: width of an isolated Gaussian feature") {
  const FrequencyGrid grid = make_centered_grid(0.0, 600e6, 8192);
  ComplexSpectrum s;
  s.grid = grid;
  s.depth.assign(grid.count, {0.05, 0.0});
  const double fwhm = 45e6, sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  for (int n = 0; n < grid.count; ++n) {
    const double u = (grid.freq(n) - 20e6) / sigma;
    s.depth[n] += std::complex<double>(0.8 * std::exp(-0.5 * u * u), 0.0);
  }
  const PeakFit fit = fit_gaussian_peak(s, -150e6, 200e6);
  CHECK(fit.converged);
  CHECK(fit.fwhm_hz == doctest::Approx(45e6).epsilon(1e-3));
  CHECK(fit.centre_hz == doctest::Approx(20e6).epsilon(1e-3));
  CHECK(fit.amplitude == doctest::Approx(0.8).epsilon(1e-3));
  CHECK(fit.background == doctest::Approx(0.05).epsilon(1e-2));
}
