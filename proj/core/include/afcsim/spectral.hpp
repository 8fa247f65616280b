#ifndef AFCSIM_SPECTRAL_HPP
#define AFCSIM_SPECTRAL_HPP

#include <complex>
#include <string>
#include <vector>

#include "afcsim/atomic_model.hpp"
#include "afcsim/velocity_distribution.hpp"

namespace afcsim {

struct FrequencyGrid {
  double start_hz = 0.0;
  double step_hz = 0.0;
  int count = 0;

  double freq(int i) const { return start_hz + i * step_hz; }
  double end_hz() const { return freq(count - 1); }
  double centre_hz() const { return start_hz + 0.5 * step_hz * (count - 1); }
  double span_hz() const { return step_hz * (count - 1); }
};

FrequencyGrid make_centered_grid(double centre_hz, double halfspan_hz, int count);

/// Complex optical depth D on a frequency grid. The field transfer of the
/// medium is exp(-D/2): Re D is the optical depth (intensity attenuation
/// exp(-Re D)), Im D is -2x the dispersive field phase. Im is tied to Re by
/// causality (Im D = -Hilbert[Re D]).
struct ComplexSpectrum {
  FrequencyGrid grid;
  std::vector<std::complex<double>> depth;
};

/// Unit-area complex Lorentzian, FWHM fwhm_hz. The real part is the
/// absorptive profile, the imaginary part its dispersive partner with the
/// sign that makes exp(-D/2) a causal filter under the e^{+2pi i f t}
/// inverse-transform convention.
std::complex<double> complex_lorentzian(double f_hz, double fwhm_hz);

/// Unit-area complex Voigt profile: Gaussian of standard deviation sigma_hz
/// convolved with complex_lorentzian(lorentz_fwhm_hz). Evaluated through the
/// Faddeeva function; lorentz_fwhm_hz = 0 gives the (dispersive) Gaussian.
std::complex<double> complex_voigt(double f_hz, double sigma_hz, double lorentz_fwhm_hz);

/// Probe-frame optical depth of a velocity distribution: for each line,
/// strength x integral of pop_f4(v) x complex Lorentzian centred at
/// offset + v/lambda, by direct quadrature over the velocity grid
/// (spectrally accurate for smooth decaying integrands). Throws
/// std::domain_error when the grid fails to cover the populated classes
/// (absorption at the grid edges above 1e-3 of peak).
ComplexSpectrum complex_depth_spectrum(const VelocityDistribution& dist, const LineTable& lines,
                                       const FrequencyGrid& grid, double od_scale);

/// Analytic Gaussian velocity class: integrated population `weight`, centre
/// and width in velocity. The Voigt path evaluates these without gridding.
struct GaussianVelocityClass {
  double centre_mps;
  double sigma_mps;
  double weight;
};

/// Closed-form counterpart of complex_depth_spectrum for piecewise-Gaussian
/// populations, via the complex Voigt kernel. Must agree with the quadrature
/// path to better than 1e-6 relative; the cross-check suite holds both paths
/// to that.
ComplexSpectrum voigt_depth_spectrum(const std::vector<GaussianVelocityClass>& classes,
                                     const LineTable& lines, const FrequencyGrid& grid,
                                     double od_scale);

/// Samples Gaussian classes onto a velocity grid as an F=4 population
/// (F=3 empty), for feeding the quadrature path in cross checks.
VelocityDistribution sample_classes(const std::vector<GaussianVelocityClass>& classes,
                                    const VelocityGridSpec& grid);

/// Synthetic comb description for round-trip fitting tests and the analytic
/// theory comparisons.
struct CombShape {
  double first_tooth_hz = 0.0;
  double spacing_hz = 0.0;
  int teeth = 0;
  double tooth_fwhm_hz = 0.0;    // Gaussian FWHM
  double tooth_depth = 0.0;      // peak Re D of one tooth above background
  double background = 0.0;       // flat Re D floor
  double lorentz_fwhm_hz = 0.0;  // optional Lorentzian component (Voigt teeth)
  bool with_dispersion = true;   // false: Im D = 0 (absorption-only medium)
};

ComplexSpectrum make_comb_spectrum(const CombShape& shape, const FrequencyGrid& grid);

/// Discrete Hilbert transform with the (1/pi) p.v. integral of u(s)/(f-s)
/// convention, via a zero-padded FFT. Test oracle for the Kramers-Kronig
/// consistency of computed spectra: Im D = -hilbert_transform(Re D).
std::vector<double> hilbert_transform(const std::vector<double>& u);

/// Largest Re D at the two grid edges over the peak Re D.
double edge_absorption_ratio(const ComplexSpectrum& spectrum);

std::string serialize_spectrum(const ComplexSpectrum& s,
                               const std::vector<std::string>& header_comments = {});
void save_spectrum(const ComplexSpectrum& s, const std::string& path,
                   const std::vector<std::string>& header_comments = {});
ComplexSpectrum load_spectrum(const std::string& path);

}  // namespace afcsim

#endif
