#ifndef AFCSIM_PROPAGATION_HPP
#define AFCSIM_PROPAGATION_HPP

#include <optional>
#include <stdexcept>

#include "afcsim/pulse.hpp"
#include "afcsim/spectral.hpp"

namespace afcsim {

/// The output trace still carries significant energy at its edges: the time
/// window is too short for the medium response and the transform would wrap
/// it. Resize the trace (or pad more) and rerun.
class WrapAroundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PropagationOptions {
  int pad_factor = 2;                  // FFT length >= pad_factor x trace length
  double edge_energy_tol = 1e-3;       // wrap detector threshold
  double bandwidth_energy_tol = 0.01;  // max pulse energy outside the spectrum grid
  /// Optional excited-state decay exp(-(t - t1_origin)/(2 T1)) applied as an
  /// amplitude envelope on the medium response (not the directly transmitted
  /// field). Physical spectra computed from natural linewidths already carry
  /// this decay in their Lorentzian kernels; the toggle exists for synthetic
  /// spectra without a linewidth.
  std::optional<double> t1_decay_s;
  double t1_origin_s = 0.0;
};

/// Linear propagation through the medium: output spectrum = input spectrum
/// times exp(-D/2), evaluated by forward/inverse FFT with zero padding. The
/// envelope frequency axis is mapped onto the spectrum grid through the
/// pulse's carrier detuning (relative to the grid centre).
///
/// Throws std::invalid_argument when more than bandwidth_energy_tol of the
/// pulse energy falls outside the grid, and WrapAroundError when output
/// energy pools at the trace edges.
PulseEnvelope propagate(const PulseEnvelope& pulse, const ComplexSpectrum& spectrum,
                        const PropagationOptions& opts = {});

struct EchoReport {
  PulseEnvelope trace;
  double transmitted_fraction = 0.0;
  double echo_time_s = 0.0;
  double efficiency = 0.0;
  double window_centre_s = 0.0;
  double window_width_s = 0.0;
};

/// Windowed echo efficiency: energy of `trace` inside the window over the
/// total energy of `reference`. The transmitted fraction uses a window of the
/// same width centred on the reference's intensity peak. echo_time is the
/// intensity maximum inside the window.
EchoReport echo_efficiency(const PulseEnvelope& trace, const PulseEnvelope& reference,
                           double window_centre_s, double window_width_s);

/// Time of the largest |field|^2 at or after t_from_s.
double find_dominant_peak(const PulseEnvelope& trace, double t_from_s);

}  // namespace afcsim

#endif
