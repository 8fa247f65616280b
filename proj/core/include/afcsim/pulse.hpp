#ifndef AFCSIM_PULSE_HPP
#define AFCSIM_PULSE_HPP

#include <complex>
#include <string>
#include <vector>

namespace afcsim {

/// Complex field envelope on a uniform time grid. carrier_detuning_hz places
/// the envelope's zero frequency relative to the centre of whatever spectrum
/// grid it is propagated through.
struct PulseEnvelope {
  double t0_s = 0.0;
  double dt_s = 0.0;
  std::vector<std::complex<double>> samples;
  double carrier_detuning_hz = 0.0;

  int size() const { return static_cast<int>(samples.size()); }
  double time(int i) const { return t0_s + i * dt_s; }
  double t_end() const { return time(size() - 1); }

  /// sum |s|^2 dt
  double energy() const;
};

struct TraceSpec {
  double t0_s = 0.0;
  double dt_s = 10e-12;
  int samples = 8000;
};

struct PulseTrain {
  PulseEnvelope envelope;
  double max_overlap = 0.0;    // largest pairwise field-overlap fraction
  bool overlap_warning = false;  // some pair overlaps beyond 50%
};

/// Sum of Gaussian modes of the given intensity FWHM, one per entry of
/// `times_s`, each normalized to unit energy before its amplitude weight is
/// applied. Modes closer than one FWHM overlap beyond 50% and set the
/// warning flag.
PulseTrain make_pulse_train(const std::vector<double>& times_s, double fwhm_s,
                            const std::vector<double>& amplitudes, const TraceSpec& trace,
                            double carrier_detuning_hz = 0.0);

/// Four-column text trace: time_s intensity re_field im_field.
std::string serialize_trace(const PulseEnvelope& trace,
                            const std::vector<std::string>& header_comments = {});
void save_trace(const PulseEnvelope& trace, const std::string& path,
                const std::vector<std::string>& header_comments = {});

}  // namespace afcsim

#endif
