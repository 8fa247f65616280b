#ifndef AFCSIM_PUMP_HPP
#define AFCSIM_PUMP_HPP

#include <vector>

#include "afcsim/atomic_model.hpp"
#include "afcsim/velocity_distribution.hpp"

namespace afcsim {

/// Velocity-selective pump settings. The pump spectrum is a carrier plus a
/// symmetric first-order sideband pair per modulation frequency; tone_weights
/// holds one relative rate per entry of {carrier, modulation_1, ...}, the
/// sidebands of a pair sharing their weight.
struct PumpConfig {
  double carrier_detuning_hz = 0.0;        // on the addressed line
  std::vector<double> modulation_freqs_hz;
  std::vector<double> tone_weights;        // size 1 + modulation count
  double effective_linewidth_hz = 0.0;     // Lorentzian FWHM per tone: laser width + power broadening
  double pump_rate_hz = 0.0;               // on-resonance rate for weight 1
  double duration_s = 0.0;
  LineLabel addressed_line{3, 4};
  BeamSign sign = BeamSign::counter_propagating;
};

struct PumpTone {
  double detuning_hz;  // absolute detuning on the addressed line
  double weight;
};

/// Expands carrier + sideband pairs into the flat tone list.
std::vector<PumpTone> expand_tones(const PumpConfig& cfg);

/// Hyperfine preparation stage: scales pop_f4 by (1 - efficiency) uniformly
/// in velocity (wall-coating collisions reshuffle velocity, so the depletion
/// is velocity-blind) and moves the difference to pop_f3.
VelocityDistribution apply_prep_pump(const VelocityDistribution& dist, double efficiency);

/// Velocity-selective pumping F=3 -> F=4. Per tone the transfer rate is
/// tone weight x pump_rate x peak-normalized Lorentzian (FWHM
/// effective_linewidth) centred on the tone's resonant velocity; rates add
/// over tones and integrate over the duration through the saturation law
/// 1 - exp(-R(v) t). Population is conserved bin by bin.
VelocityDistribution apply_vsp(const VelocityDistribution& dist, const PumpConfig& cfg,
                               const LineTable& line_table);

}  // namespace afcsim

#endif
