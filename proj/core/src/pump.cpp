#include "afcsim/pump.hpp"

#include <cmath>
#include <stdexcept>

#include "afcsim/io_util.hpp"

namespace afcsim {

std::vector<PumpTone> expand_tones(const PumpConfig& cfg) {
  if (cfg.tone_weights.size() != cfg.modulation_freqs_hz.size() + 1)
    throw std::domain_error("tone_weights must have one entry for the carrier plus one per "
                            "modulation frequency");
  for (double w : cfg.tone_weights)
    if (w < 0.0) throw std::domain_error("negative tone weight");

  std::vector<PumpTone> tones;
  tones.push_back({cfg.carrier_detuning_hz, cfg.tone_weights[0]});
  for (std::size_t m = 0; m < cfg.modulation_freqs_hz.size(); ++m) {
    const double f = cfg.modulation_freqs_hz[m];
    const double w = cfg.tone_weights[m + 1];
    tones.push_back({cfg.carrier_detuning_hz + f, w});
    tones.push_back({cfg.carrier_detuning_hz - f, w});
  }
  return tones;
}

VelocityDistribution apply_prep_pump(const VelocityDistribution& dist, double efficiency) {
  if (efficiency < 0.0 || efficiency > 1.0)
    throw std::domain_error("prep efficiency must be in [0, 1]");
  VelocityDistribution out = dist;
  for (int i = 0; i < out.bins(); ++i) {
    const double moved = efficiency * out.pop_f4[i];
    out.pop_f4[i] -= moved;
    out.pop_f3[i] += moved;
  }
  return out;
}

VelocityDistribution apply_vsp(const VelocityDistribution& dist, const PumpConfig& cfg,
                               const LineTable& line_table) {
  if (cfg.effective_linewidth_hz <= 0.0) throw std::domain_error("effective_linewidth must be > 0");
  if (cfg.duration_s < 0.0) throw std::domain_error("negative pump duration");
  if (cfg.pump_rate_hz < 0.0) throw std::domain_error("negative pump rate");
  const TransitionLine* line = line_table.find(cfg.addressed_line);
  if (!line)
    throw std::domain_error("addressed line " + to_string(cfg.addressed_line) +
                            " not in line table");

  const auto tones = expand_tones(cfg);
  const double v_lo = dist.v_min_mps;
  const double v_hi = dist.v_max();
  for (const auto& tone : tones) {
    const double v_res = detuning_to_velocity(*line, tone.detuning_hz, cfg.sign);
    if (v_res < v_lo || v_res > v_hi)
      throw std::domain_error("pump tone at " + format_double(tone.detuning_hz) +
                              " Hz is resonant at " + format_double(v_res) +
                              " m/s, outside the velocity grid");
  }

  // Lorentzian half width in velocity units on the addressed line
  const double hwhm_v = 0.5 * cfg.effective_linewidth_hz * line->wavelength_m;
  const double hwhm_sq = hwhm_v * hwhm_v;

  VelocityDistribution out = dist;
  for (int i = 0; i < out.bins(); ++i) {
    const double v = out.velocity(i);
    double rate = 0.0;
    for (const auto& tone : tones) {
      const double v_res = detuning_to_velocity(*line, tone.detuning_hz, cfg.sign);
      const double dvr = v - v_res;
      rate += tone.weight * cfg.pump_rate_hz * hwhm_sq / (hwhm_sq + dvr * dvr);
    }
    const double transfer = out.pop_f3[i] * -std::expm1(-rate * cfg.duration_s);
    out.pop_f3[i] -= transfer;
    out.pop_f4[i] += transfer;
  }
  return out;
}

}  // namespace afcsim
