#include "afcsim/propagation.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/FFT>

#include "afcsim/io_util.hpp"

namespace afcsim {

namespace {

// Catmull-Rom interpolation of the complex depth on its uniform grid;
// zero outside (the edge-decay invariant keeps the seam negligible).
std::complex<double> interp_depth(const ComplexSpectrum& s, double f_hz) {
  const double pos = (f_hz - s.grid.start_hz) / s.grid.step_hz;
  if (pos < 0.0 || pos > s.grid.count - 1) return {0.0, 0.0};
  const int i = std::min(static_cast<int>(pos), s.grid.count - 2);
  const double t = pos - i;
  const std::complex<double> zb = s.depth[i];
  const std::complex<double> zc = s.depth[i + 1];
  const std::complex<double> za = i > 0 ? s.depth[i - 1] : zb;
  const std::complex<double> zd = i + 2 < s.grid.count ? s.depth[i + 2] : zc;
  return zb + 0.5 * t * (zc - za + t * (2.0 * za - 5.0 * zb + 4.0 * zc - zd +
                                        t * (3.0 * (zb - zc) + zd - za)));
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

PulseEnvelope propagate(const PulseEnvelope& pulse, const ComplexSpectrum& spectrum,
                        const PropagationOptions& opts) {
  const int n = pulse.size();
  if (n < 2 || pulse.dt_s <= 0.0) throw std::invalid_argument("bad pulse trace");
  if (opts.pad_factor < 1) throw std::invalid_argument("pad_factor must be >= 1");

  const int nfft = next_pow2(opts.pad_factor * n);
  std::vector<std::complex<double>> buf(nfft, {0.0, 0.0});
  std::copy(pulse.samples.begin(), pulse.samples.end(), buf.begin());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec(nfft);
  fft.fwd(spec, buf);

  const double df = 1.0 / (nfft * pulse.dt_s);
  const double grid_centre = spectrum.grid.centre_hz();
  const double rel_lo = spectrum.grid.start_hz - grid_centre;
  const double rel_hi = spectrum.grid.end_hz() - grid_centre;

  // pulse bandwidth must sit inside the spectrum grid
  double energy_total = 0.0, energy_outside = 0.0;
  for (int k = 0; k < nfft; ++k) {
    const double fk = (k <= nfft / 2 ? k : k - nfft) * df;
    const double e = std::norm(spec[k]);
    energy_total += e;
    const double rel = pulse.carrier_detuning_hz + fk;
    if (rel < rel_lo || rel > rel_hi) energy_outside += e;
  }
  if (energy_total <= 0.0) throw std::invalid_argument("input pulse has no energy");
  if (energy_outside > opts.bandwidth_energy_tol * energy_total)
    throw std::invalid_argument("pulse bandwidth exceeds the spectrum grid: " +
                                format_double(energy_outside / energy_total) +
                                " of the energy falls outside");

  for (int k = 0; k < nfft; ++k) {
    const double fk = (k <= nfft / 2 ? k : k - nfft) * df;
    const std::complex<double> d =
        interp_depth(spectrum, grid_centre + pulse.carrier_detuning_hz + fk);
    spec[k] *= std::exp(-0.5 * d);
  }

  std::vector<std::complex<double>> out_buf(nfft);
  fft.inv(out_buf, spec);

  // wrap detector on the padded buffer tail
  {
    const int tail = std::max(4, nfft / 100);
    double e_tail = 0.0, e_all = 0.0;
    for (int i = 0; i < nfft; ++i) {
      const double e = std::norm(out_buf[i]);
      e_all += e;
      if (i >= nfft - tail) e_tail += e;
    }
    if (e_all > 0.0 && e_tail > opts.edge_energy_tol * e_all)
      throw WrapAroundError("medium response reaches the padded transform tail; "
                            "lengthen the trace or raise pad_factor");
  }

  PulseEnvelope out;
  out.t0_s = pulse.t0_s;
  out.dt_s = pulse.dt_s;
  out.carrier_detuning_hz = pulse.carrier_detuning_hz;
  out.samples.assign(out_buf.begin(), out_buf.begin() + n);

  if (opts.t1_decay_s) {
    const double t1 = *opts.t1_decay_s;
    if (t1 <= 0.0) throw std::invalid_argument("T1 must be > 0");
    for (int i = 0; i < n; ++i) {
      const double dt_rel = std::max(0.0, (pulse.t0_s + i * pulse.dt_s) - opts.t1_origin_s);
      const std::complex<double> response = out.samples[i] - pulse.samples[i];
      out.samples[i] = pulse.samples[i] + response * std::exp(-dt_rel / (2.0 * t1));
    }
  }

  // edge check on the returned trace: energy pooling here means the chosen
  // span cannot hold the response
  {
    const int edge = std::max(2, n / 100);
    double e_edges = 0.0, e_all = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = std::norm(out.samples[i]);
      e_all += e;
      if (i < edge || i >= n - edge) e_edges += e;
    }
    if (e_all > 0.0 && e_edges > opts.edge_energy_tol * e_all)
      throw WrapAroundError("output energy at the trace edges exceeds " +
                            format_double(opts.edge_energy_tol) + " of the total; resize the trace");
  }

  return out;
}

EchoReport echo_efficiency(const PulseEnvelope& trace, const PulseEnvelope& reference,
                           double window_centre_s, double window_width_s) {
  if (window_width_s <= 0.0) throw std::domain_error("echo window width must be > 0");
  const double lo = window_centre_s - 0.5 * window_width_s;
  const double hi = window_centre_s + 0.5 * window_width_s;
  if (hi < trace.t0_s || lo > trace.t_end())
    throw std::domain_error("echo window lies outside the trace span");

  const double ref_energy = reference.energy();
  if (ref_energy <= 0.0) throw std::domain_error("reference trace has no energy");

  double e_window = 0.0;
  double peak = -1.0;
  double peak_time = window_centre_s;
  int in_window = 0;
  for (int i = 0; i < trace.size(); ++i) {
    const double t = trace.time(i);
    if (t < lo || t > hi) continue;
    ++in_window;
    const double inten = std::norm(trace.samples[i]);
    e_window += inten;
    if (inten > peak) {
      peak = inten;
      peak_time = t;
    }
  }
  if (in_window == 0) throw std::domain_error("echo window holds no samples");
  e_window *= trace.dt_s;

  // transmitted pulse: same-width window around the reference intensity peak
  double ref_peak = -1.0;
  double ref_peak_time = reference.t0_s;
  for (int i = 0; i < reference.size(); ++i) {
    const double inten = std::norm(reference.samples[i]);
    if (inten > ref_peak) {
      ref_peak = inten;
      ref_peak_time = reference.time(i);
    }
  }
  double e_transmit = 0.0;
  for (int i = 0; i < trace.size(); ++i) {
    const double t = trace.time(i);
    if (std::abs(t - ref_peak_time) <= 0.5 * window_width_s) e_transmit += std::norm(trace.samples[i]);
  }
  e_transmit *= trace.dt_s;

  EchoReport report;
  report.trace = trace;
  report.transmitted_fraction = e_transmit / ref_energy;
  report.echo_time_s = peak_time;
  report.efficiency = e_window / ref_energy;
  report.window_centre_s = window_centre_s;
  report.window_width_s = window_width_s;
  return report;
}

double find_dominant_peak(const PulseEnvelope& trace, double t_from_s) {
  double best = -1.0;
  double best_t = t_from_s;
  for (int i = 0; i < trace.size(); ++i) {
    const double t = trace.time(i);
    if (t < t_from_s) continue;
    const double inten = std::norm(trace.samples[i]);
    if (inten > best) {
      best = inten;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace afcsim
