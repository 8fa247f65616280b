#include "afcsim/pulse.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "afcsim/constants.hpp"
#include "afcsim/io_util.hpp"

namespace afcsim {

double PulseEnvelope::energy() const {
  double acc = 0.0;
  for (const auto& s : samples) acc += std::norm(s);
  return acc * dt_s;
}

PulseTrain make_pulse_train(const std::vector<double>& times_s, double fwhm_s,
                            const std::vector<double>& amplitudes, const TraceSpec& trace,
                            double carrier_detuning_hz) {
  if (fwhm_s <= 0.0) throw std::domain_error("pulse fwhm must be > 0");
  if (times_s.empty()) throw std::domain_error("pulse train needs at least one mode");
  if (times_s.size() != amplitudes.size())
    throw std::domain_error("one amplitude per pulse time required");
  if (trace.samples < 2 || trace.dt_s <= 0.0) throw std::domain_error("bad trace spec");

  const double t_end = trace.t0_s + (trace.samples - 1) * trace.dt_s;
  for (double t : times_s)
    if (t < trace.t0_s || t > t_end)
      throw std::domain_error("pulse time " + format_double(t) + " s outside the trace span");

  // field envelope exp(-2 ln2 (t-ti)^2 / fwhm^2): intensity FWHM = fwhm.
  // Unit mode energy: A^2 integral = A^2 fwhm sqrt(pi/(4 ln2)) = 1.
  const double alpha = 2.0 * std::log(2.0) / (fwhm_s * fwhm_s);
  const double amp_unit = std::pow(4.0 * std::log(2.0) / (pi * fwhm_s * fwhm_s), 0.25);

  PulseTrain out;
  out.envelope.t0_s = trace.t0_s;
  out.envelope.dt_s = trace.dt_s;
  out.envelope.carrier_detuning_hz = carrier_detuning_hz;
  out.envelope.samples.assign(trace.samples, {0.0, 0.0});
  for (int i = 0; i < trace.samples; ++i) {
    const double t = out.envelope.time(i);
    double field = 0.0;
    for (std::size_t m = 0; m < times_s.size(); ++m) {
      const double dtm = t - times_s[m];
      field += amplitudes[m] * amp_unit * std::exp(-alpha * dtm * dtm);
    }
    out.envelope.samples[i] = field;
  }

  for (std::size_t a = 0; a < times_s.size(); ++a) {
    for (std::size_t b = a + 1; b < times_s.size(); ++b) {
      const double sep = times_s[a] - times_s[b];
      const double overlap = std::exp(-std::log(2.0) * sep * sep / (fwhm_s * fwhm_s));
      out.max_overlap = std::max(out.max_overlap, overlap);
    }
  }
  out.overlap_warning = out.max_overlap > 0.5;
  return out;
}

std::string serialize_trace(const PulseEnvelope& trace,
                            const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "# columns: time_s intensity re_field im_field\n";
  for (int i = 0; i < trace.size(); ++i) {
    const auto& s = trace.samples[i];
    out << format_double(trace.time(i)) << ' ' << format_double(std::norm(s)) << ' '
        << format_double(s.real()) << ' ' << format_double(s.imag()) << '\n';
  }
  return out.str();
}

void save_trace(const PulseEnvelope& trace, const std::string& path,
                const std::vector<std::string>& header_comments) {
  atomic_write_file(path, serialize_trace(trace, header_comments));
}

}  // namespace afcsim
