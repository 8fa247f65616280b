#include "afcsim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "afcsim/constants.hpp"
#include "afcsim/errors.hpp"
#include "afcsim/faddeeva.hpp"
#include "afcsim/io_util.hpp"
#include "afcsim/parallel.hpp"

namespace afcsim {

namespace {
constexpr double kEdgeTolerance = 1e-3;
const double kSqrt2Pi = 2.5066282746310002;
}  // namespace

FrequencyGrid make_centered_grid(double centre_hz, double halfspan_hz, int count) {
  if (count < 2) throw std::domain_error("frequency grid needs at least 2 samples");
  if (halfspan_hz <= 0.0) throw std::domain_error("frequency grid halfspan must be > 0");
  FrequencyGrid g;
  g.count = count;
  g.step_hz = 2.0 * halfspan_hz / (count - 1);
  g.start_hz = centre_hz - halfspan_hz;
  return g;
}

std::complex<double> complex_lorentzian(double f_hz, double fwhm_hz) {
  const double a = 0.5 * fwhm_hz;
  const double denom = pi * (a * a + f_hz * f_hz);
  return {a / denom, -f_hz / denom};
}

std::complex<double> complex_voigt(double f_hz, double sigma_hz, double lorentz_fwhm_hz) {
  if (sigma_hz <= 0.0) return complex_lorentzian(f_hz, lorentz_fwhm_hz);
  const double s = sigma_hz * std::sqrt(2.0);
  const std::complex<double> z(f_hz / s, 0.5 * lorentz_fwhm_hz / s);
  const std::complex<double> w = faddeeva_w(z);
  return std::conj(w) / (sigma_hz * kSqrt2Pi);
}

double edge_absorption_ratio(const ComplexSpectrum& spectrum) {
  double peak = 0.0;
  for (const auto& d : spectrum.depth) peak = std::max(peak, d.real());
  if (peak <= 0.0) return 0.0;
  const double edge = std::max(spectrum.depth.front().real(), spectrum.depth.back().real());
  return edge / peak;
}

ComplexSpectrum complex_depth_spectrum(const VelocityDistribution& dist, const LineTable& lines,
                                       const FrequencyGrid& grid, double od_scale) {
  if (od_scale <= 0.0) throw std::domain_error("od_scale must be > 0");
  if (grid.count < 2 || grid.step_hz <= 0.0) throw std::domain_error("bad frequency grid");

  ComplexSpectrum out;
  out.grid = grid;
  out.depth.assign(grid.count, {0.0, 0.0});

  const int nv = dist.bins();
  const double dv = dist.dv_mps;

  // per line: precompute the mapped velocity axis and weighted populations
  struct LineWork {
    double offset;
    double a;   // Lorentzian HWHM
    std::vector<double> u;       // v / lambda
    std::vector<double> weight;  // strength * pop * dv / pi
  };
  std::vector<LineWork> work;
  for (const auto& line : lines.lines) {
    if (line.strength <= 0.0) continue;
    LineWork lw;
    lw.offset = line.offset_hz;
    lw.a = 0.5 * line.natural_linewidth_hz;
    lw.u.resize(nv);
    lw.weight.resize(nv);
    const double scale = od_scale * line.strength * dv / pi;
    for (int k = 0; k < nv; ++k) {
      lw.u[k] = dist.velocity(k) / line.wavelength_m;
      lw.weight[k] = scale * dist.pop_f4[k];
    }
    work.push_back(std::move(lw));
  }

  parallel_for(grid.count, [&](int begin, int end) {
    for (int n = begin; n < end; ++n) {
      const double f = grid.freq(n);
      double re = 0.0, im = 0.0;
      for (const auto& lw : work) {
        const double base = f - lw.offset;
        const double a = lw.a;
        const double a2 = a * a;
        const double* u = lw.u.data();
        const double* wgt = lw.weight.data();
        double re_l = 0.0, im_l = 0.0;
        for (int k = 0; k < nv; ++k) {
          const double x = base - u[k];
          const double inv = wgt[k] / (a2 + x * x);
          re_l += inv;
          im_l -= x * inv;
        }
        re += a * re_l;
        im += im_l;
      }
      out.depth[n] = {re, im};
    }
  });

  if (edge_absorption_ratio(out) > kEdgeTolerance)
    throw std::domain_error(
        "frequency grid does not cover the populated velocity classes: edge absorption is " +
        format_double(edge_absorption_ratio(out)) + " of peak (limit 1e-3)");
  return out;
}

ComplexSpectrum voigt_depth_spectrum(const std::vector<GaussianVelocityClass>& classes,
                                     const LineTable& lines, const FrequencyGrid& grid,
                                     double od_scale) {
  if (od_scale <= 0.0) throw std::domain_error("od_scale must be > 0");
  ComplexSpectrum out;
  out.grid = grid;
  out.depth.assign(grid.count, {0.0, 0.0});

  struct Feature {
    double centre;
    double sigma;
    double lorentz_fwhm;
    double weight;
  };
  std::vector<Feature> features;
  for (const auto& line : lines.lines) {
    if (line.strength <= 0.0) continue;
    for (const auto& cls : classes) {
      if (cls.weight == 0.0) continue;
      features.push_back({line.offset_hz + cls.centre_mps / line.wavelength_m,
                          cls.sigma_mps / line.wavelength_m, line.natural_linewidth_hz,
                          od_scale * line.strength * cls.weight});
    }
  }

  parallel_for(grid.count, [&](int begin, int end) {
    for (int n = begin; n < end; ++n) {
      const double f = grid.freq(n);
      std::complex<double> acc(0.0, 0.0);
      for (const auto& ft : features)
        acc += ft.weight * complex_voigt(f - ft.centre, ft.sigma, ft.lorentz_fwhm);
      out.depth[n] = acc;
    }
  });

  if (edge_absorption_ratio(out) > kEdgeTolerance)
    throw std::domain_error(
        "frequency grid does not cover the Gaussian classes: edge absorption is " +
        format_double(edge_absorption_ratio(out)) + " of peak (limit 1e-3)");
  return out;
}

VelocityDistribution sample_classes(const std::vector<GaussianVelocityClass>& classes,
                                    const VelocityGridSpec& grid) {
  if (grid.bins < 2) throw std::domain_error("velocity grid needs at least 2 bins");
  VelocityDistribution dist;
  dist.v_min_mps = grid.v_min_mps;
  dist.dv_mps = (grid.v_max_mps - grid.v_min_mps) / (grid.bins - 1);
  dist.pop_f3.assign(grid.bins, 0.0);
  dist.pop_f4.assign(grid.bins, 0.0);
  for (int i = 0; i < grid.bins; ++i) {
    const double v = dist.velocity(i);
    double n = 0.0;
    for (const auto& cls : classes) {
      const double x = (v - cls.centre_mps) / cls.sigma_mps;
      n += cls.weight / (cls.sigma_mps * kSqrt2Pi) * std::exp(-0.5 * x * x);
    }
    dist.pop_f4[i] = n;
  }
  dist.total_population = dist.sum_population();
  return dist;
}

ComplexSpectrum make_comb_spectrum(const CombShape& shape, const FrequencyGrid& grid) {
  if (shape.teeth < 1) throw std::domain_error("comb needs at least one tooth");
  if (shape.tooth_fwhm_hz <= 0.0 && shape.lorentz_fwhm_hz <= 0.0)
    throw std::domain_error("comb teeth need a width");

  const double sigma = shape.tooth_fwhm_hz / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  // peak-normalize one tooth so its Re D maximum equals tooth_depth
  const double peak_re = complex_voigt(0.0, sigma, shape.lorentz_fwhm_hz).real();

  ComplexSpectrum out;
  out.grid = grid;
  out.depth.assign(grid.count, {shape.background, 0.0});
  for (int n = 0; n < grid.count; ++n) {
    const double f = grid.freq(n);
    std::complex<double> acc(0.0, 0.0);
    for (int m = 0; m < shape.teeth; ++m) {
      const double fm = shape.first_tooth_hz + m * shape.spacing_hz;
      acc += complex_voigt(f - fm, sigma, shape.lorentz_fwhm_hz);
    }
    acc *= shape.tooth_depth / peak_re;
    if (!shape.with_dispersion) acc = {acc.real(), 0.0};
    out.depth[n] += acc;
  }
  return out;
}

std::vector<double> hilbert_transform(const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  int nfft = 1;
  while (nfft < 4 * n) nfft *= 2;  // zero padding tames the circular wrap

  std::vector<std::complex<double>> buf(nfft, {0.0, 0.0});
  for (int i = 0; i < n; ++i) buf[i] = u[i];

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec(nfft);
  fft.fwd(spec, buf);
  // multiply by -i sgn
  for (int k = 1; k < nfft / 2; ++k) spec[k] *= std::complex<double>(0.0, -1.0);
  spec[0] = 0.0;
  spec[nfft / 2] = 0.0;
  for (int k = nfft / 2 + 1; k < nfft; ++k) spec[k] *= std::complex<double>(0.0, 1.0);
  fft.inv(buf, spec);

  std::vector<double> h(n);
  for (int i = 0; i < n; ++i) h[i] = buf[i].real();
  return h;
}

std::string serialize_spectrum(const ComplexSpectrum& s,
                               const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "# columns: freq_hz re_depth im_depth transmission\n";
  for (int n = 0; n < s.grid.count; ++n) {
    out << format_double(s.grid.freq(n)) << ' ' << format_double(s.depth[n].real()) << ' '
        << format_double(s.depth[n].imag()) << ' ' << format_double(std::exp(-s.depth[n].real()))
        << '\n';
  }
  return out.str();
}

void save_spectrum(const ComplexSpectrum& s, const std::string& path,
                   const std::vector<std::string>& header_comments) {
  atomic_write_file(path, serialize_spectrum(s, header_comments));
}

ComplexSpectrum load_spectrum(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<double> f, re, im;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream r(line);
    double a, b, c;
    if (!(r >> a >> b >> c))
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": want columns freq_hz re_depth im_depth [transmission]");
    f.push_back(a);
    re.push_back(b);
    im.push_back(c);
  }
  if (f.size() < 2) throw ConfigError(path + ": fewer than 2 samples");
  ComplexSpectrum s;
  s.grid.start_hz = f.front();
  s.grid.count = static_cast<int>(f.size());
  s.grid.step_hz = (f.back() - f.front()) / static_cast<double>(f.size() - 1);
  s.depth.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) s.depth[i] = {re[i], im[i]};
  return s;
}

}  // namespace afcsim
