#include "afcsim/dipole_oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "afcsim/constants.hpp"

namespace afcsim {

AtomEnsembleSample sample_ensemble(const ComplexSpectrum& spectrum, int n_atoms,
                                   double reference_hz) {
  if (n_atoms < 1) throw std::domain_error("need at least one atom");
  if (std::isnan(reference_hz)) reference_hz = spectrum.grid.centre_hz();

  std::vector<int> candidates;
  candidates.reserve(spectrum.grid.count);
  for (int i = 0; i < spectrum.grid.count; ++i)
    if (spectrum.depth[i].real() > 0.0) candidates.push_back(i);
  if (candidates.empty()) throw std::domain_error("spectrum has no absorption to sample");

  const auto want = static_cast<std::size_t>(n_atoms);
  const std::size_t stride = std::max<std::size_t>(1, (candidates.size() + want - 1) / want);

  AtomEnsembleSample sample;
  double total = 0.0;
  for (std::size_t c = 0; c < candidates.size(); c += stride) {
    const int i = candidates[c];
    sample.detunings_hz.push_back(spectrum.grid.freq(i) - reference_hz);
    sample.weights.push_back(spectrum.depth[i].real());
    total += spectrum.depth[i].real();
  }
  for (double& w : sample.weights) w /= total;
  return sample;
}

std::vector<double> dipole_sum_echo(const AtomEnsembleSample& sample,
                                    const std::vector<double>& times_s, double t1_decay_s) {
  const std::size_t n_atoms = sample.detunings_hz.size();
  if (n_atoms == 0 || sample.weights.size() != n_atoms)
    throw std::domain_error("ensemble sample is empty or inconsistent");

  std::vector<double> intensity(times_s.size(), 0.0);
  if (times_s.empty()) return intensity;

  // uniform time grids run on per-atom phase rotors instead of sin/cos calls
  bool uniform = times_s.size() >= 3;
  const double dt = times_s.size() > 1 ? times_s[1] - times_s[0] : 0.0;
  for (std::size_t i = 2; uniform && i < times_s.size(); ++i)
    if (std::abs(times_s[i] - times_s[i - 1] - dt) > 1e-9 * std::abs(dt)) uniform = false;

  if (uniform) {
    std::vector<std::complex<double>> rot(n_atoms), step(n_atoms);
    for (std::size_t j = 0; j < n_atoms; ++j) {
      rot[j] = std::polar(sample.weights[j], two_pi * sample.detunings_hz[j] * times_s[0]);
      step[j] = std::polar(1.0, two_pi * sample.detunings_hz[j] * dt);
    }
    for (std::size_t i = 0; i < times_s.size(); ++i) {
      std::complex<double> field(0.0, 0.0);
      for (std::size_t j = 0; j < n_atoms; ++j) {
        field += rot[j];
        rot[j] *= step[j];
      }
      intensity[i] = std::norm(field);
    }
  } else {
    for (std::size_t i = 0; i < times_s.size(); ++i) {
      std::complex<double> field(0.0, 0.0);
      for (std::size_t j = 0; j < n_atoms; ++j)
        field += std::polar(sample.weights[j], two_pi * sample.detunings_hz[j] * times_s[i]);
      intensity[i] = std::norm(field);
    }
  }

  if (t1_decay_s > 0.0) {
    for (std::size_t i = 0; i < times_s.size(); ++i) {
      const double env = std::exp(-times_s[i] / (2.0 * t1_decay_s));
      intensity[i] *= env * env;
    }
  }
  return intensity;
}

}  // namespace afcsim
