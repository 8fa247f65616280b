#include <cmath>
#include <vector>

#include "afcsim/dipole_oracle.hpp"
#include "doctest.h"

using namespace afcsim;

namespace {

std::vector<double> uniform_times(double t0, double dt, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t0 + i * dt;
  return t;
}

// comb of Gaussian-weighted teeth, sampled finely
AtomEnsembleSample gaussian_comb_ensemble(int teeth, double delta, double tooth_fwhm) {
  AtomEnsembleSample s;
  const double sigma = tooth_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const double df = sigma / 40.0;
  double total = 0.0;
  for (int m = 0; m < teeth; ++m) {
    const double centre = (m - (teeth - 1) / 2.0) * delta;
    for (double f = -4.0 * sigma; f <= 4.0 * sigma; f += df) {
      const double w = std::exp(-0.5 * f * f / (sigma * sigma));
      s.detunings_hz.push_back(centre + f);
      s.weights.push_back(w);
      total += w;
    }
  }
  for (auto& w : s.weights) w /= total;
  return s;
}

}  // namespace

TEST_CASE("single atom never dephases") {
  AtomEnsembleSample s{{42e6}, {1.0}};
  const auto trace = dipole_sum_echo(s, uniform_times(0.0, 1e-10, 500));
  for (double v : trace) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two equal teeth revive fully at 1/delta") {
  const double delta = 100e6;
  AtomEnsembleSample s{{-0.5 * delta, 0.5 * delta}, {0.5, 0.5}};
  const auto times = uniform_times(0.0, 1e-11, 2001);  // 20 ns
  const auto trace = dipole_sum_echo(s, times);

  CHECK(trace[0] == doctest::Approx(1.0));
  // beat zero halfway
  const int half = 500;  // 5 ns = 1/(2 delta)
  CHECK(trace[half] < 1e-20);
  // full revival at 10 ns
  const int full = 1000;
  CHECK(trace[full] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Gaussian comb: revival peak follows exp(-7/F^2)") {
  const double delta = 100e6;
  const double finesse = 1.9;
  const auto s = gaussian_comb_ensemble(5, delta, delta / finesse);
  const auto times = uniform_times(0.0, 2e-12, 6001);  // 12 ns, fine sampling
  const auto trace = dipole_sum_echo(s, times);

  // first revival at 1/delta = 10 ns
  double peak = 0.0;
  double t_peak = 0.0;
  for (std::size_t i = 3000; i < times.size(); ++i) {
    if (trace[i] > peak) {
      peak = trace[i];
      t_peak = times[i];
    }
  }
  CHECK(t_peak == doctest::Approx(10e-9).epsilon(1e-3));
  CHECK(peak == doctest::Approx(std::exp(-7.0 / (finesse * finesse))).epsilon(0.10));
}

TEST_CASE("comb revivals repeat at multiples of 1/delta") {
  const double delta = 125e6;
  const auto s = gaussian_comb_ensemble(7, delta, delta / 6.0);
  const double tau = 1.0 / delta;
  const auto times = uniform_times(0.0, 5e-12, 5300);  // just past 3 tau
  const auto trace = dipole_sum_echo(s, times);
  for (int k = 1; k <= 3; ++k) {
    double peak = 0.0;
    double t_peak = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(times[i] - k * tau) < 0.3 * tau && trace[i] > peak) {
        peak = trace[i];
        t_peak = times[i];
      }
    }
    CHECK(t_peak == doctest::Approx(k * tau).epsilon(2e-3));
    CHECK(peak > 0.1);
  }
}

TEST_CASE("flat band: free-induction collapse of width ~1/B, no revival") {
  // flat spectrum over 200 MHz
  ComplexSpectrum s;
  s.grid = make_centered_grid(0.0, 100e6, 2001);
  s.depth.assign(s.grid.count, {0.3, 0.0});
  const auto sample = sample_ensemble(s, 100000);

  const double B = 200e6;
  const auto times = uniform_times(0.0, 1e-10, 1000);  // 100 ns << 1/df
  const auto trace = dipole_sum_echo(sample, times);

  // collapse: below 1/2 within ~0.6/B, fully dephased after 3/B
  int i_half = 0;
  while (trace[i_half] > 0.5) ++i_half;
  CHECK(times[i_half] < 1.0 / B);
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] > 3.0 / B) CHECK(trace[i] < 0.05);
}

TEST_CASE("sample_ensemble") {
  SUBCASE("single populated bin") {
    ComplexSpectrum s;
    s.grid = make_centered_grid(0.0, 50e6, 11);
    s.depth.assign(11, {0.0, 0.0});
    s.depth[7] = {0.4, 0.0};
    const auto sample = sample_ensemble(s, 100);
    REQUIRE(sample.detunings_hz.size() == 1);
    CHECK(sample.weights[0] == doctest::Approx(1.0));
    CHECK(sample.detunings_hz[0] == doctest::Approx(s.grid.freq(7)).epsilon(1e-12));
  }
  SUBCASE("weights proportional to Re D, normalized") {
    ComplexSpectrum s;
    s.grid = make_centered_grid(0.0, 50e6, 5);
    s.depth = {{0.1, 0.0}, {0.2, 0.0}, {0.4, 0.0}, {0.2, 0.0}, {0.1, 0.0}};
    const auto sample = sample_ensemble(s, 5);
    REQUIRE(sample.weights.size() == 5);
    CHECK(sample.weights[2] == doctest::Approx(0.4));
    double sum = 0.0;
    for (double w : sample.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("all-zero spectrum is an error") {
    ComplexSpectrum s;
    s.grid = make_centered_grid(0.0, 50e6, 11);
    s.depth.assign(11, {0.0, 0.0});
    CHECK_THROWS_AS(sample_ensemble(s, 10), std::domain_error);
  }
  SUBCASE("n_atoms caps the sample size") {
    ComplexSpectrum s;
    s.grid = make_centered_grid(0.0, 50e6, 1000);
    s.depth.assign(1000, {0.1, 0.0});
    const auto sample = sample_ensemble(s, 100);
    CHECK(sample.detunings_hz.size() <= 100);
    CHECK(sample.detunings_hz.size() >= 90);
  }
}

TEST_CASE("T1 decay envelope scales the revival") {
  const double delta = 100e6;
  AtomEnsembleSample s{{-0.5 * delta, 0.5 * delta}, {0.5, 0.5}};
  const double t1 = 30.4e-9;
  const std::vector<double> times = {0.0, 1.0 / delta};
  const auto plain = dipole_sum_echo(s, times);
  const auto damped = dipole_sum_echo(s, times, t1);
  CHECK(damped[1] / plain[1] == doctest::Approx(std::exp(-times[1] / t1)).epsilon(1e-9));
}
