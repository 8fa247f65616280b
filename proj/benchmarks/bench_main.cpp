#include <benchmark/benchmark.h>

#include "afcsim/comb_fit.hpp"
#include "afcsim/dipole_oracle.hpp"
#include "afcsim/faddeeva.hpp"
#include "afcsim/propagation.hpp"
#include "afcsim/pump.hpp"
#include "afcsim/spectral.hpp"

using namespace afcsim;

namespace {

static void BM_Faddeeva(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-3;
    benchmark::DoNotOptimize(faddeeva_w({x, 0.05}));
  }
}
BENCHMARK(BM_Faddeeva);

static void BM_QuadratureSpectrum(benchmark::State& state) {
  const AtomSpecies cs = caesium();
  const LineTable d2 = d2_line_table(cs);
  const VelocityDistribution dist =
      apply_prep_pump(thermal_populations(cs, {-1200.0, 1200.0, static_cast<int>(state.range(0))}),
                      0.3);
  const FrequencyGrid grid = make_centered_grid(-200e6, 1.3e9, 8192);
  for (auto _ : state) {
    benchmark::DoNotOptimize(complex_depth_spectrum(dist, d2, grid, 2.0));
  }
}
BENCHMARK(BM_QuadratureSpectrum)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

static void BM_VoigtSpectrum(benchmark::State& state) {
  const LineTable d2 = d2_line_table(caesium());
  const std::vector<GaussianVelocityClass> classes = {
      {0.0, 16.0, 0.3}, {-107.0, 16.0, 0.3}, {107.0, 16.0, 0.3}};
  const FrequencyGrid grid = make_centered_grid(-200e6, 1.3e9, 8192);
  for (auto _ : state) {
    benchmark::DoNotOptimize(voigt_depth_spectrum(classes, d2, grid, 2.0));
  }
}
BENCHMARK(BM_VoigtSpectrum)->Unit(benchmark::kMillisecond);

static void BM_Propagate(benchmark::State& state) {
  CombShape shape;
  shape.spacing_hz = 125.5e6;
  shape.teeth = 5;
  shape.first_tooth_hz = -251e6;
  shape.tooth_fwhm_hz = 45e6;
  shape.tooth_depth = 0.55;
  shape.background = 0.2;
  const ComplexSpectrum s = make_comb_spectrum(shape, make_centered_grid(0.0, 1.5e9, 32768));
  const PulseEnvelope in = make_pulse_train({10e-9}, 2e-9, {1.0}, {0.0, 10e-12, 8001}).envelope;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(in, s));
  }
}
BENCHMARK(BM_Propagate)->Unit(benchmark::kMillisecond);

static void BM_CombFit(benchmark::State& state) {
  CombShape shape;
  shape.spacing_hz = 83.7e6;
  shape.teeth = 8;
  shape.first_tooth_hz = -418.5e6;
  shape.tooth_fwhm_hz = 45e6;
  shape.tooth_depth = 0.55;
  shape.background = 0.2;
  const ComplexSpectrum s = make_comb_spectrum(shape, make_centered_grid(0.0, 1.5e9, 32768));
  CombParams guess;
  guess.delta_hz = 80e6;
  guess.gamma_hz = 40e6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_comb(s, -470e6, 220e6, guess));
  }
}
BENCHMARK(BM_CombFit)->Unit(benchmark::kMillisecond);

static void BM_DipoleSum(benchmark::State& state) {
  AtomEnsembleSample sample;
  const int atoms = static_cast<int>(state.range(0));
  for (int j = 0; j < atoms; ++j) {
    sample.detunings_hz.push_back(-400e6 + 800e6 * j / atoms);
    sample.weights.push_back(1.0 / atoms);
  }
  std::vector<double> times(4000);
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = i * 10e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dipole_sum_echo(sample, times));
  }
}
BENCHMARK(BM_DipoleSum)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
