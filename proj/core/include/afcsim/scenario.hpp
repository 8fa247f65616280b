#ifndef AFCSIM_SCENARIO_HPP
#define AFCSIM_SCENARIO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afcsim/atomic_model.hpp"
#include "afcsim/comb_fit.hpp"
#include "afcsim/config.hpp"
#include "afcsim/io_util.hpp"
#include "afcsim/propagation.hpp"
#include "afcsim/pulse.hpp"
#include "afcsim/pump.hpp"
#include "afcsim/spectral.hpp"
#include "afcsim/velocity_distribution.hpp"

namespace afcsim {

enum class FitMode { none, comb, peak };
enum class ReferenceConvention { bare, background };
enum class SpacingFrame { probe, pump };

/// Fully validated scenario: species, pump sequence, grids, probe and
/// analysis requests. Built from a config file; every cross reference
/// (addressed line, windows inside grids, tone velocities on the grid) is
/// checked before any computation runs.
struct Scenario {
  Config config;
  std::string hash;  // FNV-1a of the canonical config text

  AtomSpecies species;
  std::string data_dir;

  VelocityGridSpec velocity_grid;
  FrequencyGrid frequency_grid;
  TraceSpec trace;

  double prep_efficiency = 1.0;
  PumpConfig pump;
  std::optional<double> comb_spacing_probe_hz;  // probe-frame tooth spacing, when derived

  bool has_probe = false;
  std::vector<double> pulse_times_s;
  double pulse_fwhm_s = 2e-9;
  std::vector<double> pulse_amplitudes;
  double probe_carrier_hz = 0.0;

  FitMode fit_mode = FitMode::none;
  double fit_window_lo_hz = 0.0;
  double fit_window_hi_hz = 0.0;
  CombParams fit_guess;
  std::optional<double> fit_first_tooth_hz;

  std::vector<double> echo_window_centres_s;
  double echo_window_width_s = 5e-9;

  ReferenceConvention reference = ReferenceConvention::bare;
  double t1_decay_s = 0.0;  // 0: off

  std::string output_dir;  // relative paths resolve under the run root
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_config(Config cfg);

struct RunOptions {
  std::string out_root;  // empty: AFC_OUT_ROOT env var, else cwd
  int threads = 0;       // 0: hardware
  unsigned long long seed = 0;  // recorded; the pipeline is deterministic
  bool write_outputs = true;
};

struct ScenarioResult {
  Scenario scenario;
  VelocityDistribution prepared;   // after the full pump sequence
  ComplexSpectrum spectrum;
  std::optional<CombFit> comb_fit;
  std::optional<PeakFit> peak_fit;
  std::optional<PulseEnvelope> input;
  std::optional<PulseEnvelope> trace;
  std::optional<PulseEnvelope> reference;
  std::vector<EchoReport> echoes;           // one per echo window
  std::vector<double> per_mode_efficiency;  // echo energy over per-mode input energy
  std::map<std::string, std::string> artifacts;  // logical name -> path
  KeyValueDoc summary;
  std::string out_dir;
};

/// Runs the pump -> spectrum -> fit -> propagate -> echo pipeline and writes
/// the artifact files. Numerical failures are rethrown with the pipeline
/// stage named. Identical config and seed give byte-identical outputs.
ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& opts);
ScenarioResult run_scenario_file(const std::string& path, const RunOptions& opts);

/// Declared sweepable parameters: comb_spacing_hz, pump_duration_s, od_scale,
/// finesse. Returns the config for one sweep point with dependent keys
/// (echo windows, fit guesses) kept consistent.
Config sweep_point_config(const Config& base, const std::string& parameter, double value);

struct SweepRow {
  double value = 0.0;
  double efficiency = 0.0;
  double echo_time_s = 0.0;
  CombParams fitted;
  bool fit_ok = false;
  std::string point_dir;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string table_path;
};

SweepResult sweep(const std::string& scenario_path, const std::string& parameter,
                  const std::vector<double>& values, const RunOptions& opts);

}  // namespace afcsim

#endif
