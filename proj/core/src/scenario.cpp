#include "afcsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <sstream>

#include "afcsim/afc_theory.hpp"
#include "afcsim/parallel.hpp"
#include "afcsim/version.hpp"

namespace afcsim {

namespace {

FitMode parse_fit_mode(const std::string& s, const std::string& ctx) {
  if (s == "none") return FitMode::none;
  if (s == "comb") return FitMode::comb;
  if (s == "peak") return FitMode::peak;
  throw ConfigError(ctx + ": fit_mode must be none|comb|peak, got " + s);
}

ReferenceConvention parse_reference(const std::string& s, const std::string& ctx) {
  if (s == "bare") return ReferenceConvention::bare;
  if (s == "background") return ReferenceConvention::background;
  throw ConfigError(ctx + ": reference must be bare|background, got " + s);
}

SpacingFrame parse_frame(const std::string& s, const std::string& ctx) {
  if (s == "probe") return SpacingFrame::probe;
  if (s == "pump") return SpacingFrame::pump;
  throw ConfigError(ctx + ": spacing_frame must be probe|pump, got " + s);
}

BeamSign parse_beam(const std::string& s, const std::string& ctx) {
  if (s == "counter") return BeamSign::counter_propagating;
  if (s == "co") return BeamSign::co_propagating;
  throw ConfigError(ctx + ": beam_geometry must be counter|co, got " + s);
}

double pump_frame_spacing(const Config& cfg, const AtomSpecies& species) {
  const double spacing = cfg.get_double("pump", "comb_spacing_hz");
  const SpacingFrame frame =
      parse_frame(cfg.get_string_or("pump", "spacing_frame", "probe"), cfg.source_name());
  return frame == SpacingFrame::probe
             ? spacing * species.d2_wavelength_m / species.d1_wavelength_m
             : spacing;
}

template <typename F>
auto timed_stage(const std::string& name, KeyValueDoc& timings, F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  try {
    auto result = fn();
    const auto ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    timings.set("timing_" + name + "_ms", ms.count());
    return result;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  return scenario_from_config(Config::parse_file(path));
}

Scenario scenario_from_config(Config cfg) {
  Scenario sc;
  const std::string& ctx = cfg.source_name();

  sc.species = caesium(cfg.get_double_or("species", "temperature_k", 294.0));
  if (sc.species.temperature_k <= 0.0) throw ConfigError(ctx + ": temperature_k must be > 0");
  sc.data_dir = cfg.get_string_or("data", "dir", default_data_dir());

  const double v_half = cfg.get_double_or("grids", "velocity_halfspan_mps", 1200.0);
  sc.velocity_grid = {-v_half, v_half, cfg.get_int_or("grids", "velocity_bins", 16384)};
  if (v_half <= 0.0 || sc.velocity_grid.bins < 2) throw ConfigError(ctx + ": bad velocity grid");

  const double f_centre = cfg.get_double_or("grids", "freq_centre_hz", 0.0);
  const double f_half = cfg.get_double_or("grids", "freq_halfspan_hz", 1.5e9);
  const int f_bins = cfg.get_int_or("grids", "freq_bins", 32768);
  if (f_half <= 0.0 || f_bins < 2) throw ConfigError(ctx + ": bad frequency grid");
  sc.frequency_grid = make_centered_grid(f_centre, f_half, f_bins);

  sc.trace.t0_s = cfg.get_double_or("grids", "trace_t0_s", 0.0);
  const double span = cfg.get_double_or("grids", "trace_span_s", 80e-9);
  sc.trace.dt_s = cfg.get_double_or("grids", "trace_dt_s", 10e-12);
  if (span <= 0.0 || sc.trace.dt_s <= 0.0) throw ConfigError(ctx + ": bad trace grid");
  sc.trace.samples = static_cast<int>(std::llround(span / sc.trace.dt_s)) + 1;

  // pump sequence
  sc.prep_efficiency = cfg.get_double_or("pump", "prep_efficiency", 1.0);
  if (sc.prep_efficiency < 0.0 || sc.prep_efficiency > 1.0)
    throw ConfigError(ctx + ": prep_efficiency must be in [0, 1]");
  sc.pump.addressed_line = parse_line_label(cfg.get_string_or("pump", "addressed_line", "3-4"));
  sc.pump.carrier_detuning_hz = cfg.get_double_or("pump", "carrier_detuning_hz", 0.0);
  sc.pump.effective_linewidth_hz = cfg.get_double("pump", "effective_linewidth_hz");
  sc.pump.pump_rate_hz = cfg.get_double("pump", "pump_rate_hz");
  sc.pump.duration_s = cfg.get_double("pump", "duration_s");
  sc.pump.sign = parse_beam(cfg.get_string_or("pump", "beam_geometry", "counter"), ctx);

  const bool has_spacing = cfg.has("pump", "comb_spacing_hz");
  const bool has_explicit = cfg.has("pump", "modulation_freqs_hz");
  if (has_spacing && has_explicit)
    throw ConfigError(ctx + ": give either comb_spacing_hz or modulation_freqs_hz, not both");
  if (has_spacing) {
    const double spacing = cfg.get_double("pump", "comb_spacing_hz");
    if (spacing <= 0.0) throw ConfigError(ctx + ": comb_spacing_hz must be > 0");
    const double base = pump_frame_spacing(cfg, sc.species);
    const int count = cfg.get_int_or("pump", "modulation_count", 1);
    if (count < 0) throw ConfigError(ctx + ": modulation_count must be >= 0");
    for (int k = 1; k <= count; ++k) sc.pump.modulation_freqs_hz.push_back(k * base);
    sc.comb_spacing_probe_hz =
        base * sc.species.d1_wavelength_m / sc.species.d2_wavelength_m;
  } else if (has_explicit) {
    sc.pump.modulation_freqs_hz = cfg.get_double_list("pump", "modulation_freqs_hz");
    cfg.get_int_or("pump", "modulation_count", 0);  // not meaningful with an explicit list
  }
  sc.pump.tone_weights = cfg.get_double_list_or(
      "pump", "tone_weights", std::vector<double>(sc.pump.modulation_freqs_hz.size() + 1, 1.0));
  if (sc.pump.tone_weights.size() != sc.pump.modulation_freqs_hz.size() + 1)
    throw ConfigError(ctx + ": tone_weights needs 1 + modulation count entries");

  // medium
  if (cfg.get_double("medium", "od_scale") <= 0.0)
    throw ConfigError(ctx + ": od_scale must be > 0");
  sc.reference = parse_reference(cfg.get_string_or("medium", "reference", "bare"), ctx);
  sc.t1_decay_s = cfg.get_double_or("medium", "t1_decay_s", 0.0);
  if (sc.t1_decay_s < 0.0) throw ConfigError(ctx + ": t1_decay_s must be >= 0");

  // probe
  sc.has_probe = cfg.has_section("probe");
  if (sc.has_probe) {
    sc.pulse_times_s = cfg.get_double_list("probe", "pulse_times_s");
    sc.pulse_fwhm_s = cfg.get_double("probe", "pulse_fwhm_s");
    sc.pulse_amplitudes = cfg.get_double_list_or(
        "probe", "pulse_amplitudes", std::vector<double>(sc.pulse_times_s.size(), 1.0));
    sc.probe_carrier_hz = cfg.get_double_or("probe", "carrier_detuning_hz", 0.0);
    if (sc.pulse_amplitudes.size() != sc.pulse_times_s.size())
      throw ConfigError(ctx + ": pulse_amplitudes must match pulse_times_s");
    if (sc.pulse_fwhm_s <= 0.0) throw ConfigError(ctx + ": pulse_fwhm_s must be > 0");
    const double t_end = sc.trace.t0_s + (sc.trace.samples - 1) * sc.trace.dt_s;
    for (double t : sc.pulse_times_s)
      if (t < sc.trace.t0_s || t > t_end)
        throw ConfigError(ctx + ": pulse time " + format_double(t) + " outside the trace span");
  }

  // analysis
  if (cfg.has_section("analysis")) {
    sc.fit_mode = parse_fit_mode(cfg.get_string_or("analysis", "fit_mode", "none"), ctx);
    if (sc.fit_mode != FitMode::none) {
      const auto window = cfg.get_double_list("analysis", "fit_window_hz");
      if (window.size() != 2 || window[0] >= window[1])
        throw ConfigError(ctx + ": fit_window_hz wants `lo,hi` with lo < hi");
      sc.fit_window_lo_hz = window[0];
      sc.fit_window_hi_hz = window[1];
      if (window[0] < sc.frequency_grid.start_hz || window[1] > sc.frequency_grid.end_hz())
        throw ConfigError(ctx + ": fit window outside the frequency grid");
    }
    if (sc.fit_mode == FitMode::comb) {
      sc.fit_guess.delta_hz = cfg.get_double_or("analysis", "fit_delta_guess_hz",
                                                sc.comb_spacing_probe_hz.value_or(0.0));
      if (sc.fit_guess.delta_hz <= 0.0)
        throw ConfigError(ctx + ": comb fit needs fit_delta_guess_hz (or comb_spacing_hz)");
      sc.fit_guess.gamma_hz = cfg.get_double_or("analysis", "fit_gamma_guess_hz", 45e6);
      sc.fit_guess.d = cfg.get_double_or("analysis", "fit_d_guess", 0.0);
      sc.fit_guess.d0 = cfg.get_double_or("analysis", "fit_d0_guess", 0.0);
      sc.fit_guess.m_teeth = cfg.get_int_or("analysis", "fit_teeth", 0);
      if (cfg.has("analysis", "fit_first_tooth_hz"))
        sc.fit_first_tooth_hz = cfg.get_double("analysis", "fit_first_tooth_hz");
    }
    if (cfg.has("analysis", "echo_window_centres_s")) {
      if (!sc.has_probe)
        throw ConfigError(ctx + ": echo windows need a [probe] section");
      sc.echo_window_centres_s = cfg.get_double_list("analysis", "echo_window_centres_s");
      sc.echo_window_width_s = cfg.get_double_or("analysis", "echo_window_width_s", 5e-9);
      if (sc.echo_window_width_s <= 0.0)
        throw ConfigError(ctx + ": echo_window_width_s must be > 0");
      const double t_end = sc.trace.t0_s + (sc.trace.samples - 1) * sc.trace.dt_s;
      for (double c : sc.echo_window_centres_s)
        if (c - 0.5 * sc.echo_window_width_s < sc.trace.t0_s ||
            c + 0.5 * sc.echo_window_width_s > t_end)
          throw ConfigError(ctx + ": echo window at " + format_double(c) +
                            " extends outside the trace span");
    }
  }

  sc.output_dir = cfg.get_string_or("output", "dir", "run");

  // cross references that need the bundled data: addressed line and tone reach
  {
    const LineTable d1 = d1_line_table(sc.species, sc.data_dir + "/cs_d1_lines.dat");
    const TransitionLine* line = d1.find(sc.pump.addressed_line);
    if (!line)
      throw ConfigError(ctx + ": addressed_line " + to_string(sc.pump.addressed_line) +
                        " not present in the D1 line table");
    for (const auto& tone : expand_tones(sc.pump)) {
      const double v = detuning_to_velocity(*line, tone.detuning_hz, sc.pump.sign);
      if (v < sc.velocity_grid.v_min_mps || v > sc.velocity_grid.v_max_mps)
        throw ConfigError(ctx + ": pump tone at " + format_double(tone.detuning_hz) +
                          " Hz addresses velocity " + format_double(v) +
                          " m/s, outside the velocity grid");
    }
  }

  cfg.require_all_consumed();
  sc.hash = hash_hex(fnv1a64(cfg.canonical_text()));
  sc.config = std::move(cfg);
  return sc;
}

ScenarioResult run_scenario_file(const std::string& path, const RunOptions& opts) {
  return run_scenario(load_scenario(path), opts);
}

ScenarioResult run_scenario(const Scenario& sc, const RunOptions& opts) {
  if (opts.threads > 0) set_thread_count(opts.threads);

  ScenarioResult res;
  res.scenario = sc;

  std::string root = opts.out_root;
  if (root.empty()) {
    if (const char* env = std::getenv("AFC_OUT_ROOT"); env && *env) root = env;
  }
  std::filesystem::path out_dir(sc.output_dir);
  if (out_dir.is_relative() && !root.empty()) out_dir = std::filesystem::path(root) / out_dir;
  res.out_dir = out_dir.string();

  KeyValueDoc& summary = res.summary;
  summary.add_header("afcsim run summary");
  summary.set("scenario", sc.config.source_name());
  summary.set("scenario_hash", sc.hash);
  summary.set("afcsim_version", version_string);
  summary.set("seed", static_cast<long long>(opts.seed));
  summary.set("threads", thread_count());
  for (const auto& [k, v] : sc.config.flattened()) summary.set("config." + k, v);

  const LineTable d1 = d1_line_table(sc.species, sc.data_dir + "/cs_d1_lines.dat");
  const LineTable d2 = d2_line_table(sc.species, sc.data_dir + "/cs_d2_lines.dat");
  const double od_scale = sc.config.get_double("medium", "od_scale");

  const VelocityDistribution thermal = timed_stage("thermal", summary, [&] {
    return thermal_populations(sc.species, sc.velocity_grid);
  });
  const VelocityDistribution prepped = timed_stage("prep_pump", summary, [&] {
    return apply_prep_pump(thermal, sc.prep_efficiency);
  });
  res.prepared = timed_stage("vsp", summary, [&] { return apply_vsp(prepped, sc.pump, d1); });
  summary.set("population_initial", thermal.total_population);
  summary.set("population_final", res.prepared.sum_population());

  res.spectrum = timed_stage("spectrum", summary, [&] {
    return complex_depth_spectrum(res.prepared, d2, sc.frequency_grid, od_scale);
  });

  if (sc.fit_mode == FitMode::comb) {
    res.comb_fit = timed_stage("fit", summary, [&] {
      return fit_comb(res.spectrum, sc.fit_window_lo_hz, sc.fit_window_hi_hz, sc.fit_guess,
                      sc.fit_first_tooth_hz);
    });
    const CombParams& p = res.comb_fit->params;
    summary.set("fit_delta_hz", p.delta_hz);
    summary.set("fit_gamma_hz", p.gamma_hz);
    summary.set("fit_d", p.d);
    summary.set("fit_d0", p.d0);
    summary.set("fit_m_teeth", p.m_teeth);
    summary.set("fit_bandwidth_hz", p.bandwidth_hz);
    summary.set("fit_finesse", p.finesse);
    summary.set("fit_residual_rms", res.comb_fit->residual_rms);
    summary.set("fit_first_tooth_hz", res.comb_fit->first_tooth_hz);
  } else if (sc.fit_mode == FitMode::peak) {
    res.peak_fit = timed_stage("fit", summary, [&] {
      return fit_gaussian_peak(res.spectrum, sc.fit_window_lo_hz, sc.fit_window_hi_hz);
    });
    summary.set("fit_peak_centre_hz", res.peak_fit->centre_hz);
    summary.set("fit_peak_fwhm_hz", res.peak_fit->fwhm_hz);
    summary.set("fit_peak_amplitude", res.peak_fit->amplitude);
    summary.set("fit_peak_background", res.peak_fit->background);
    summary.set("fit_residual_rms", res.peak_fit->residual_rms);
  }

  if (sc.has_probe) {
    const PulseTrain train = timed_stage("probe", summary, [&] {
      return make_pulse_train(sc.pulse_times_s, sc.pulse_fwhm_s, sc.pulse_amplitudes, sc.trace,
                              sc.probe_carrier_hz);
    });
    res.input = train.envelope;
    if (train.overlap_warning) summary.set("probe_overlap_warning", true);

    PropagationOptions popts;
    if (sc.t1_decay_s > 0.0) {
      popts.t1_decay_s = sc.t1_decay_s;
      popts.t1_origin_s = sc.pulse_times_s.front();
    }
    res.trace = timed_stage("propagate", summary, [&] {
      return propagate(*res.input, res.spectrum, popts);
    });

    if (sc.reference == ReferenceConvention::background) {
      res.reference = timed_stage("reference", summary, [&] {
        const ComplexSpectrum bg = complex_depth_spectrum(prepped, d2, sc.frequency_grid, od_scale);
        return propagate(*res.input, bg, popts);
      });
    } else {
      res.reference = res.input;  // transparent medium: prep emptied F=4
    }

    int widx = 0;
    for (double centre : sc.echo_window_centres_s) {
      const EchoReport report = timed_stage("echo", summary, [&] {
        return echo_efficiency(*res.trace, *res.reference, centre, sc.echo_window_width_s);
      });
      res.echoes.push_back(report);
      const std::string prefix = "echo" + std::to_string(widx) + "_";
      summary.set(prefix + "window_centre_s", report.window_centre_s);
      summary.set(prefix + "window_width_s", report.window_width_s);
      summary.set(prefix + "time_s", report.echo_time_s);
      summary.set(prefix + "efficiency", report.efficiency);
      summary.set(prefix + "transmitted_fraction", report.transmitted_fraction);
      ++widx;
    }

    // per-mode efficiencies when windows pair up with input modes: the echo
    // energy of mode m is referenced to that mode's share a_m^2 / sum a^2 of
    // the input energy
    if (!res.echoes.empty() && sc.echo_window_centres_s.size() == sc.pulse_times_s.size()) {
      double a2_sum = 0.0;
      for (double a : sc.pulse_amplitudes) a2_sum += a * a;
      for (std::size_t m = 0; m < res.echoes.size(); ++m) {
        const double frac = sc.pulse_amplitudes[m] * sc.pulse_amplitudes[m] / a2_sum;
        const double eff = frac > 0.0 ? res.echoes[m].efficiency / frac : 0.0;
        res.per_mode_efficiency.push_back(eff);
        summary.set("echo" + std::to_string(m) + "_per_mode_efficiency", eff);
      }
    }
  }

  if (opts.write_outputs) {
    timed_stage("write", summary, [&] {
      const std::vector<std::string> header = {
          "scenario_hash: " + sc.hash,
          "afcsim_version: " + std::string(version_string),
      };
      auto path = [&](const char* name) { return (std::filesystem::path(res.out_dir) / name).string(); };

      save_distribution(res.prepared, path("velocity_distribution.tsv"), header);
      res.artifacts["distribution"] = path("velocity_distribution.tsv");

      save_spectrum(res.spectrum, path("spectrum.tsv"), header);
      res.artifacts["spectrum"] = path("spectrum.tsv");

      if (res.comb_fit || res.peak_fit) {
        KeyValueDoc fit;
        for (const auto& h : header) fit.add_header(h);
        if (res.comb_fit) {
          fit.set("mode", std::string("comb"));
          fit.set("delta_hz", res.comb_fit->params.delta_hz);
          fit.set("gamma_hz", res.comb_fit->params.gamma_hz);
          fit.set("d", res.comb_fit->params.d);
          fit.set("d0", res.comb_fit->params.d0);
          fit.set("m_teeth", res.comb_fit->params.m_teeth);
          fit.set("bandwidth_hz", res.comb_fit->params.bandwidth_hz);
          fit.set("finesse", res.comb_fit->params.finesse);
          fit.set("first_tooth_hz", res.comb_fit->first_tooth_hz);
          fit.set("residual_rms", res.comb_fit->residual_rms);
          fit.set("iterations", res.comb_fit->iterations);
          fit.set("converged", res.comb_fit->converged);
          for (std::size_t m = 0; m < res.comb_fit->tooth_depths.size(); ++m)
            fit.set("tooth_depth_" + std::to_string(m), res.comb_fit->tooth_depths[m]);
        } else {
          fit.set("mode", std::string("peak"));
          fit.set("centre_hz", res.peak_fit->centre_hz);
          fit.set("fwhm_hz", res.peak_fit->fwhm_hz);
          fit.set("amplitude", res.peak_fit->amplitude);
          fit.set("background", res.peak_fit->background);
          fit.set("residual_rms", res.peak_fit->residual_rms);
          fit.set("iterations", res.peak_fit->iterations);
          fit.set("converged", res.peak_fit->converged);
        }
        fit.save(path("fit_report.kv"));
        res.artifacts["fit_report"] = path("fit_report.kv");
      }

      if (res.trace) {
        save_trace(*res.input, path("input.tsv"), header);
        res.artifacts["input"] = path("input.tsv");
        save_trace(*res.trace, path("trace.tsv"), header);
        res.artifacts["trace"] = path("trace.tsv");
        if (sc.reference == ReferenceConvention::background) {
          save_trace(*res.reference, path("reference.tsv"), header);
          res.artifacts["reference"] = path("reference.tsv");
        }
      }

      if (!res.echoes.empty()) {
        KeyValueDoc echo;
        for (const auto& h : header) echo.add_header(h);
        echo.set("windows", static_cast<long long>(res.echoes.size()));
        for (std::size_t w = 0; w < res.echoes.size(); ++w) {
          const std::string p = "window" + std::to_string(w) + "_";
          echo.set(p + "centre_s", res.echoes[w].window_centre_s);
          echo.set(p + "width_s", res.echoes[w].window_width_s);
          echo.set(p + "echo_time_s", res.echoes[w].echo_time_s);
          echo.set(p + "efficiency", res.echoes[w].efficiency);
          echo.set(p + "transmitted_fraction", res.echoes[w].transmitted_fraction);
          if (w < res.per_mode_efficiency.size())
            echo.set(p + "per_mode_efficiency", res.per_mode_efficiency[w]);
        }
        echo.save(path("echo_report.kv"));
        res.artifacts["echo_report"] = path("echo_report.kv");
      }
      return 0;
    });

    for (const auto& [name, p] : res.artifacts) summary.set("artifact_" + name, p);
    summary.save((std::filesystem::path(res.out_dir) / "run_summary.kv").string());
    res.artifacts["run_summary"] =
        (std::filesystem::path(res.out_dir) / "run_summary.kv").string();
  }

  return res;
}

Config sweep_point_config(const Config& base, const std::string& parameter, double value) {
  Config cfg = base;
  if (parameter == "comb_spacing_hz") {
    if (!cfg.has("pump", "comb_spacing_hz"))
      throw ConfigError("sweep over comb_spacing_hz needs the scenario to use comb_spacing_hz");
    const AtomSpecies species = caesium(cfg.get_double_or("species", "temperature_k", 294.0));
    const double ratio = species.d1_wavelength_m / species.d2_wavelength_m;
    const double old_probe = pump_frame_spacing(cfg, species) * ratio;
    cfg.set("pump", "comb_spacing_hz", format_double(value));
    const double new_probe = pump_frame_spacing(cfg, species) * ratio;
    // keep dependent analysis settings aligned with the new rephasing time
    if (cfg.has("analysis", "echo_window_centres_s")) {
      const double shift = 1.0 / new_probe - 1.0 / old_probe;
      std::string shifted;
      for (double c : cfg.get_double_list("analysis", "echo_window_centres_s")) {
        if (!shifted.empty()) shifted += ",";
        shifted += format_double(c + shift);
      }
      cfg.set("analysis", "echo_window_centres_s", shifted);
    }
    if (cfg.has("analysis", "fit_delta_guess_hz"))
      cfg.set("analysis", "fit_delta_guess_hz", format_double(new_probe));
    cfg.remove("analysis", "fit_first_tooth_hz");
  } else if (parameter == "pump_duration_s") {
    cfg.set("pump", "duration_s", format_double(value));
  } else if (parameter == "od_scale") {
    cfg.set("medium", "od_scale", format_double(value));
  } else if (parameter == "finesse") {
    if (value <= 0.0) throw ConfigError("finesse sweep values must be > 0");
    if (!cfg.has("pump", "comb_spacing_hz"))
      throw ConfigError("sweep over finesse needs the scenario to use comb_spacing_hz");
    const AtomSpecies species = caesium(cfg.get_double_or("species", "temperature_k", 294.0));
    cfg.set("pump", "effective_linewidth_hz",
            format_double(pump_frame_spacing(cfg, species) / value));
  } else {
    throw ConfigError("parameter " + parameter +
                      " is not sweepable (declared: comb_spacing_hz, pump_duration_s, od_scale, "
                      "finesse)");
  }
  return cfg;
}

SweepResult sweep(const std::string& scenario_path, const std::string& parameter,
                  const std::vector<double>& values, const RunOptions& opts) {
  if (values.empty()) throw ConfigError("sweep needs a non-empty value list");
  const Config base = Config::parse_file(scenario_path);

  // validate every point before any output is produced
  std::vector<Scenario> scenarios;
  for (std::size_t i = 0; i < values.size(); ++i) {
    Config point = sweep_point_config(base, parameter, values[i]);
    char sub[32];
    std::snprintf(sub, sizeof(sub), "point%02zu", i);
    point.set("output", "dir",
              (std::filesystem::path(base.get_string_or("output", "dir", "run") + "_sweep") / sub)
                  .string());
    scenarios.push_back(scenario_from_config(std::move(point)));
  }

  std::vector<SweepRow> rows(values.size());
  const int workers = std::min<int>(static_cast<int>(values.size()), thread_count());
  std::vector<std::future<void>> futures;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1)) {
        const ScenarioResult r = run_scenario(scenarios[i], opts);
        SweepRow row;
        row.value = values[i];
        row.point_dir = r.out_dir;
        if (!r.echoes.empty()) {
          row.efficiency = r.echoes.front().efficiency;
          row.echo_time_s = r.echoes.front().echo_time_s - scenarios[i].pulse_times_s.front();
        }
        if (r.comb_fit) {
          row.fitted = r.comb_fit->params;
          row.fit_ok = true;
        }
        rows[i] = row;
      }
    }));
  }
  for (auto& f : futures) f.get();

  SweepResult out;
  out.rows = std::move(rows);

  std::string root = opts.out_root;
  if (root.empty()) {
    if (const char* env = std::getenv("AFC_OUT_ROOT"); env && *env) root = env;
  }
  std::filesystem::path dir(base.get_string_or("output", "dir", "run") + "_sweep");
  if (dir.is_relative() && !root.empty()) dir = std::filesystem::path(root) / dir;

  std::ostringstream table;
  table << "# afcsim sweep over " << parameter << "\n";
  table << "# scenario: " << scenario_path << "\n";
  table << "# columns: " << parameter
        << " efficiency echo_time_s delta_hz gamma_hz d d0 finesse bandwidth_hz m_teeth\n";
  for (const auto& row : out.rows) {
    table << format_double(row.value) << ' ' << format_double(row.efficiency) << ' '
          << format_double(row.echo_time_s);
    if (row.fit_ok) {
      table << ' ' << format_double(row.fitted.delta_hz) << ' ' << format_double(row.fitted.gamma_hz)
            << ' ' << format_double(row.fitted.d) << ' ' << format_double(row.fitted.d0) << ' '
            << format_double(row.fitted.finesse) << ' ' << format_double(row.fitted.bandwidth_hz)
            << ' ' << row.fitted.m_teeth;
    } else {
      table << " nan nan nan nan nan nan 0";
    }
    table << '\n';
  }
  out.table_path = (dir / "sweep.tsv").string();
  atomic_write_file(out.table_path, table.str());
  return out;
}

}  // namespace afcsim
