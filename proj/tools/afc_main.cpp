#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afcsim/afc_theory.hpp"
#include "afcsim/comb_fit.hpp"
#include "afcsim/errors.hpp"
#include "afcsim/io_util.hpp"
#include "afcsim/scenario.hpp"
#include "afcsim/version.hpp"

namespace {

using namespace afcsim;

int cmd_run(const std::string& cfg, const RunOptions& opts) {
  const ScenarioResult res = run_scenario_file(cfg, opts);
  std::printf("scenario %s (hash %s)\n", cfg.c_str(), res.scenario.hash.c_str());
  if (res.comb_fit) {
    const CombParams& p = res.comb_fit->params;
    std::printf("comb fit: delta %.4g MHz  gamma %.4g MHz  d %.4g  d0 %.4g  finesse %.3g  "
                "bandwidth %.4g GHz\n",
                p.delta_hz / 1e6, p.gamma_hz / 1e6, p.d, p.d0, p.finesse, p.bandwidth_hz / 1e9);
  }
  if (res.peak_fit)
    std::printf("peak fit: centre %.4g MHz  fwhm %.4g MHz  amplitude %.4g  background %.4g\n",
                res.peak_fit->centre_hz / 1e6, res.peak_fit->fwhm_hz / 1e6,
                res.peak_fit->amplitude, res.peak_fit->background);
  for (std::size_t w = 0; w < res.echoes.size(); ++w) {
    const EchoReport& e = res.echoes[w];
    std::printf("echo[%zu]: time %.4g ns  efficiency %.4g%%  transmitted %.4g%%\n", w,
                e.echo_time_s / 1e-9, 100.0 * e.efficiency, 100.0 * e.transmitted_fraction);
  }
  std::printf("outputs in %s\n", res.out_dir.c_str());
  return 0;
}

int cmd_sweep(const std::string& cfg, const std::string& param, const std::vector<double>& values,
              const RunOptions& opts) {
  const SweepResult res = sweep(cfg, param, values, opts);
  for (const auto& row : res.rows)
    std::printf("%-14.6g efficiency %.4g%%  echo %.4g ns\n", row.value, 100.0 * row.efficiency,
                row.echo_time_s / 1e-9);
  std::printf("table: %s\n", res.table_path.c_str());
  return 0;
}

int cmd_theory(double d, double finesse, double d0, std::optional<double> delta) {
  TheoryInputs in;
  in.d = d;
  in.d0 = d0;
  in.finesse = finesse;
  in.delta_hz = delta.value_or(100e6);
  const EfficiencyBreakdown b = analytic_efficiency(in);
  std::printf("eta           %.6g  (%.4g%%)\n", b.eta, 100.0 * b.eta);
  std::printf("  coupling      (d/F)^2    %.6g\n", b.coupling);
  std::printf("  reabsorption  e^-d/F     %.6g\n", b.reabsorption);
  std::printf("  dephasing     e^-7/F^2   %.6g\n", b.dephasing);
  std::printf("  background    e^-d0      %.6g\n", b.background);
  if (delta) std::printf("echo time     %.6g ns\n", echo_time_s(*delta) / 1e-9);
  std::printf("optimal depth d* = 2F = %.6g\n", optimal_depth(finesse));
  return 0;
}

int cmd_fit(const std::string& spectrum_path, const std::string& mode,
            const std::vector<double>& window, double delta, double gamma, int teeth,
            std::optional<double> first_tooth, const std::string& out) {
  const ComplexSpectrum s = load_spectrum(spectrum_path);
  const double lo = window.empty() ? s.grid.start_hz : window[0];
  const double hi = window.empty() ? s.grid.end_hz() : window[1];

  KeyValueDoc doc;
  if (mode == "peak") {
    const PeakFit fit = fit_gaussian_peak(s, lo, hi);
    std::printf("peak: centre %.6g MHz  fwhm %.6g MHz  amplitude %.6g  background %.6g\n",
                fit.centre_hz / 1e6, fit.fwhm_hz / 1e6, fit.amplitude, fit.background);
    doc.set("mode", std::string("peak"));
    doc.set("centre_hz", fit.centre_hz);
    doc.set("fwhm_hz", fit.fwhm_hz);
    doc.set("amplitude", fit.amplitude);
    doc.set("background", fit.background);
    doc.set("residual_rms", fit.residual_rms);
  } else {
    CombParams guess;
    guess.delta_hz = delta;
    guess.gamma_hz = gamma;
    guess.m_teeth = teeth;
    const CombFit fit = fit_comb(s, lo, hi, guess, first_tooth);
    const CombParams& p = fit.params;
    std::printf("comb: delta %.6g MHz  gamma %.6g MHz  d %.6g  d0 %.6g  finesse %.4g  "
                "bandwidth %.4g GHz  residual %.3g\n",
                p.delta_hz / 1e6, p.gamma_hz / 1e6, p.d, p.d0, p.finesse, p.bandwidth_hz / 1e9,
                fit.residual_rms);
    doc.set("mode", std::string("comb"));
    doc.set("delta_hz", p.delta_hz);
    doc.set("gamma_hz", p.gamma_hz);
    doc.set("d", p.d);
    doc.set("d0", p.d0);
    doc.set("m_teeth", p.m_teeth);
    doc.set("bandwidth_hz", p.bandwidth_hz);
    doc.set("finesse", p.finesse);
    doc.set("first_tooth_hz", fit.first_tooth_hz);
    doc.set("residual_rms", fit.residual_rms);
  }
  if (!out.empty()) {
    doc.save(out);
    std::printf("report: %s\n", out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atomic frequency comb memory simulator for warm caesium vapour"};
  app.set_version_flag("--version", std::string(afcsim::version_string));
  app.require_subcommand(1);

  RunOptions opts;
  app.add_option("--out-root", opts.out_root,
                 "Root directory for outputs (default: $AFC_OUT_ROOT or cwd)");
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware)");
  unsigned long long seed = 0;
  app.add_option("--seed", seed, "Seed recorded in run summaries");

  auto* run = app.add_subcommand("run", "Run a scenario config");
  std::string run_cfg;
  run->add_option("config", run_cfg, "Scenario file")->required();

  auto* sw = app.add_subcommand("sweep", "Sweep a declared parameter over a value list");
  std::string sweep_cfg, sweep_param, sweep_values;
  sw->add_option("config", sweep_cfg, "Scenario file")->required();
  sw->add_option("--param", sweep_param,
                 "Parameter: comb_spacing_hz | pump_duration_s | od_scale | finesse")
      ->required();
  sw->add_option("--values", sweep_values, "Comma-separated values")->required();

  auto* th = app.add_subcommand("theory", "Closed-form comb efficiency");
  double th_d = 0.0, th_f = 0.0, th_d0 = 0.0;
  std::optional<double> th_delta;
  th->add_option("--d", th_d, "Tooth depth above background")->required();
  th->add_option("--f", th_f, "Finesse delta/gamma")->required();
  th->add_option("--d0", th_d0, "Background depth");
  double th_delta_raw = 0.0;
  auto* th_delta_opt = th->add_option("--delta", th_delta_raw, "Tooth spacing in Hz");

  auto* fit = app.add_subcommand("fit", "Fit a comb or single peak in a spectrum table");
  std::string fit_path, fit_mode = "comb", fit_out;
  std::vector<double> fit_window;
  double fit_delta = 0.0, fit_gamma = 45e6;
  int fit_teeth = 0;
  std::optional<double> fit_first;
  double fit_first_raw = 0.0;
  fit->add_option("spectrum", fit_path, "Spectrum table (freq_hz re im ...)")->required();
  fit->add_option("--mode", fit_mode, "comb | peak")->check(CLI::IsMember({"comb", "peak"}));
  fit->add_option("--window", fit_window, "lo,hi window in Hz")->delimiter(',')->expected(2);
  fit->add_option("--delta", fit_delta, "Spacing guess in Hz (comb mode)");
  fit->add_option("--gamma", fit_gamma, "Tooth width guess in Hz");
  fit->add_option("--teeth", fit_teeth, "Tooth count (0 = from window)");
  auto* fit_first_opt = fit->add_option("--first-tooth", fit_first_raw, "First tooth position, Hz");
  fit->add_option("--out", fit_out, "Write a key-value fit report here");

  CLI11_PARSE(app, argc, argv);
  opts.threads = threads;
  opts.seed = seed;
  if (th_delta_opt->count()) th_delta = th_delta_raw;
  if (fit_first_opt->count()) fit_first = fit_first_raw;

  try {
    if (*run) return cmd_run(run_cfg, opts);
    if (*sw) {
      std::vector<double> values;
      const Config list = Config::parse_string("[v]\nvalues = " + sweep_values + "\n", "--values");
      values = list.get_double_list("v", "values");
      return cmd_sweep(sweep_cfg, sweep_param, values, opts);
    }
    if (*th) return cmd_theory(th_d, th_f, th_d0, th_delta);
    if (*fit) {
      if (fit_mode == "comb" && fit_delta <= 0.0)
        throw ConfigError("comb mode needs --delta (spacing guess in Hz)");
      return cmd_fit(fit_path, fit_mode, fit_window, fit_delta, fit_gamma, fit_teeth, fit_first,
                     fit_out);
    }
  } catch (const afcsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const afcsim::StageError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
