#include <cstdio>
#include <filesystem>
#include <string>

#include "afcsim/io_util.hpp"
#include "afcsim/scenario.hpp"
#include "doctest.h"

using namespace afcsim;

namespace {

// a fast, fully featured scenario for pipeline tests
std::string small_scenario(const std::string& out_dir) {
  return std::string(R"([species]
temperature_k = 294.0

[grids]
velocity_halfspan_mps = 1200.0
velocity_bins = 4096
freq_centre_hz = 0.0
freq_halfspan_hz = 1.2e9
freq_bins = 8192
trace_t0_s = 0.0
trace_span_s = 70e-9
trace_dt_s = 2e-11

[pump]
prep_efficiency = 0.96
addressed_line = 3-4
comb_spacing_hz = 125.5e6
spacing_frame = probe
modulation_count = 1
tone_weights = 0.8,1.0
effective_linewidth_hz = 21e6
pump_rate_hz = 2.5e6
duration_s = 1.2e-6

[medium]
od_scale = 5e8

[probe]
pulse_times_s = 10e-9
pulse_fwhm_s = 2e-9
carrier_detuning_hz = -125.5e6

[analysis]
fit_mode = comb
fit_window_hz = -440e6,190e6
fit_delta_guess_hz = 125.5e6
fit_gamma_guess_hz = 45e6
fit_teeth = 5
fit_first_tooth_hz = -376.5e6
echo_window_centres_s = 17.968e-9
echo_window_width_s = 5e-9

[output]
dir = )") + out_dir + "\n";
}

std::string write_tmp(const std::string& name, const std::string& content) {
  const std::string path = (std::filesystem::temp_directory_path() / name).string();
  atomic_write_file(path, content);
  return path;
}

}  // namespace

TEST_CASE("config parser diagnostics carry line numbers") {
  SUBCASE("garbage line") {
    try {
      Config::parse_string("[a]\nkey value without equals\n", "bad.cfg");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
    }
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_AS(Config::parse_string("[a]\nx = 1\nx = 2\n", "dup.cfg"), ConfigError);
  }
  SUBCASE("key outside any section") {
    CHECK_THROWS_AS(Config::parse_string("x = 1\n", "top.cfg"), ConfigError);
  }
  SUBCASE("typed access failure names the line") {
    const Config c = Config::parse_string("[a]\nx = not_a_number\n", "typed.cfg");
    try {
      c.get_double("a", "x");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("typed.cfg:2") != std::string::npos);
    }
  }
  SUBCASE("unknown keys are rejected wholesale") {
    const std::string path =
        write_tmp("unknown_key.cfg", small_scenario("x") + "\n[nonsense]\nfoo = 1\n");
    CHECK_THROWS_AS(load_scenario(path), ConfigError);
    std::remove(path.c_str());
  }
}

TEST_CASE("scenario validation") {
  SUBCASE("shipped scenarios load") {
    for (const char* name : {"fig2_single_class.cfg", "fig3_left_comb125.cfg",
                             "fig3_right_comb83.cfg", "fig4a_comb125.cfg",
                             "fig4b_multimode.cfg"}) {
      const Scenario sc = load_scenario(std::string(AFCSIM_SCENARIO_DIR) + "/" + name);
      CHECK(!sc.hash.empty());
    }
  }
  SUBCASE("echo window outside the trace") {
    std::string text = small_scenario("x");
    const auto pos = text.find("echo_window_centres_s = 17.968e-9");
    text.replace(pos, std::string("echo_window_centres_s = 17.968e-9").size(),
                 "echo_window_centres_s = 69.9e-9");
    const std::string path = write_tmp("bad_window.cfg", text);
    CHECK_THROWS_AS(load_scenario(path), ConfigError);
    std::remove(path.c_str());
  }
  SUBCASE("addressed line must exist") {
    std::string text = small_scenario("x");
    const auto pos = text.find("addressed_line = 3-4");
    text.replace(pos, std::string("addressed_line = 3-4").size(), "addressed_line = 2-7");
    const std::string path = write_tmp("bad_line.cfg", text);
    CHECK_THROWS_AS(load_scenario(path), ConfigError);
    std::remove(path.c_str());
  }
  SUBCASE("pump tone beyond the velocity grid") {
    std::string text = small_scenario("x");
    text.replace(text.find("comb_spacing_hz = 125.5e6"),
                 std::string("comb_spacing_hz = 125.5e6").size(),
                 "comb_spacing_hz = 1.6e9");
    const std::string path = write_tmp("bad_tone.cfg", text);
    CHECK_THROWS_AS(load_scenario(path), ConfigError);
    std::remove(path.c_str());
  }
}

TEST_CASE("pipeline runs deterministically and stamps artifacts") {
  const auto tmp = std::filesystem::temp_directory_path() / "afcsim_det";
  std::filesystem::remove_all(tmp);
  const std::string cfg_path = write_tmp("det.cfg", small_scenario((tmp / "a").string()));
  const std::string cfg_path2 = write_tmp("det.cfg", small_scenario((tmp / "b").string()));

  RunOptions opts;
  opts.threads = 2;
  const ScenarioResult a = run_scenario_file(cfg_path, opts);
  opts.threads = 1;  // thread count must not change the numbers
  const ScenarioResult b = run_scenario_file(cfg_path2, opts);

  for (const char* artifact : {"spectrum", "trace", "distribution", "fit_report", "echo_report"}) {
    REQUIRE(a.artifacts.count(artifact));
    REQUIRE(b.artifacts.count(artifact));
    const std::string fa = read_file(a.artifacts.at(artifact));
    const std::string fb = read_file(b.artifacts.at(artifact));
    // identical config except the output dir: tables are byte-identical, and
    // each one names its scenario hash
    if (std::string(artifact) != "fit_report" && std::string(artifact) != "echo_report")
      CHECK(fa == fb);
    CHECK(fa.find("scenario_hash") != std::string::npos);
  }
  // the fit and echo reports differ only in the hash line (tiny config diff:
  // the output dir), so compare them with the hash stripped
  auto strip = [](std::string s) {
    const auto pos = s.find("scenario_hash");
    const auto end = s.find('\n', pos);
    return s.substr(0, pos) + s.substr(end);
  };
  CHECK(strip(read_file(a.artifacts.at("fit_report"))) ==
        strip(read_file(b.artifacts.at("fit_report"))));
  CHECK(strip(read_file(a.artifacts.at("echo_report"))) ==
        strip(read_file(b.artifacts.at("echo_report"))));

  // conservation through the full pump sequence
  CHECK(std::abs(a.summary.get_double("population_final") -
                 a.summary.get_double("population_initial")) < 1e-10);

  std::filesystem::remove_all(tmp);
  std::remove(cfg_path.c_str());
}

TEST_CASE("sweep over the comb spacing lands the echoes at 1/delta") {
  const auto tmp = std::filesystem::temp_directory_path() / "afcsim_sweep";
  std::filesystem::remove_all(tmp);
  const std::string cfg_path = write_tmp("sweep.cfg", small_scenario((tmp / "base").string()));

  RunOptions opts;
  const SweepResult result =
      sweep(cfg_path, "comb_spacing_hz", {62.75e6, 83.7e6, 125.5e6}, opts);

  REQUIRE(result.rows.size() == 3);
  const double want[] = {15.94e-9, 11.95e-9, 7.97e-9};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(result.rows[i].echo_time_s - want[i]) < 45e-12);
    CHECK(result.rows[i].fit_ok);
  }
  CHECK(std::filesystem::exists(result.table_path));

  SUBCASE("empty sweep writes nothing") {
    CHECK_THROWS_AS(sweep(cfg_path, "comb_spacing_hz", {}, opts), ConfigError);
  }
  SUBCASE("unknown parameter") {
    CHECK_THROWS_AS(sweep(cfg_path, "cell_length", {1.0}, opts), ConfigError);
  }

  std::filesystem::remove_all(tmp);
  std::remove(cfg_path.c_str());
}

TEST_CASE("stage errors name the failing stage") {
  // od_scale so large the spectrum wings violate the edge criterion is hard
  // to trigger; instead push the probe bandwidth beyond the grid
  std::string text = small_scenario((std::filesystem::temp_directory_path() / "x").string());
  text.replace(text.find("pulse_fwhm_s = 2e-9"), std::string("pulse_fwhm_s = 2e-9").size(),
               "pulse_fwhm_s = 0.05e-9");
  const std::string path = write_tmp("stage_err.cfg", text);
  RunOptions opts;
  opts.write_outputs = false;
  try {
    run_scenario_file(path, opts);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "propagate");
  }
  std::remove(path.c_str());
}
