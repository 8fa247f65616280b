#include <cmath>
#include <random>

#include "afcsim/afc_theory.hpp"
#include "afcsim/propagation.hpp"
#include "doctest.h"

using namespace afcsim;

TEST_CASE("efficiency formula anchors") {
  SUBCASE("no teeth, no echo") {
    CHECK(analytic_efficiency({0.0, 0.2, 1.9, 125.5e6}).eta == 0.0);
  }
  SUBCASE("shallow comb read from the spectrum: about 0.7%") {
    const EfficiencyBreakdown b = analytic_efficiency({0.55, 0.2, 1.9, 83.7e6});
    CHECK(b.eta == doctest::Approx(0.0074).epsilon(0.01));
    CHECK(b.eta > 0.0065);
    CHECK(b.eta < 0.0080);
    // decomposition multiplies back
    CHECK(b.coupling * b.reabsorption * b.dephasing * b.background ==
          doctest::Approx(b.eta).epsilon(1e-12));
  }
  SUBCASE("depths inferred from the echo ratio: about 3.7%") {
    CHECK(analytic_efficiency({2.0, 0.4, 1.9, 83.7e6}).eta == doctest::Approx(0.037).epsilon(0.01));
  }
}

TEST_CASE("echo time") {
  CHECK(echo_time_s(125.5e6) == doctest::Approx(7.968e-9).epsilon(1e-4));
  CHECK(echo_time_s(83.7e6) == doctest::Approx(11.947e-9).epsilon(1e-4));
  CHECK(echo_time_s(1e15) < 1.1e-15);
  CHECK_THROWS_AS(echo_time_s(0.0), std::domain_error);
}

TEST_CASE("depth inference") {
  SUBCASE("round trip through the forward model") {
    const double d = 2.0, d0 = 0.4, F = 1.9;
    const double ratio = (d / F) * (d / F) * std::exp(-7.0 / (F * F));
    const double transmission = std::exp(-d / F - d0);
    const InferredDepths out = infer_depths(ratio, transmission, F);
    CHECK(out.d == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(out.d0 == doctest::Approx(0.4).epsilon(1e-10));
  }
  SUBCASE("zero ratio means no teeth") {
    CHECK(infer_depths(0.0, 0.5, 1.9).d == 0.0);
  }
  SUBCASE("round trips on random valid inputs, 1e-9") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> dd(0.01, 5.0), dd0(0.0, 2.0), df(1.2, 6.0);
    for (int i = 0; i < 1000; ++i) {
      const double d = dd(rng), d0 = dd0(rng), F = df(rng);
      const double ratio = (d / F) * (d / F) * std::exp(-7.0 / (F * F));
      const double transmission = std::exp(-d / F - d0);
      const InferredDepths out = infer_depths(ratio, transmission, F);
      CHECK(std::abs(out.d - d) < 1e-9);
      CHECK(std::abs(out.d0 - d0) < 1e-9);
    }
  }
  SUBCASE("inconsistent observables carry the raw solution") {
    // high transmission with a strong echo cannot come from d0 >= 0
    try {
      infer_depths(0.3, 0.99, 1.9);
      FAIL("expected DepthInferenceError");
    } catch (const DepthInferenceError& e) {
      CHECK(e.raw().d0 < 0.0);
      CHECK(e.raw().d > 0.0);
    }
  }
}

TEST_CASE("optimal depth") {
  CHECK(optimal_depth(1.0) == doctest::Approx(2.0));
  CHECK(optimal_depth(1.9) == doctest::Approx(3.8));

  SUBCASE("brute-force scan confirms the stationary point") {
    const double F = 1.9;
    double best_d = 0.0, best = -1.0;
    for (double d = 0.01; d <= 20.0; d += 0.01) {
      const double eta = analytic_efficiency({d, 0.0, F, 100e6}).eta;
      if (eta > best) {
        best = eta;
        best_d = d;
      }
    }
    CHECK(best_d == doctest::Approx(3.8).epsilon(0.01));
  }

  SUBCASE("eta decreases with background") {
    for (double d0 : {0.0, 0.3, 0.9, 2.0}) {
      const double lo = analytic_efficiency({1.0, d0, 2.0, 1e8}).eta;
      const double hi = analytic_efficiency({1.0, d0 + 0.1, 2.0, 1e8}).eta;
      CHECK(hi < lo);
    }
  }
}

TEST_CASE("analytic efficiency tracks the full propagation within 20%") {
  // idealized Gaussian combs, one transition, dispersive kernel
  const double delta = 100e6;
  const TraceSpec trace{0.0, 10e-12, 8001};
  const double t0 = 8e-9;
  const PulseEnvelope in = make_pulse_train({t0}, 2e-9, {1.0}, trace).envelope;
  const double tau = 1.0 / delta;

  for (double finesse : {1.5, 2.5, 4.0}) {
    for (double d : {0.5, 2.0}) {
      CombShape shape;
      shape.spacing_hz = delta;
      shape.teeth = 15;
      shape.first_tooth_hz = -7.0 * delta;
      shape.tooth_fwhm_hz = delta / finesse;
      shape.tooth_depth = d;
      shape.background = 0.0;
      const ComplexSpectrum s =
          make_comb_spectrum(shape, make_centered_grid(0.0, 1.5e9, 32768));

      const PulseEnvelope out = propagate(in, s);
      const EchoReport r = echo_efficiency(out, in, t0 + tau, 4e-9);
      const double eta_th = analytic_efficiency({d, 0.0, finesse, delta}).eta;
      CHECK(r.efficiency / eta_th == doctest::Approx(1.0).epsilon(0.20));
    }
  }
}
