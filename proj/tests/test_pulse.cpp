#include <cmath>

#include "afcsim/pulse.hpp"
#include "doctest.h"

using namespace afcsim;

namespace {
const TraceSpec kTrace{0.0, 10e-12, 8001};  // 80 ns
}

TEST_CASE("single pulse has unit energy") {
  const PulseTrain train = make_pulse_train({10e-9}, 2e-9, {1.0}, kTrace);
  CHECK(train.envelope.energy() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(train.overlap_warning);

  // peak at the programmed time
  double peak = 0.0, t_peak = 0.0;
  for (int i = 0; i < train.envelope.size(); ++i) {
    if (std::norm(train.envelope.samples[i]) > peak) {
      peak = std::norm(train.envelope.samples[i]);
      t_peak = train.envelope.time(i);
    }
  }
  CHECK(t_peak == doctest::Approx(10e-9).epsilon(1e-6));

  // intensity FWHM equals the requested width
  int above = 0;
  for (const auto& s : train.envelope.samples)
    if (std::norm(s) >= 0.5 * peak) ++above;
  CHECK(above * kTrace.dt_s == doctest::Approx(2e-9).epsilon(2e-2));
}

TEST_CASE("zero-amplitude mode reduces to the single pulse") {
  const PulseTrain one = make_pulse_train({10e-9}, 2e-9, {1.0}, kTrace);
  const PulseTrain two = make_pulse_train({10e-9, 16e-9}, 2e-9, {1.0, 0.0}, kTrace);
  REQUIRE(one.envelope.size() == two.envelope.size());
  for (int i = 0; i < one.envelope.size(); ++i)
    CHECK(std::abs(one.envelope.samples[i] - two.envelope.samples[i]) < 1e-15);
}

TEST_CASE("two-mode train: separation preserved, unit energy per mode") {
  const PulseTrain train = make_pulse_train({10e-9, 16e-9}, 2e-9, {1.0, 1.0}, kTrace);
  // total energy is 2 plus the (small) coherent cross term of the overlap
  CHECK(train.envelope.energy() ==
        doctest::Approx(2.0 + 2.0 * train.max_overlap).epsilon(1e-6));
  CHECK_FALSE(train.overlap_warning);  // 6 ns apart at 2 ns width
  CHECK(train.max_overlap < 0.01);
}

TEST_CASE("overlap warning beyond 50%") {
  const PulseTrain train = make_pulse_train({10e-9, 11.5e-9}, 2e-9, {1.0, 1.0}, kTrace);
  CHECK(train.overlap_warning);
  CHECK(train.max_overlap > 0.5);
}

TEST_CASE("pulse times must sit inside the trace") {
  CHECK_THROWS_AS(make_pulse_train({90e-9}, 2e-9, {1.0}, kTrace), std::domain_error);
  CHECK_THROWS_AS(make_pulse_train({10e-9}, -1e-9, {1.0}, kTrace), std::domain_error);
  CHECK_THROWS_AS(make_pulse_train({10e-9}, 2e-9, {1.0, 0.5}, kTrace), std::domain_error);
}
