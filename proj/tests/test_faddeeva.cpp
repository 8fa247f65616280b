#include <cmath>
#include <complex>

#include "afcsim/faddeeva.hpp"
#include "doctest.h"

using afcsim::faddeeva_w;
using cplx = std::complex<double>;

namespace {

// Independent oracle for Im(z) >= 0.5: midpoint quadrature of the defining
// integral w(z) = (i/pi) integral e^{-t^2} / (z - t) dt. The integrand is
// analytic within |Im t| < Im z, so the rule converges geometrically.
cplx w_quadrature(cplx z) {
  const double h = 0.05;
  const double tmax = 30.0;
  std::complex<long double> acc(0.0L, 0.0L);
  const std::complex<long double> zl(z.real(), z.imag());
  for (double t = -tmax + 0.5 * h; t < tmax; t += h) {
    const long double tl = t;
    acc += std::exp(-tl * tl) / (zl - tl);
  }
  acc *= std::complex<long double>(0.0L, 1.0L) * static_cast<long double>(h / M_PI);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Taylor series w(z) = sum (iz)^n / Gamma(n/2 + 1), usable for |z| <= 2.
cplx w_taylor(cplx z) {
  std::complex<long double> iz(-z.imag(), z.real());
  std::complex<long double> term(1.0L, 0.0L);
  std::complex<long double> acc(0.0L, 0.0L);
  std::complex<long double> power(1.0L, 0.0L);
  for (int n = 0; n <= 80; ++n) {
    acc += power / std::tgammal(0.5L * n + 1.0L);
    power *= iz;
  }
  (void)term;
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("faddeeva matches the defining integral off the real axis") {
  const double xs[] = {0.0, 0.3, 1.0, 2.5, 5.0, 6.9, 7.1, 12.0, 40.0, -3.2, -8.5};
  const double ys[] = {0.5, 1.0, 3.0, 7.5, 20.0};
  for (double x : xs) {
    for (double y : ys) {
      const cplx z(x, y);
      const cplx want = w_quadrature(z);
      CHECK(rel_err(faddeeva_w(z), want) < 1e-11);
    }
  }
}

TEST_CASE("faddeeva matches the Taylor series near the origin") {
  const double pts[][2] = {{0.0, 0.0}, {0.5, 0.0},  {1.5, 0.0}, {0.0, 0.2},
                           {1.0, 1.0}, {-1.2, 0.4}, {1.9, 0.1}, {0.05, 0.003}};
  for (const auto& p : pts) {
    const cplx z(p[0], p[1]);
    CHECK(rel_err(faddeeva_w(z), w_taylor(z)) < 1e-12);
  }
}

TEST_CASE("real axis: Re w(x) = exp(-x^2)") {
  for (double x : {0.0, 0.5, 1.0, 2.0, 3.5, 5.0}) {
    const cplx w = faddeeva_w({x, 0.0});
    CHECK(w.real() == doctest::Approx(std::exp(-x * x)).epsilon(1e-11));
  }
}

TEST_CASE("real axis, large |x|: asymptotic dispersion tail") {
  for (double x : {8.0, 15.0, 60.0}) {
    const double x2 = x * x;
    const double want =
        (1.0 + 0.5 / x2 + 0.75 / (x2 * x2) + 1.875 / (x2 * x2 * x2)) / (std::sqrt(M_PI) * x);
    const cplx w = faddeeva_w({x, 0.0});
    CHECK(w.imag() == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("imaginary axis: w(iy) = erfcx(y)") {
  for (double y : {0.0, 0.1, 0.7, 2.0, 4.5}) {
    const double want = std::exp(y * y) * std::erfc(y);
    const cplx w = faddeeva_w({0.0, y});
    CHECK(w.real() == doctest::Approx(want).epsilon(1e-11));
    CHECK(std::abs(w.imag()) < 1e-13);
  }
}

TEST_CASE("reflection symmetry w(-conj z) = conj w(z)") {
  const double pts[][2] = {{0.7, 0.2}, {3.0, 1.0}, {10.0, 0.01}, {1.0, 6.0}};
  for (const auto& p : pts) {
    const cplx z(p[0], p[1]);
    const cplx a = faddeeva_w({-z.real(), z.imag()});
    const cplx b = std::conj(faddeeva_w(z));
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
  }
}
