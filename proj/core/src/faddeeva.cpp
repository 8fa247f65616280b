#include "afcsim/faddeeva.hpp"

#include <array>
#include <cmath>

namespace afcsim {

namespace {

constexpr int kN = 64;          // rational series length
constexpr double kCfRadius2 = 49.0;  // |z|^2 above which the continued fraction takes over
const double kInvSqrtPi = 0.5641895835477562869;

// Fourier coefficients of Weideman's auxiliary function, computed once.
// a_n = (1/4N) sum_j F(theta_j) cos(n theta_j), F(theta) = exp(-t^2)(L^2+t^2),
// t = L tan(theta/2), theta_j = j pi / (2N) over a full period.
struct WeidemanTable {
  double L = 0.0;
  std::array<double, kN> a{};

  WeidemanTable() {
    const long double Lv = std::sqrt(static_cast<long double>(kN) / std::sqrt(2.0L));
    const int m = 2 * kN;
    const int m2 = 4 * kN;
    std::array<long double, 4 * kN> f{};
    for (int j = 0; j < m2; ++j) {
      if (j == m) {
        f[j] = 0.0L;  // theta = pi, t -> infinity
        continue;
      }
      const long double theta = static_cast<long double>(j) * static_cast<long double>(M_PIl) / m;
      const long double t = Lv * std::tan(theta / 2.0L);
      f[j] = std::exp(-t * t) * (Lv * Lv + t * t);
    }
    for (int n = 1; n <= kN; ++n) {
      long double acc = 0.0L;
      for (int j = 0; j < m2; ++j) {
        const long double theta = static_cast<long double>(j) * static_cast<long double>(M_PIl) / m;
        acc += f[j] * std::cos(n * theta);
      }
      a[n - 1] = static_cast<double>(acc / m2);
    }
    L = static_cast<double>(Lv);
  }
};

const WeidemanTable& table() {
  static const WeidemanTable t;
  return t;
}

std::complex<double> weideman_w(std::complex<double> z) {
  const auto& tb = table();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> den = tb.L - iz;
  const std::complex<double> Z = (tb.L + iz) / den;
  // p(Z) = sum_m a_m Z^(m-1), Horner from the top power down
  std::complex<double> p = tb.a[kN - 1];
  for (int m = kN - 1; m >= 1; --m) p = p * Z + tb.a[m - 1];
  return 2.0 * p / (den * den) + kInvSqrtPi / den;
}

std::complex<double> continued_fraction_w(std::complex<double> z) {
  // w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))
  const int depth = (std::norm(z) > 900.0) ? 12 : 28;
  std::complex<double> r(0.0, 0.0);
  for (int k = depth; k >= 1; --k) r = (0.5 * k) / (z - r);
  const std::complex<double> d = z - r;
  // i/sqrt(pi) / d
  return std::complex<double>(0.0, kInvSqrtPi) / d;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (std::norm(z) >= kCfRadius2) return continued_fraction_w(z);
  return weideman_w(z);
}

}  // namespace afcsim
