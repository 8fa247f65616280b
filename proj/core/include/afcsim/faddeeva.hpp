#ifndef AFCSIM_FADDEEVA_HPP
#define AFCSIM_FADDEEVA_HPP

#include <complex>

namespace afcsim {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0.
///
/// Rational-series approximation (Weideman, SIAM Rev. 36, 1994) for small
/// |z|, Laplace continued fraction for large |z|. Relative accuracy is at
/// the 1e-12 level over the closed upper half plane, including the real
/// axis, which the spectral-path cross checks rely on.
std::complex<double> faddeeva_w(std::complex<double> z);

}  // namespace afcsim

#endif
