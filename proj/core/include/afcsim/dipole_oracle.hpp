#ifndef AFCSIM_DIPOLE_ORACLE_HPP
#define AFCSIM_DIPOLE_ORACLE_HPP

#include <limits>
#include <vector>

#include "afcsim/spectral.hpp"

namespace afcsim {

/// Discrete-atom view of an absorption spectrum: detunings (relative to a
/// reference frequency) with normalized absorption-amplitude weights.
struct AtomEnsembleSample {
  std::vector<double> detunings_hz;
  std::vector<double> weights;  // sum to 1
};

/// Discretizes Re D onto at most n_atoms detunings taken from the spectrum
/// grid, weights proportional to the Re D samples. Detunings are measured
/// from reference_hz (defaults to the grid centre when NaN). Throws
/// std::domain_error on an all-zero spectrum.
AtomEnsembleSample sample_ensemble(const ComplexSpectrum& spectrum, int n_atoms,
                                   double reference_hz = std::numeric_limits<double>::quiet_NaN());

/// Free-dipole interference oracle: intensity(t) = |sum_j w_j e^{i 2 pi
/// delta_j t}|^2, normalized to 1 at t = 0 through the weight normalization.
/// t1_decay_s > 0 multiplies the summed field by exp(-t/(2 T1)).
std::vector<double> dipole_sum_echo(const AtomEnsembleSample& sample,
                                    const std::vector<double>& times_s, double t1_decay_s = 0.0);

}  // namespace afcsim

#endif
