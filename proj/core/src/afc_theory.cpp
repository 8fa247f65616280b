#include "afcsim/afc_theory.hpp"

#include <cmath>

namespace afcsim {

EfficiencyBreakdown analytic_efficiency(const TheoryInputs& in) {
  if (in.d < 0.0 || in.d0 < 0.0) throw std::domain_error("depths must be >= 0");
  if (in.finesse <= 0.0) throw std::domain_error("finesse must be > 0");
  const double x = in.d / in.finesse;
  EfficiencyBreakdown b;
  b.coupling = x * x;
  b.reabsorption = std::exp(-x);
  b.dephasing = std::exp(-7.0 / (in.finesse * in.finesse));
  b.background = std::exp(-in.d0);
  b.eta = b.coupling * b.reabsorption * b.dephasing * b.background;
  return b;
}

double echo_time_s(double delta_hz) {
  if (delta_hz <= 0.0) throw std::domain_error("tooth spacing must be > 0");
  return 1.0 / delta_hz;
}

InferredDepths infer_depths(double echo_to_transmit_ratio, double absolute_transmission,
                            double finesse) {
  if (echo_to_transmit_ratio < 0.0) throw std::domain_error("ratio must be >= 0");
  if (absolute_transmission <= 0.0 || absolute_transmission > 1.0)
    throw std::domain_error("transmission must be in (0, 1]");
  if (finesse <= 0.0) throw std::domain_error("finesse must be > 0");

  InferredDepths out;
  out.d = finesse * std::sqrt(echo_to_transmit_ratio * std::exp(7.0 / (finesse * finesse)));
  out.d0 = -std::log(absolute_transmission) - out.d / finesse;
  if (out.d0 < 0.0)
    throw DepthInferenceError("inconsistent observables: inferred d0 < 0", out);
  return out;
}

double optimal_depth(double finesse) {
  if (finesse <= 0.0) throw std::domain_error("finesse must be > 0");
  return 2.0 * finesse;
}

}  // namespace afcsim
