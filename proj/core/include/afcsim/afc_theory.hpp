#ifndef AFCSIM_AFC_THEORY_HPP
#define AFCSIM_AFC_THEORY_HPP

#include <stdexcept>

namespace afcsim {

struct TheoryInputs {
  double d = 0.0;        // peak tooth depth above background
  double d0 = 0.0;       // flat background depth
  double finesse = 0.0;  // delta / gamma
  double delta_hz = 0.0;
};

/// Forward-retrieval efficiency of a Gaussian-tooth comb, factored into its
/// physical pieces:
///   eta = (d/F)^2 exp(-d/F) exp(-7/F^2) exp(-d0)
struct EfficiencyBreakdown {
  double coupling = 0.0;      // (d/F)^2
  double reabsorption = 0.0;  // exp(-d/F)
  double dephasing = 0.0;     // exp(-7/F^2)
  double background = 0.0;    // exp(-d0)
  double eta = 0.0;
};

EfficiencyBreakdown analytic_efficiency(const TheoryInputs& in);

/// Rephasing delay of a comb with tooth spacing delta (ordinary frequency):
/// tau = 1/delta.
double echo_time_s(double delta_hz);

/// Inversion of the efficiency model from observables. The echo/transmit
/// ratio is insensitive to d0:
///   ratio = (d/F)^2 exp(-7/F^2)        ->  d
///   transmission = exp(-d/F - d0)      ->  d0
/// (the transmitted pulse spans many teeth and sees the mean comb
/// absorption d/F plus the background).
struct InferredDepths {
  double d = 0.0;
  double d0 = 0.0;
};

/// Inconsistent observables: the raw algebraic solution gave d0 < 0. The
/// solution is attached.
class DepthInferenceError : public std::runtime_error {
 public:
  DepthInferenceError(const std::string& msg, InferredDepths raw)
      : std::runtime_error(msg), raw_(raw) {}
  const InferredDepths& raw() const { return raw_; }

 private:
  InferredDepths raw_;
};

InferredDepths infer_depths(double echo_to_transmit_ratio, double absolute_transmission,
                            double finesse);

/// Tooth depth maximizing (d/F)^2 exp(-d/F): d* = 2F.
double optimal_depth(double finesse);

}  // namespace afcsim

#endif
