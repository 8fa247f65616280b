#ifndef AFCSIM_VELOCITY_DISTRIBUTION_HPP
#define AFCSIM_VELOCITY_DISTRIBUTION_HPP

#include <string>
#include <vector>

#include "afcsim/atomic_model.hpp"

namespace afcsim {

struct VelocityGridSpec {
  double v_min_mps = -1200.0;
  double v_max_mps = 1200.0;
  int bins = 16384;
};

/// Ground-state populations, F=3 and F=4, as densities per velocity on a
/// uniform grid. Values are immutable after construction; pump operations
/// return new distributions.
struct VelocityDistribution {
  double v_min_mps = 0.0;
  double dv_mps = 0.0;
  std::vector<double> pop_f3;
  std::vector<double> pop_f4;
  double total_population = 0.0;

  int bins() const { return static_cast<int>(pop_f3.size()); }
  double velocity(int i) const { return v_min_mps + i * dv_mps; }
  double v_max() const { return velocity(bins() - 1); }

  /// Trapezoid-free bin sum: sum (f3+f4) dv. Tracked against
  /// total_population by the conservation invariants.
  double sum_population() const;
};

/// Maxwell-Boltzmann velocity density at the species temperature, total
/// population 1, split 7/16 : 9/16 between F=3 and F=4 by ground-state
/// degeneracy. Throws std::domain_error if the grid clips more than 1e-4
/// of the thermal norm.
VelocityDistribution thermal_populations(const AtomSpecies& species, const VelocityGridSpec& grid);

/// Most probable speed sqrt(2kT/m).
double most_probable_speed_mps(const AtomSpecies& species);

/// Three-column text serialization: velocity_mps pop_f3 pop_f4.
std::string serialize_distribution(const VelocityDistribution& dist,
                                   const std::vector<std::string>& header_comments = {});
void save_distribution(const VelocityDistribution& dist, const std::string& path,
                       const std::vector<std::string>& header_comments = {});
VelocityDistribution load_distribution(const std::string& path);

}  // namespace afcsim

#endif
