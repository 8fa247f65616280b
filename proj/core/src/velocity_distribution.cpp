#include "afcsim/velocity_distribution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "afcsim/constants.hpp"
#include "afcsim/errors.hpp"
#include "afcsim/io_util.hpp"

namespace afcsim {

double VelocityDistribution::sum_population() const {
  double acc = 0.0;
  for (int i = 0; i < bins(); ++i) acc += pop_f3[i] + pop_f4[i];
  return acc * dv_mps;
}

double most_probable_speed_mps(const AtomSpecies& species) {
  return std::sqrt(2.0 * k_boltzmann * species.temperature_k / species.mass_kg);
}

VelocityDistribution thermal_populations(const AtomSpecies& species, const VelocityGridSpec& grid) {
  if (species.temperature_k <= 0.0) throw std::domain_error("non-positive temperature");
  if (grid.bins < 2) throw std::domain_error("velocity grid needs at least 2 bins");
  if (!(grid.v_max_mps > grid.v_min_mps)) throw std::domain_error("empty velocity grid");

  const double vp = most_probable_speed_mps(species);

  // norm lost outside the grid, evaluated analytically
  const double lost =
      0.5 * (std::erfc(grid.v_max_mps / vp) + std::erfc(-grid.v_min_mps / vp));
  if (lost > 1e-4)
    throw std::domain_error("velocity grid too narrow: clips " + format_double(lost) +
                            " of the thermal norm");

  VelocityDistribution dist;
  dist.v_min_mps = grid.v_min_mps;
  dist.dv_mps = (grid.v_max_mps - grid.v_min_mps) / (grid.bins - 1);
  dist.pop_f3.resize(grid.bins);
  dist.pop_f4.resize(grid.bins);
  dist.total_population = 1.0;

  const double norm = 1.0 / (vp * std::sqrt(pi));
  constexpr double f3_fraction = 7.0 / 16.0;  // 2F+1 degeneracies, F=3,4
  constexpr double f4_fraction = 9.0 / 16.0;
  for (int i = 0; i < grid.bins; ++i) {
    const double v = dist.velocity(i);
    const double n = norm * std::exp(-(v * v) / (vp * vp));
    dist.pop_f3[i] = f3_fraction * n;
    dist.pop_f4[i] = f4_fraction * n;
  }
  // pin the bookkeeping to the discrete norm so conservation checks are exact
  dist.total_population = dist.sum_population();
  return dist;
}

std::string serialize_distribution(const VelocityDistribution& dist,
                                   const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "# columns: velocity_mps pop_f3 pop_f4\n";
  out << "# total_population: " << format_double(dist.total_population) << "\n";
  for (int i = 0; i < dist.bins(); ++i) {
    out << format_double(dist.velocity(i)) << ' ' << format_double(dist.pop_f3[i]) << ' '
        << format_double(dist.pop_f4[i]) << '\n';
  }
  return out.str();
}

void save_distribution(const VelocityDistribution& dist, const std::string& path,
                       const std::vector<std::string>& header_comments) {
  atomic_write_file(path, serialize_distribution(dist, header_comments));
}

VelocityDistribution load_distribution(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<double> v, f3, f4;
  double total = -1.0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream c(line.substr(first + 1));
      std::string key;
      if (c >> key && key == "total_population:") c >> total;
      continue;
    }
    std::istringstream r(line);
    double a, b, cval;
    if (!(r >> a >> b >> cval))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": want 3 columns");
    v.push_back(a);
    f3.push_back(b);
    f4.push_back(cval);
  }
  if (v.size() < 2) throw ConfigError(path + ": fewer than 2 samples");
  VelocityDistribution dist;
  dist.v_min_mps = v.front();
  dist.dv_mps = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
  dist.pop_f3 = std::move(f3);
  dist.pop_f4 = std::move(f4);
  dist.total_population = total >= 0.0 ? total : dist.sum_population();
  return dist;
}

}  // namespace afcsim
