#ifndef AFCSIM_ATOMIC_MODEL_HPP
#define AFCSIM_ATOMIC_MODEL_HPP

#include <string>
#include <vector>

namespace afcsim {

struct AtomSpecies {
  double mass_kg;
  double temperature_k;
  double d1_wavelength_m;
  double d2_wavelength_m;
};

/// Caesium-133 at the given cell temperature. Wavelengths are the vacuum
/// D1/D2 line centres.
AtomSpecies caesium(double temperature_k = 294.0);

/// Hyperfine transition label, e.g. {4, 5} for F=4 -> F'=5.
struct LineLabel {
  int ground_f = 0;
  int excited_f = 0;
  bool operator==(const LineLabel&) const = default;
};

std::string to_string(const LineLabel& label);
LineLabel parse_line_label(const std::string& text);  // "4-5"

struct TransitionLine {
  LineLabel label;
  double offset_hz;              // relative to the table's reference line at rest
  double strength;               // relative hyperfine transition strength, >= 0
  double natural_linewidth_hz;   // Lorentzian FWHM (ordinary frequency)
  double wavelength_m;
};

struct LineTable {
  AtomSpecies species;
  std::vector<TransitionLine> lines;  // ordered by offset, one line at offset 0
  LineLabel reference_label;

  const TransitionLine* find(const LineLabel& label) const;
  const TransitionLine& at(const LineLabel& label) const;
};

/// Parses a bundled transition data file: whitespace-separated records
/// `ground_F excited_F offset_hz rel_strength`, `#` comments. Header
/// directives (`# key: value`) carry the manifold linewidth and an FNV-1a
/// checksum of the records, which is verified on load.
LineTable load_line_table(const std::string& path, const AtomSpecies& species);

/// The D2 probe manifold, F=4 -> F'=3,4,5, with F'=5 at offset 0.
LineTable d2_line_table(const AtomSpecies& species);
LineTable d2_line_table(const AtomSpecies& species, const std::string& path);

/// The D1 pump manifold, F=3 -> F'=3,4, with F'=4 (the addressed line) at 0.
LineTable d1_line_table(const AtomSpecies& species);
LineTable d1_line_table(const AtomSpecies& species, const std::string& path);

/// Directory holding the bundled line data. Resolution order: AFCSIM_DATA_DIR
/// environment variable, then the source-tree data directory baked in at
/// configure time.
std::string default_data_dir();

/// FWHM of the thermal Doppler profile of a single line,
/// sqrt(8 ln2 kT/m) / lambda.
double doppler_fwhm_hz(const AtomSpecies& species, const TransitionLine& line);

enum class BeamSign {
  co_propagating,      // resonant velocity moves with increasing detuning
  counter_propagating  // mirrored
};

/// Velocity class resonant with a beam detuned by `detuning_hz` from the
/// line: v = +/- detuning * wavelength.
double detuning_to_velocity(const TransitionLine& line, double detuning_hz,
                            BeamSign sign = BeamSign::co_propagating);
/// Inverse map; composing the two is the identity.
double velocity_to_detuning(const TransitionLine& line, double velocity_mps,
                            BeamSign sign = BeamSign::co_propagating);

}  // namespace afcsim

#endif
