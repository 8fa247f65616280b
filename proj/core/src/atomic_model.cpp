#include "afcsim/atomic_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "afcsim/constants.hpp"
#include "afcsim/errors.hpp"
#include "afcsim/io_util.hpp"

namespace afcsim {

AtomSpecies caesium(double temperature_k) {
  return AtomSpecies{
      .mass_kg = 132.905451931 * atomic_mass_unit,
      .temperature_k = temperature_k,
      .d1_wavelength_m = 894.59295986e-9,
      .d2_wavelength_m = 852.34727582e-9,
  };
}

std::string to_string(const LineLabel& label) {
  return std::to_string(label.ground_f) + "-" + std::to_string(label.excited_f);
}

LineLabel parse_line_label(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) throw ConfigError("bad line label (want \"F-F'\"): " + text);
  try {
    return LineLabel{std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
  } catch (const std::exception&) {
    throw ConfigError("bad line label: " + text);
  }
}

const TransitionLine* LineTable::find(const LineLabel& label) const {
  for (const auto& line : lines)
    if (line.label == label) return &line;
  return nullptr;
}

const TransitionLine& LineTable::at(const LineLabel& label) const {
  const TransitionLine* line = find(label);
  if (!line) throw std::domain_error("no transition " + to_string(label) + " in line table");
  return *line;
}

namespace {

struct Directives {
  std::string manifold;
  double natural_linewidth_hz = 0.0;
  std::string checksum;
  bool has_version = false;
};

std::string canonical_record(const std::string& line) {
  std::istringstream in(line);
  std::string field, out;
  while (in >> field) {
    if (!out.empty()) out += ' ';
    out += field;
  }
  return out;
}

}  // namespace

LineTable load_line_table(const std::string& path, const AtomSpecies& species) {
  const std::string text = read_file(path);

  Directives dir;
  std::vector<std::array<std::string, 4>> records;
  std::string canonical;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      // header directives look like "# key: value"; citation text is ignored
      std::istringstream c(line.substr(first + 1));
      std::string key, value;
      if (c >> key && key.size() > 1 && key.back() == ':' && (c >> value)) {
        key.pop_back();
        if (key == "manifold") dir.manifold = value;
        else if (key == "natural_linewidth_hz") dir.natural_linewidth_hz = std::stod(value);
        else if (key == "checksum") dir.checksum = value;
        else if (key == "version") dir.has_version = true;
      }
      continue;
    }
    std::istringstream r(line);
    std::array<std::string, 4> fields;
    if (!(r >> fields[0] >> fields[1] >> fields[2] >> fields[3]))
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": want 4 fields `ground_F excited_F offset_hz rel_strength`");
    std::string extra;
    if (r >> extra)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": trailing field: " + extra);
    records.push_back(fields);
    if (!canonical.empty()) canonical += '\n';
    canonical += canonical_record(line);
  }

  if (records.empty()) throw ConfigError(path + ": no transition records");
  if (dir.checksum.empty()) throw ConfigError(path + ": missing `# checksum:` directive");
  const std::string actual = hash_hex(fnv1a64(canonical));
  if (actual != dir.checksum)
    throw ConfigError(path + ": checksum mismatch (file says " + dir.checksum + ", records hash to " +
                      actual + ")");
  if (dir.natural_linewidth_hz <= 0.0)
    throw ConfigError(path + ": missing or non-positive `# natural_linewidth_hz:` directive");
  if (dir.manifold != "d1" && dir.manifold != "d2")
    throw ConfigError(path + ": `# manifold:` directive must be d1 or d2");

  const double wavelength =
      dir.manifold == "d1" ? species.d1_wavelength_m : species.d2_wavelength_m;

  LineTable table;
  table.species = species;
  int zero_offsets = 0;
  for (const auto& rec : records) {
    TransitionLine t;
    try {
      t.label = LineLabel{std::stoi(rec[0]), std::stoi(rec[1])};
      t.offset_hz = std::stod(rec[2]);
      t.strength = std::stod(rec[3]);
    } catch (const std::exception&) {
      throw ConfigError(path + ": malformed record: " + rec[0] + " " + rec[1] + " " + rec[2] + " " +
                        rec[3]);
    }
    t.natural_linewidth_hz = dir.natural_linewidth_hz;
    t.wavelength_m = wavelength;
    if (t.strength < 0.0) throw ConfigError(path + ": negative strength for " + to_string(t.label));
    if (table.find(t.label)) throw ConfigError(path + ": duplicate label " + to_string(t.label));
    if (t.offset_hz == 0.0) {
      ++zero_offsets;
      table.reference_label = t.label;
    }
    table.lines.push_back(t);
  }
  if (zero_offsets != 1)
    throw ConfigError(path + ": want exactly one reference line at offset 0, got " +
                      std::to_string(zero_offsets));
  std::sort(table.lines.begin(), table.lines.end(),
            [](const TransitionLine& a, const TransitionLine& b) { return a.offset_hz < b.offset_hz; });
  return table;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("AFCSIM_DATA_DIR"); env && *env) return env;
#ifdef AFCSIM_SOURCE_DATA_DIR
  if (std::filesystem::exists(AFCSIM_SOURCE_DATA_DIR)) return AFCSIM_SOURCE_DATA_DIR;
#endif
  return "data";
}

LineTable d2_line_table(const AtomSpecies& species) {
  return d2_line_table(species, default_data_dir() + "/cs_d2_lines.dat");
}

LineTable d2_line_table(const AtomSpecies& species, const std::string& path) {
  LineTable table = load_line_table(path, species);
  if (!(table.reference_label == LineLabel{4, 5}))
    throw ConfigError(path + ": D2 table must reference F=4 -> F'=5 at offset 0");
  return table;
}

LineTable d1_line_table(const AtomSpecies& species) {
  return d1_line_table(species, default_data_dir() + "/cs_d1_lines.dat");
}

LineTable d1_line_table(const AtomSpecies& species, const std::string& path) {
  LineTable table = load_line_table(path, species);
  if (!(table.reference_label == LineLabel{3, 4}))
    throw ConfigError(path + ": D1 table must reference F=3 -> F'=4 at offset 0");
  return table;
}

double doppler_fwhm_hz(const AtomSpecies& species, const TransitionLine& line) {
  if (species.temperature_k <= 0.0) throw std::domain_error("non-positive temperature");
  return std::sqrt(8.0 * std::log(2.0) * k_boltzmann * species.temperature_k / species.mass_kg) /
         line.wavelength_m;
}

double detuning_to_velocity(const TransitionLine& line, double detuning_hz, BeamSign sign) {
  const double v = detuning_hz * line.wavelength_m;
  return sign == BeamSign::co_propagating ? v : -v;
}

double velocity_to_detuning(const TransitionLine& line, double velocity_mps, BeamSign sign) {
  const double d = velocity_mps / line.wavelength_m;
  return sign == BeamSign::co_propagating ? d : -d;
}

}  // namespace afcsim
