#ifndef AFCSIM_CONFIG_HPP
#define AFCSIM_CONFIG_HPP

#include <string>
#include <vector>

#include "afcsim/errors.hpp"

namespace afcsim {

/// Flat sectioned key-value configuration:
///
///   # comment
///   [section]
///   key = value
///
/// Keys carry their units in their names (_hz, _s, _k, _mps). Parsing and
/// every typed accessor raise ConfigError with file:line context. Accessors
/// mark keys as consumed so unknown keys can be rejected wholesale after a
/// schema walk.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& name);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int_or(const std::string& section, const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key) const;
  std::vector<double> get_double_list_or(const std::string& section, const std::string& key,
                                         const std::vector<double>& fallback) const;

  /// Inserts or replaces a value (used by sweeps and tests).
  void set(const std::string& section, const std::string& key, const std::string& value);
  void remove(const std::string& section, const std::string& key);

  /// Throws ConfigError listing every never-consumed key with its line.
  void require_all_consumed() const;

  /// Normalized "[section] / key = value" dump; hashing this defines the
  /// scenario hash.
  std::string canonical_text() const;

  const std::string& source_name() const { return name_; }

  /// section.key = value pairs in file order, for echoing into run summaries.
  std::vector<std::pair<std::string, std::string>> flattened() const;

 private:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
    mutable bool consumed = false;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
  };

  const Entry* find(const std::string& section, const std::string& key) const;
  const Entry& require(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(int line, const std::string& msg) const;

  std::string name_ = "<none>";
  std::vector<Section> sections_;
};

}  // namespace afcsim

#endif
