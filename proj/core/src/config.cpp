#include "afcsim/config.hpp"

#include <sstream>

#include "afcsim/io_util.hpp"

namespace afcsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void Config::fail(int line, const std::string& msg) const {
  throw ConfigError(name_ + ":" + std::to_string(line) + ": " + msg);
}

Config Config::parse_file(const std::string& path) {
  return parse_string(read_file(path), path);
}

Config Config::parse_string(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  Section* current = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') cfg.fail(lineno, "unterminated section header: " + line);
      const std::string sec = trim(line.substr(1, line.size() - 2));
      if (sec.empty()) cfg.fail(lineno, "empty section name");
      for (const auto& s : cfg.sections_)
        if (s.name == sec) cfg.fail(lineno, "duplicate section [" + sec + "]");
      cfg.sections_.push_back({sec, lineno, {}});
      current = &cfg.sections_.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      cfg.fail(lineno, "expected `key = value` or `[section]`, got: " + line);
    if (!current) cfg.fail(lineno, "key before any [section]");
    Entry e;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty()) cfg.fail(lineno, "empty key");
    if (e.value.empty()) cfg.fail(lineno, "empty value for key " + e.key);
    for (const auto& other : current->entries)
      if (other.key == e.key)
        cfg.fail(lineno, "duplicate key " + e.key + " (first at line " +
                             std::to_string(other.line) + ")");
    current->entries.push_back(std::move(e));
  }
  return cfg;
}

bool Config::has_section(const std::string& section) const {
  for (const auto& s : sections_)
    if (s.name == section) return true;
  return false;
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
  for (const auto& s : sections_) {
    if (s.name != section) continue;
    for (const auto& e : s.entries)
      if (e.key == key) {
        e.consumed = true;
        return &e;
      }
  }
  return nullptr;
}

const Config::Entry& Config::require(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw ConfigError(name_ + ": missing required key [" + section + "] " + key);
  return *e;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  return require(section, key).value;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const Entry& e = require(section, key);
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(e.line, "key " + key + ": not a number: " + e.value);
  }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return find(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key) const {
  const Entry& e = require(section, key);
  try {
    std::size_t used = 0;
    const int v = std::stoi(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(e.line, "key " + key + ": not an integer: " + e.value);
  }
}

int Config::get_int_or(const std::string& section, const std::string& key, int fallback) const {
  return find(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
  const Entry& e = require(section, key);
  std::vector<double> out;
  std::string item;
  std::istringstream in(e.value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(e.line, "key " + key + ": empty list element");
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      fail(e.line, "key " + key + ": not a number: " + item);
    }
  }
  if (out.empty()) fail(e.line, "key " + key + ": empty list");
  return out;
}

std::vector<double> Config::get_double_list_or(const std::string& section, const std::string& key,
                                               const std::vector<double>& fallback) const {
  return find(section, key) ? get_double_list(section, key) : fallback;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  for (auto& s : sections_) {
    if (s.name != section) continue;
    for (auto& e : s.entries) {
      if (e.key == key) {
        e.value = value;
        return;
      }
    }
    s.entries.push_back({key, value, 0, false});
    return;
  }
  sections_.push_back({section, 0, {{key, value, 0, false}}});
}

void Config::remove(const std::string& section, const std::string& key) {
  for (auto& s : sections_) {
    if (s.name != section) continue;
    std::erase_if(s.entries, [&](const Entry& e) { return e.key == key; });
  }
}

void Config::require_all_consumed() const {
  std::string complaints;
  for (const auto& s : sections_) {
    for (const auto& e : s.entries) {
      if (!e.consumed) {
        if (!complaints.empty()) complaints += "; ";
        complaints += name_ + ":" + std::to_string(e.line) + ": unknown key [" + s.name + "] " +
                      e.key;
      }
    }
  }
  if (!complaints.empty()) throw ConfigError(complaints);
}

std::string Config::canonical_text() const {
  std::ostringstream out;
  for (const auto& s : sections_) {
    out << '[' << s.name << "]\n";
    for (const auto& e : s.entries) out << e.key << " = " << e.value << '\n';
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string>> Config::flattened() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : sections_)
    for (const auto& e : s.entries) out.emplace_back(s.name + "." + e.key, e.value);
  return out;
}

}  // namespace afcsim
