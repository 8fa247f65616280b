#include "afcsim/io_util.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "afcsim/errors.hpp"

namespace afcsim {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void create_directories(const std::string& path) {
  std::filesystem::create_directories(path);
}

void KeyValueDoc::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void KeyValueDoc::set(std::string key, double value) { set(std::move(key), format_double(value)); }

void KeyValueDoc::set(std::string key, long long value) { set(std::move(key), std::to_string(value)); }

void KeyValueDoc::set(std::string key, bool value) { set(std::move(key), std::string(value ? "true" : "false")); }

bool KeyValueDoc::has(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return true;
  return false;
}

const std::string& KeyValueDoc::get(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  throw std::out_of_range("no such key: " + std::string(key));
}

double KeyValueDoc::get_double(std::string_view key) const { return std::stod(get(key)); }

void KeyValueDoc::add_header(std::string comment_line) { header_.push_back(std::move(comment_line)); }

std::string KeyValueDoc::serialize() const {
  std::ostringstream out;
  for (const auto& line : header_) out << "# " << line << "\n";
  for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
  return out.str();
}

void KeyValueDoc::save(const std::string& path) const { atomic_write_file(path, serialize()); }

KeyValueDoc KeyValueDoc::parse(const std::string& text) {
  KeyValueDoc doc;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    doc.entries_.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return doc;
}

KeyValueDoc KeyValueDoc::load(const std::string& path) { return parse(read_file(path)); }

}  // namespace afcsim
