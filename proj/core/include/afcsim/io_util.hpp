#ifndef AFCSIM_IO_UTIL_HPP
#define AFCSIM_IO_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace afcsim {

/// FNV-1a 64-bit hash. Used for data-file checksums and scenario hashes.
std::uint64_t fnv1a64(std::string_view data);

/// 16-digit lowercase hex rendering of a 64-bit hash.
std::string hash_hex(std::uint64_t h);

/// Shortest round-trip decimal rendering of a double (printf %.17g).
std::string format_double(double v);

/// Writes content to path via a temporary file in the same directory and an
/// atomic rename, so interrupted runs never leave half-written tables.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

void create_directories(const std::string& path);

/// Ordered key-value document, serialized one `key = value` per line with
/// `#` comment headers. Scenario reports and run summaries use this format.
class KeyValueDoc {
 public:
  void set(std::string key, std::string value);
  void set(std::string key, double value);
  void set(std::string key, long long value);
  void set(std::string key, int value) { set(std::move(key), static_cast<long long>(value)); }
  void set(std::string key, bool value);

  bool has(std::string_view key) const;
  const std::string& get(std::string_view key) const;
  double get_double(std::string_view key) const;

  void add_header(std::string comment_line);

  std::string serialize() const;
  void save(const std::string& path) const;

  static KeyValueDoc parse(const std::string& text);
  static KeyValueDoc load(const std::string& path);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace afcsim

#endif
