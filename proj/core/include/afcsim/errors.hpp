#ifndef AFCSIM_ERRORS_HPP
#define AFCSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace afcsim {

/// Bad or missing configuration input: config files, bundled data files,
/// schema violations. Messages carry "file:line:" prefixes where available.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A pipeline stage failed; the message names the stage and wraps the
/// underlying error.
class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "': " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace afcsim

#endif
