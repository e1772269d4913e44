#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fvlimit {

// Raised when a state has rho <= 0 or p <= 0. Inside the solver loop the
// offending cell and step are attached; both are -1 otherwise.
class NonPhysicalState : public std::runtime_error {
 public:
  explicit NonPhysicalState(const std::string& what, std::int64_t cell = -1, std::int64_t step = -1)
      : std::runtime_error(what), cell_(cell), step_(step) {}

  [[nodiscard]] std::int64_t cell() const { return cell_; }
  [[nodiscard]] std::int64_t step() const { return step_; }

 private:
  std::int64_t cell_;
  std::int64_t step_;
};

class MalformedMesh : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

class DegenerateGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, int line, const std::string& what)
      : std::runtime_error(key + (line > 0 ? " (line " + std::to_string(line) + ")" : std::string()) + ": " + what),
        key_(key),
        line_(line) {}
  [[nodiscard]] const std::string& key() const { return key_; }
  [[nodiscard]] int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

class CFLViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fvlimit
