#pragma once

#include <stdexcept>
#include <string>

namespace zfb {

// Precondition violated by the caller (bad vertex id, empty leader set, ...).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed dataset file. Carries the offending file and 1-based line when known.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Request exceeds what an exact (exponential) routine is allowed to attempt.
class CapabilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace zfb
