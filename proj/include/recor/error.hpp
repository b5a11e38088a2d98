#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recor {

/// Caller broke a documented precondition (length mismatch, empty input, bad config).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coefficient was requested on data where it has no value (constant sample).
class UndefinedCorrelation : public std::domain_error {
 public:
  explicit UndefinedCorrelation(const std::string& what)
      : std::domain_error("undefined correlation: " + what) {}
};

/// The estimator needs more observations than were supplied.
class InsufficientSample : public std::domain_error {
 public:
  explicit InsufficientSample(const std::string& what)
      : std::domain_error("insufficient sample: " + what) {}
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(format(source, line, what)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    if (!out.empty()) out += ": ";
    return out + what;
  }

  std::size_t line_;
};

}  // namespace recor
