#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace balance {

/// Malformed graph input: self-loops, duplicates, bad vertex indices or signs.
/// `line()` is the 1-based source line (or list position) of the offending
/// record, 0 when not attributable to a single record.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A test statistic is not defined on the given graph (e.g. no negative edges).
class StatisticUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Gaussian null approximation has no usable variance.
class DegenerateApproximation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace balance
