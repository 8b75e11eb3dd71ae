#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dra {

/// Malformed scenario input. Carries every failed check, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Input that is not even JSON. Shape and type problems inside parsed JSON
/// are ValidationError so every one of them can be reported at once.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (unknown id, wrong host, ...).
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// A configuration value is out of its legal range.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration oracle refused to run because it would exceed its budget.
class BudgetExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace dra
