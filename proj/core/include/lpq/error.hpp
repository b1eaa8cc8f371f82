#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace lpq {

/// Invalid parameters or inputs: bad grid size, out-of-range level, unsupported option.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematically undefined request: empty cube lattice, diagonal point pair.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal invariant failed. Indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using WarningHandler = std::function<void(const std::string&)>;

// Non-fatal diagnostics (regime notes, skipped cubes). Default handler writes to
// stderr; an empty handler discards them.
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace lpq
