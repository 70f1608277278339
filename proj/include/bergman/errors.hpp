#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Precondition violations on arguments (dimension mismatch, out-of-range parameters).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not meet its stated accuracy or a sampled property failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bergman
