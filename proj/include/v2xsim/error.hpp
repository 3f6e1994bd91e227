#pragma once

#include <stdexcept>
#include <string>

namespace v2x {

// Argument outside the mathematical domain of an operation (bad mu, bad
// block length, mismatched sizes).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid or unsupported simulation configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace v2x
