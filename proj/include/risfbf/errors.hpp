#pragma once

#include <stdexcept>
#include <string>

namespace risfbf {

// Bad input shape or out-of-range argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameter outside the interval a convergence regime requires.
class PolicyViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested operation is not available for this object (e.g. no mean operator).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// NaN/Inf appeared. `index` is the draw or iteration where it was detected.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, long index)
      : std::runtime_error(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace risfbf
