#pragma once

#include <stdexcept>
#include <string>

namespace helicore {

// Bad user input: sizes, ranges, mismatched grids.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operator applied outside its domain, e.g. curl_inv on a field with a mean.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Corrupt or inconsistent snapshot/config file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite state during time integration.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace helicore
