#pragma once

#include <stdexcept>
#include <string>

namespace reins {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

// xi1 == 0 makes the proportional layer undefined.
class DegeneratePremiumError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public Error {
 public:
  NoRootError(const std::string& what, double lo, double hi)
      : Error(what + " (bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "])"),
        lo_(lo),
        hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace reins
