#pragma once

#include <stdexcept>
#include <string>

namespace rootsim {

// All library failures derive from Error so the CLI can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (MGF radius, k >= n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Dense object requested above its size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Annulus grid finer than the evaluation budget allows.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rootsim
