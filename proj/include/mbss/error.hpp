#pragma once

#include <stdexcept>
#include <string>

namespace mbss {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data that cannot be processed (short signals, malformed files, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbss
