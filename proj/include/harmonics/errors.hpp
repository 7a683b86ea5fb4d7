#pragma once

#include <stdexcept>
#include <string>

namespace harmonics {

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DeterminantError : public Error {
 public:
  using Error::Error;
};

class BandlimitExceeded : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class SizeExceeded : public Error {
 public:
  using Error::Error;
};

class RequiresClosedForm : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace harmonics
