#ifndef XDIPOLE_ERRORS_HPP
#define XDIPOLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xdipole {

/// Malformed or inconsistent input configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Segmentation violates thin-wire kernel validity (CLI exit code 3).
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver breakdown: singular or ill-conditioned system, bad residual.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xdipole

#endif  // XDIPOLE_ERRORS_HPP
