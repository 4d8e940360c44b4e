#pragma once

#include <stdexcept>
#include <string>

namespace reflectsim {

/// Bad input: malformed config, out-of-range parameter, violated invariant.
/// The command-line tool maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Geometry that cannot be evaluated (coincident points, parallel lines).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reflectsim
