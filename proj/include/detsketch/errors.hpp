#pragma once

#include <stdexcept>
#include <string>

namespace detsketch {

/// Operand shapes do not line up (e.g. A.cols != x.dim).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction or estimator was asked for a parameter combination it
/// cannot honour. The message names the violated constraint.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Las Vegas construction ran out of retries.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The LP behind l1 minimization did not reach an optimal basis.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incompatible matrix file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace detsketch
