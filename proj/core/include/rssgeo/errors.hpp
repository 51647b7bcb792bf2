#pragma once

#include <stdexcept>
#include <string>

namespace rssgeo {

/// Base class for all rssgeo errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sensor-to-candidate distance evaluated to zero (gain undefined).
class ZeroDistanceError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes are inconsistent (vector length vs. matrix size, grid vs. matrix).
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A coherence operand or matrix column has zero norm.
class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

/// Restricted columns are rank-deficient beyond tolerance.
class DegenerateSupportError : public Error {
 public:
  using Error::Error;
};

/// A candidate location produced identically zero noiseless data.
class ZeroSignatureError : public Error {
 public:
  using Error::Error;
};

/// Two query locations are numerically indistinguishable (|b1 - b2| below tolerance).
class DegenerateQueryError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance within budget.
class QuadratureFailureError : public Error {
 public:
  using Error::Error;
};

/// An RSS sample stream contained no samples.
class EmptyStreamError : public Error {
 public:
  using Error::Error;
};

/// An RSS value was zero or negative where a positive power is required.
class NonpositiveRssError : public Error {
 public:
  using Error::Error;
};

/// Too few points for the requested regression.
class InsufficientPointsError : public Error {
 public:
  using Error::Error;
};

/// All regression abscissae coincide; the fit is undetermined.
class CollinearDegenerateError : public Error {
 public:
  using Error::Error;
};

/// Scenario or input file failed validation.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace rssgeo
