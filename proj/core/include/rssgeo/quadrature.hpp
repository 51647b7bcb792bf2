#pragma once

#include <functional>

namespace rssgeo::quad {

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;  // sum of per-interval Kronrod-Gauss discrepancies
  int evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tolerance = 1e-8;
  int max_evaluations = 100000;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Bisects the interval with the largest local error until the total error
/// estimate falls below abs_tolerance or the evaluation budget runs out.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace rssgeo::quad
