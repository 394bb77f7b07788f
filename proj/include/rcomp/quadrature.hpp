#pragma once

#include <functional>

namespace rcomp {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod quadrature on [a, b].
/// `rel_tol` bounds the error estimate relative to the L1 norm of the integrand.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-13, unsigned max_depth = 12);

}  // namespace rcomp
