#pragma once

#include <functional>

namespace scatter::specfun {

// Accuracy targets for adaptive quadrature. Used by the library where a closed
// form is unavailable and by the test oracles.
struct QuadratureSpec {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Either limit may
// be infinite; infinite ranges are mapped onto finite ones by t/(1-t).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

}  // namespace scatter::specfun
