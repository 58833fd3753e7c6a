#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rudinlab/numeric.hpp"

namespace rudinlab {

struct QuadResult {
  cplx value;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// 15-point Gauss-Kronrod rule on one panel; error = |K15 - G7|.
QuadResult gk15(const std::function<cplx(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod over an initial partition: the panel with
/// the largest error estimate is bisected until the summed estimate drops to
/// abs_tol or max_panels is reached (then converged = false and the current
/// estimate is returned).
QuadResult adaptive_gk15(const std::function<cplx(double)>& f, std::vector<double> breakpoints,
                         double abs_tol, std::size_t max_panels);

}  // namespace rudinlab
