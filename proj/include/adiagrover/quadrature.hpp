#pragma once

#include <functional>

namespace adiagrover::num {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  // Subdivision depth passed to the adaptive Gauss-Kronrod driver; 2^depth
  // panels per requested interval.
  unsigned max_depth = 15;
};

// Integral of f over [a, b] by adaptive Gauss-Kronrod (7-15 rule).
// Throws QuadratureError when the achieved error estimate is not below
// tolerance (relative to the L1 norm of the integrand).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Same, with the interval split at interior breakpoints first. Used for
// integrands peaked at a known point (the adaptive driver then bisects
// toward the peak from both sides).
double integrate_split(const std::function<double(double)>& f, double a,
                       double b, std::initializer_list<double> breakpoints,
                       const QuadratureOptions& opt = {});

}  // namespace adiagrover::num
