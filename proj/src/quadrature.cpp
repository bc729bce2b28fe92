#include "adiagrover/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "adiagrover/errors.hpp"

namespace adiagrover::num {

namespace {

double integrate_panel(const std::function<double(double)>& f, double a,
                       double b, const QuadratureOptions& opt) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0;
  double l1 = 0.0;
  const double value = rule::integrate(f, a, b, opt.max_depth, opt.rel_tol,
                                       &error, &l1);
  // The driver targets error <= rel_tol * L1; allow a small safety factor
  // before declaring non-convergence.
  const double bound = 10.0 * opt.rel_tol * std::max(l1, 1e-300);
  if (!std::isfinite(value) || error > bound) {
    throw QuadratureError(
        "adaptive Gauss-Kronrod did not converge: estimate " +
            std::to_string(value) + ", error " + std::to_string(error) +
            ", interval [" + std::to_string(a) + ", " + std::to_string(b) + "]",
        value, error);
  }
  return value;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  return integrate_panel(f, a, b, opt);
}

double integrate_split(const std::function<double(double)>& f, double a,
                       double b, std::initializer_list<double> breakpoints,
                       const QuadratureOptions& opt) {
  std::vector<double> edges{a};
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    total += integrate_panel(f, edges[i], edges[i + 1], opt);
  }
  return total;
}

}  // namespace adiagrover::num
