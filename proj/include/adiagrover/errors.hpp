#pragma once

#include <stdexcept>
#include <string>

namespace adiagrover {

// Failure of an iterative numerical procedure (integration, quadrature,
// root finding, spectral analysis). Domain and configuration violations use
// std::domain_error / std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : NumericalError(what), estimate(estimate), error(error) {}
  double estimate;
  double error;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double last_good_s)
      : NumericalError(what), last_good_s(last_good_s) {}
  // Evolution parameter reached before the step size underflowed.
  double last_good_s;
};

class SpectralError : public NumericalError {
 public:
  explicit SpectralError(const std::string& what) : NumericalError(what) {}
};

}  // namespace adiagrover
