#pragma once

#include <cstdint>
#include <memory>
#include <ostream>

namespace adiagrover::schedules {

enum class ScheduleKind { Linear, RolandCerf, OptimalClosed, OptimalNumeric };

class ScheduleImpl {
 public:
  virtual ~ScheduleImpl() = default;
  virtual double eval(double s) const = 0;
  virtual double deriv(double s) const = 0;
};

// Interpolation schedule q(s) on s in [0, 1] with q(0) = 0, q(1) = 1,
// strictly increasing and symmetric about s = 1/2. Immutable; evaluation is
// pure and safe for concurrent use.
class Schedule {
 public:
  Schedule(ScheduleKind kind, std::uint64_t N, double gamma,
           std::shared_ptr<const ScheduleImpl> impl);

  double eval(double s) const;
  double deriv(double s) const;

  ScheduleKind kind() const { return kind_; }
  // Construction parameters; N = 0 / gamma = 0 when not applicable.
  std::uint64_t N() const { return N_; }
  double gamma() const { return gamma_; }

 private:
  ScheduleKind kind_;
  std::uint64_t N_;
  double gamma_;
  std::shared_ptr<const ScheduleImpl> impl_;
};

// Mass term M(q) = gamma (N-1) / (N^2 g^4(q) (g^2(q) + gamma^2)).
double mass(std::uint64_t N, double gamma, double q);

struct TauConstant {
  enum class Method { Quadrature, ClosedForm };
  double value;
  Method method;
};

// tau = int_0^1 sqrt(M(q)) dq. tau() integrates adaptively (ground truth);
// tau_closed_form() evaluates Theta0/sqrt(gamma) with
// Theta0 = arcsin(gamma sqrt(N-1)/sqrt(1 + N gamma^2)). The two agree to
// relative 1e-8 (enforced in tests; the quadrature value is authoritative).
TauConstant tau(std::uint64_t N, double gamma);
TauConstant tau_closed_form(std::uint64_t N, double gamma);

Schedule linear_schedule();

// Excitation probability of the linear schedule at total runtime T,
// exp(-pi g_min^2 T / 2).
double landau_zener_probability(std::uint64_t N, double T);

// Local-adiabatic schedule: dq/dt = c g^2(q) after rescaling time by
// rc_runtime(N, c) = N arctan(sqrt(N-1)) / (c sqrt(N-1)).
Schedule roland_cerf_schedule(std::uint64_t N);
double rc_runtime(std::uint64_t N, double c);

// Dephasing-optimal schedule, closed form: q(s) = 1/2 + u(theta(s)) with
// theta = (2s-1) Theta0.
Schedule optimal_schedule_closed(std::uint64_t N, double gamma);

// Same schedule constructed independently: cumulative quadrature of sqrt(M)
// on a grid refined toward q = 1/2, inverted by monotone piecewise-cubic
// interpolation with exact ODE slopes dq/ds = tau/sqrt(M(q)) at the nodes.
Schedule optimal_schedule_numeric(std::uint64_t N, double gamma);

// Tabulated form: CSV with header s,q,dq_ds at n_samples uniform s values.
void write_table(const Schedule& schedule, std::ostream& os,
                 std::size_t n_samples = 1025);

}  // namespace adiagrover::schedules
