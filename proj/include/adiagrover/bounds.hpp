#pragma once

#include <Eigen/Dense>
#include <string>

#include "adiagrover/grover.hpp"
#include "adiagrover/lindblad.hpp"
#include "adiagrover/schedules.hpp"

namespace adiagrover::bounds {

// Arctangent sum entering the minimal-infidelity law,
//   arctan(1/(gamma sqrt(N))) + arctan(B),
// with the second argument evaluated in the cancellation-free form
//   B = (gamma^2 (N-1) - 1) / (gamma (sqrt((1+gamma^2)(N-1)) + sqrt(N))).
// Equals sqrt(gamma) * tau, with tau from the schedules module.
double infidelity_bracket(double N, double gamma);

// Minimal tunneling out of the ground state achievable in runtime T:
// (2/(gamma T)) * infidelity_bracket^2.
double min_infidelity(double N, double gamma, double T);

// Exact inverse: smallest T whose minimal infidelity equals the target.
double min_runtime(double N, double gamma, double target_infidelity);

enum class Regime { Weak, Moderate, Strong };

std::string regime_name(Regime r);

// alpha = gamma * sqrt(N); Weak below 0.1, Strong above 10.
Regime classify_regime(double alpha);

struct RegimeReport {
  double alpha = 0.0;
  Regime regime = Regime::Moderate;
  double exact_tmin = 0.0;
  double asymptotic_tmin = 0.0;
  double rel_deviation = 0.0;  // |exact - asymptotic| / exact
};

// Two closed forms circulate for the moderate-regime coefficient c(alpha).
// The large-N limit of the runtime bracket at fixed alpha is
//   arctan(1/alpha) + arctan(alpha/2 - 1/(2 alpha))        (exact limit)
// while the shorter variant drops the -1/(2 alpha) term. They disagree
// noticeably (0.7854 vs 1.2490 at alpha = 1); the regime report uses the
// exact limit. Both are exposed so the discrepancy can be inspected.
double moderate_c_exact(double alpha);
double moderate_c_simple(double alpha);

// Asymptotic minimal runtime in the regime selected by alpha (or forced):
//   Weak:     2 gamma N / target
//   Moderate: 2 c(alpha)^2 sqrt(N) / (alpha target)
//   Strong:   pi^2 / (2 gamma target)
// The report compares against the exact min_runtime.
RegimeReport asymptotic_tmin(double N, double gamma, double target_infidelity);
RegimeReport asymptotic_tmin(double N, double gamma, double target_infidelity,
                             Regime regime);

// Principal branch of w e^w = x, Halley-iterated to 1e-14 residual.
// Throws std::domain_error for x < -1/e.
double lambert_w0(double x);

struct GammaMaxResult {
  double value = 0.0;        // (gap/pi) * (sqrt(2 eps) + 2 eps / 3)
  double x_exact = 0.0;      // 1 + eps + W0(-exp(-(1+eps)))
  double x_expansion = 0.0;  // sqrt(2 eps) + 2 eps / 3
};

// Largest dephasing rate compatible with a continuous-measurement error
// budget eps per Mandelstam-Tamm interval pi/gap. The exact solution
// x(eps) of e^{-x} = 1 - x + eps must satisfy x <= 1 (complete positivity);
// eps = 1/e gives x = 1 exactly and larger eps throws NumericalError.
// `value` keeps the two-term form the downstream rate rules use; note the
// true small-eps expansion of x is sqrt(2 eps) + eps/3, so `x_expansion`
// overshoots x_exact by about 2% already at eps = 0.01.
GammaMaxResult gamma_max(double gap, double epsilon);

enum class SuperNorm { Spectral, InducedTrace };

struct CBoundOptions {
  SuperNorm norm = SuperNorm::Spectral;
  double fd_step = 1e-4;         // stencil spacing for d/ds
  // The |S'P' + SP''| integrand has spectral-norm kinks and inherits
  // finite-difference noise from the stencils, so adaptive quadrature
  // certifies ~1e-5 relative at best once gamma is small. That is still
  // orders of magnitude tighter than the slope fits downstream need.
  double quad_rel_tol = 1e-5;    // integral term
  int induced_norm_samples = 64; // InducedTrace estimator only
};

// Vectorized (column-major) generator at one schedule point, with its
// kernel projector and reduced resolvent. All matrices act on the 4-dim
// space of vectorized 2x2 operators.
struct SuperoperatorSample {
  double s = 0.0;
  Eigen::MatrixXcd L_matrix;    // generator
  Eigen::MatrixXcd P_matrix;    // projector onto ker L (dim 2)
  Eigen::MatrixXcd S_matrix;    // inverse of L off the kernel, 0 on it
  Eigen::MatrixXcd dP_matrix;   // d/ds of P
  Eigen::MatrixXcd d2P_matrix;  // d^2/ds^2 of P
  Eigen::MatrixXcd dS_matrix;   // d/ds of S
  double norm_S = 0.0;
  double norm_dP = 0.0;
  double norm_d2P = 0.0;
  double norm_dS = 0.0;
};

// Builds L, P, S and their s-derivatives (5-point finite differences,
// stencils shifted one-sided at the interval ends) at schedule point s.
// Throws SpectralError if ker L is not two-dimensional.
SuperoperatorSample superoperator_at(const grover::GroverInstance& inst,
                                     const schedules::Schedule& schedule,
                                     double gamma, double s,
                                     const CBoundOptions& opt = {});

struct CBoundResult {
  double value = 0.0;           // full constant
  double boundary_start = 0.0;  // ||S(0)|| ||P'(0)||
  double boundary_end = 0.0;    // ||S(s_end)|| ||P'(s_end)||
  double integral = 0.0;        // int ||S'P' + SP''|| ds
};

// Adiabatic-theorem constant for the dephasing generator along a schedule:
//   C = ||S(s_end)|| ||P'(s_end)|| + ||S(0)|| ||P'(0)||
//       + int_0^{s_end} ||(S'P' + SP'')(sigma)|| dsigma.
CBoundResult adiabatic_constant_C(const grover::GroverInstance& inst,
                                  const schedules::Schedule& schedule,
                                  double gamma, double s_end = 1.0,
                                  const CBoundOptions& opt = {});

// Mandelstam-Tamm minimal time along the adiabatic path, 2 int_0^1 dq/g^2.
double mt_path_qsl(const grover::GroverInstance& inst);

// rc_runtime(N, eps) / mt_path_qsl; equals 1/(2 eps) identically.
double rc_qsl_ratio(const grover::GroverInstance& inst, double epsilon_adiab);

// Deffner-Lutz bound for the recorded trajectory: sin^2 of the Bures angle
// between the initial and final reduced states over the time average of
// ||L(rho)||_1 in physical time. Returns 0 for coinciding endpoints.
double deffner_lutz_qsl(const lindblad::Trajectory& traj,
                        const grover::GroverInstance& inst,
                        const lindblad::DephasingModel& model,
                        const schedules::Schedule& schedule);

}  // namespace adiagrover::bounds
