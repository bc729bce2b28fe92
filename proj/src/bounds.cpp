#include "adiagrover/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "adiagrover/errors.hpp"
#include "adiagrover/quadrature.hpp"

namespace adiagrover::bounds {
namespace {

using complexd = std::complex<double>;
using Eigen::MatrixXcd;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double infidelity_bracket(double N, double gamma) {
  require(N >= 2.0, "infidelity_bracket: N must be >= 2");
  require(gamma > 0.0, "infidelity_bracket: gamma must be positive");
  const double ell = N - 1.0;
  const double first = std::atan(1.0 / (gamma * std::sqrt(N)));
  // (sqrt((1+gamma^2)(N-1)) - sqrt(N)) / gamma without the cancellation.
  const double num = gamma * gamma * ell - 1.0;
  const double den =
      gamma * (std::sqrt((1.0 + gamma * gamma) * ell) + std::sqrt(N));
  return first + std::atan(num / den);
}

double min_infidelity(double N, double gamma, double T) {
  require(T > 0.0, "min_infidelity: T must be positive");
  const double b = infidelity_bracket(N, gamma);
  return 2.0 * b * b / (gamma * T);
}

double min_runtime(double N, double gamma, double target_infidelity) {
  require(target_infidelity > 0.0 && target_infidelity < 1.0,
          "min_runtime: target infidelity must lie in (0, 1)");
  const double b = infidelity_bracket(N, gamma);
  return 2.0 * b * b / (gamma * target_infidelity);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Weak:
      return "weak";
    case Regime::Moderate:
      return "moderate";
    case Regime::Strong:
      return "strong";
  }
  return "unknown";
}

Regime classify_regime(double alpha) {
  require(alpha > 0.0, "classify_regime: alpha must be positive");
  if (alpha < 0.1) return Regime::Weak;
  if (alpha > 10.0) return Regime::Strong;
  return Regime::Moderate;
}

double moderate_c_exact(double alpha) {
  require(alpha > 0.0, "moderate_c_exact: alpha must be positive");
  return std::atan(1.0 / alpha) + std::atan(0.5 * alpha - 0.5 / alpha);
}

double moderate_c_simple(double alpha) {
  require(alpha > 0.0, "moderate_c_simple: alpha must be positive");
  return std::atan(1.0 / alpha) + std::atan(0.5 * alpha);
}

RegimeReport asymptotic_tmin(double N, double gamma, double target_infidelity,
                             Regime regime) {
  const double alpha = gamma * std::sqrt(N);
  RegimeReport rep;
  rep.alpha = alpha;
  rep.regime = regime;
  rep.exact_tmin = min_runtime(N, gamma, target_infidelity);
  switch (regime) {
    case Regime::Weak:
      rep.asymptotic_tmin = 2.0 * gamma * N / target_infidelity;
      break;
    case Regime::Moderate: {
      const double c = moderate_c_exact(alpha);
      rep.asymptotic_tmin =
          2.0 * c * c * std::sqrt(N) / (alpha * target_infidelity);
      break;
    }
    case Regime::Strong:
      rep.asymptotic_tmin =
          std::numbers::pi * std::numbers::pi / (2.0 * gamma * target_infidelity);
      break;
  }
  rep.rel_deviation =
      std::abs(rep.exact_tmin - rep.asymptotic_tmin) / rep.exact_tmin;
  return rep;
}

RegimeReport asymptotic_tmin(double N, double gamma,
                             double target_infidelity) {
  return asymptotic_tmin(N, gamma, target_infidelity,
                         classify_regime(gamma * std::sqrt(N)));
}

double lambert_w0(double x) {
  constexpr double kBranchPoint = -0.36787944117144233;  // -1/e
  if (!(x >= kBranchPoint)) {
    if (x > kBranchPoint - 1e-12) return -1.0;  // roundoff straddle
    throw std::domain_error("lambert_w0: argument below -1/e");
  }
  if (x < kBranchPoint + 1e-8) {
    // Puiseux series about the branch point; residual O(p^4) here.
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  }

  double w;
  if (x < -0.25) {
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  } else if (x < 2.0) {
    w = x <= 0.0 ? x * (1.0 - x) : std::log1p(x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  const double tol = 1e-14 * std::max(1.0, std::abs(x));
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= tol) return w;
    const double wp1 = w + 1.0;
    double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) denom = ew * wp1;
    w -= f / denom;
    if (w < -1.0) w = -1.0 + 1e-12;  // stay on the principal branch
  }
  if (std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, std::abs(x)))
    return w;
  throw NumericalError("lambert_w0: Halley iteration failed to converge");
}

GammaMaxResult gamma_max(double gap, double epsilon) {
  require(gap > 0.0, "gamma_max: gap must be positive");
  require(epsilon > 0.0 && epsilon < 1.0,
          "gamma_max: epsilon must lie in (0, 1)");
  GammaMaxResult r;
  r.x_expansion = std::sqrt(2.0 * epsilon) + 2.0 * epsilon / 3.0;
  r.x_exact = 1.0 + epsilon + lambert_w0(-std::exp(-(1.0 + epsilon)));
  if (r.x_exact > 1.0 + 1e-9)
    throw NumericalError(
        "gamma_max: epsilon exceeds the measurement-channel limit (x > 1); "
        "the largest admissible epsilon is 1/e");
  r.value = gap / std::numbers::pi * r.x_expansion;
  return r;
}

namespace {

Eigen::Vector4cd vec2(const Eigen::Matrix2cd& m) {
  return Eigen::Map<const Eigen::Vector4cd>(m.data());
}

Eigen::Matrix2cd unvec2(const Eigen::Vector4cd& v) {
  return Eigen::Map<const Eigen::Matrix2cd>(v.data());
}

// Column-major matrix representation of rho -> L(rho) on vectorized 2x2
// operators.
MatrixXcd generator_matrix(const grover::GroverInstance& inst, double q,
                           double gamma) {
  MatrixXcd L(4, 4);
  for (int k = 0; k < 4; ++k) {
    Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
    e(k % 2, k / 2) = 1.0;
    L.col(k) = vec2(lindblad::liouvillian_apply(inst, e, q, gamma));
  }
  return L;
}

// Orthogonal projector onto span{vec(|g><g|), vec(|e><e|)}; those two are
// orthonormal under the Hilbert-Schmidt inner product, and the generator is
// normal, so this is also its kernel spectral projector.
MatrixXcd kernel_projector(const grover::GroverInstance& inst, double q) {
  const Eigen::Vector2d g = grover::ground_state(inst, q);
  const Eigen::Vector2d e = grover::excited_state(inst, q);
  const Eigen::Matrix2cd pg = (g * g.transpose()).cast<complexd>();
  const Eigen::Matrix2cd pe = (e * e.transpose()).cast<complexd>();
  const Eigen::Vector4cd vg = vec2(pg);
  const Eigen::Vector4cd ve = vec2(pe);
  return vg * vg.adjoint() + ve * ve.adjoint();
}

int kernel_dimension(const MatrixXcd& L) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(L, false);
  const double thr = 1e-10 * std::max(L.norm(), 1e-300);
  int dim = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) < thr) ++dim;
  return dim;
}

struct LpsTriple {
  MatrixXcd L, P, S;
};

LpsTriple lps_at(const grover::GroverInstance& inst,
                 const schedules::Schedule& schedule, double gamma, double s) {
  const double q = schedule.eval(s);
  LpsTriple r;
  r.L = generator_matrix(inst, q, gamma);
  const int dim = kernel_dimension(r.L);
  if (dim != 2)
    throw SpectralError("generator kernel dimension " + std::to_string(dim) +
                        " at s = " + std::to_string(s) + ", expected 2");
  r.P = kernel_projector(inst, q);
  const MatrixXcd eye = MatrixXcd::Identity(4, 4);
  // L + P is invertible; subtracting P leaves the inverse of L off the
  // kernel and zero on it.
  r.S = (r.L + r.P).partialPivLu().solve(eye) - r.P;
  return r;
}

// Finite-difference weights at z over five nodes (Fornberg's recursion);
// column m holds the order-m derivative weights.
Eigen::Matrix<double, 5, 3> fd_weights(const std::array<double, 5>& x,
                                       double z) {
  Eigen::Matrix<double, 5, 3> c = Eigen::Matrix<double, 5, 3>::Zero();
  double c1 = 1.0;
  double c4 = x[0] - z;
  c(0, 0) = 1.0;
  for (int i = 1; i < 5; ++i) {
    const int mn = std::min(i, 2);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

double spectral_norm(const MatrixXcd& m) {
  return Eigen::JacobiSVD<MatrixXcd>(m).singularValues()(0);
}

// Lower estimate of the induced trace norm: maximum gain over canonical
// eigen-projector / coherence inputs and a fixed-seed Hermitian sample.
double induced_trace_norm_estimate(const MatrixXcd& m, int n_samples) {
  double best = 0.0;
  const auto probe = [&](const Eigen::Matrix2cd& x) {
    const double tn = lindblad::trace_norm(x);
    if (tn <= 0.0) return;
    const Eigen::Vector4cd y = m * (vec2(x) / tn);
    best = std::max(best, lindblad::trace_norm(unvec2(y)));
  };
  Eigen::Matrix2cd x;
  x << 1, 0, 0, 0;
  probe(x);
  x << 0, 0, 0, 1;
  probe(x);
  x << 0, 1, 1, 0;
  probe(x);
  x << 0, complexd(0, -1), complexd(0, 1), 0;
  probe(x);
  std::mt19937 rng(0x6b8b4567u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n_samples; ++i) {
    const double a = gauss(rng), b = gauss(rng), c = gauss(rng), d = gauss(rng);
    x << a, complexd(c, -d), complexd(c, d), b;
    probe(x);
  }
  return best;
}

double super_norm(const MatrixXcd& m, const CBoundOptions& opt) {
  return opt.norm == SuperNorm::Spectral
             ? spectral_norm(m)
             : induced_trace_norm_estimate(m, opt.induced_norm_samples);
}

}  // namespace

SuperoperatorSample superoperator_at(const grover::GroverInstance& inst,
                                     const schedules::Schedule& schedule,
                                     double gamma, double s,
                                     const CBoundOptions& opt) {
  require(s >= 0.0 && s <= 1.0, "superoperator_at: s must lie in [0, 1]");
  require(gamma >= 0.0, "superoperator_at: gamma must be non-negative");
  const double h = opt.fd_step;
  if (!(h > 0.0) || 4.0 * h >= 1.0)
    throw NumericalError("superoperator_at: finite-difference step must lie in (0, 1/4)");

  const double lo = std::clamp(s - 2.0 * h, 0.0, 1.0 - 4.0 * h);
  std::array<double, 5> nodes{};
  std::array<LpsTriple, 5> at{};
  for (int j = 0; j < 5; ++j) {
    nodes[j] = lo + j * h;
    at[j] = lps_at(inst, schedule, gamma, nodes[j]);
  }
  const auto w = fd_weights(nodes, s);

  int center = -1;
  for (int j = 0; j < 5; ++j)
    if (nodes[j] == s) center = j;
  const LpsTriple here =
      center >= 0 ? at[center] : lps_at(inst, schedule, gamma, s);

  SuperoperatorSample out;
  out.s = s;
  out.L_matrix = here.L;
  out.P_matrix = here.P;
  out.S_matrix = here.S;
  out.dP_matrix = MatrixXcd::Zero(4, 4);
  out.d2P_matrix = MatrixXcd::Zero(4, 4);
  out.dS_matrix = MatrixXcd::Zero(4, 4);
  for (int j = 0; j < 5; ++j) {
    out.dP_matrix += w(j, 1) * at[j].P;
    out.d2P_matrix += w(j, 2) * at[j].P;
    out.dS_matrix += w(j, 1) * at[j].S;
  }
  out.norm_S = super_norm(out.S_matrix, opt);
  out.norm_dP = super_norm(out.dP_matrix, opt);
  out.norm_d2P = super_norm(out.d2P_matrix, opt);
  out.norm_dS = super_norm(out.dS_matrix, opt);
  return out;
}

CBoundResult adiabatic_constant_C(const grover::GroverInstance& inst,
                                  const schedules::Schedule& schedule,
                                  double gamma, double s_end,
                                  const CBoundOptions& opt) {
  require(s_end > 0.0 && s_end <= 1.0,
          "adiabatic_constant_C: s_end must lie in (0, 1]");
  const SuperoperatorSample head =
      superoperator_at(inst, schedule, gamma, 0.0, opt);
  const SuperoperatorSample tail =
      superoperator_at(inst, schedule, gamma, s_end, opt);

  CBoundResult r;
  r.boundary_start = head.norm_S * head.norm_dP;
  r.boundary_end = tail.norm_S * tail.norm_dP;

  const auto integrand = [&](double sigma) {
    const SuperoperatorSample smp =
        superoperator_at(inst, schedule, gamma, sigma, opt);
    return super_norm(
        smp.dS_matrix * smp.dP_matrix + smp.S_matrix * smp.d2P_matrix, opt);
  };
  num::QuadratureOptions qopt;
  qopt.rel_tol = opt.quad_rel_tol;
  // Spectral-norm kinks (argmax crossings) converge slowly under panel
  // bisection; extra depth buys the margin the default 15 lacks at small
  // gamma.
  qopt.max_depth = 20;
  // The gap minimum sits at the schedule midpoint; split there so the
  // adaptive driver bisects toward it from both sides.
  r.integral =
      num::integrate_split(integrand, 0.0, s_end, {0.5 * s_end}, qopt);
  r.value = r.boundary_end + r.boundary_start + r.integral;
  return r;
}

double mt_path_qsl(const grover::GroverInstance& inst) {
  const auto f = [&inst](double q) {
    const double g = grover::gap(inst, q);
    return 1.0 / (g * g);
  };
  return 2.0 * num::integrate_split(f, 0.0, 1.0, {0.5}, {});
}

double rc_qsl_ratio(const grover::GroverInstance& inst, double epsilon_adiab) {
  require(epsilon_adiab > 0.0, "rc_qsl_ratio: epsilon must be positive");
  return schedules::rc_runtime(inst.dimension, epsilon_adiab) /
         mt_path_qsl(inst);
}

double deffner_lutz_qsl(const lindblad::Trajectory& traj,
                        const grover::GroverInstance& inst,
                        const lindblad::DephasingModel& model,
                        const schedules::Schedule& schedule) {
  require(traj.complete(), "deffner_lutz_qsl: trajectory must be complete");
  const auto& samples = traj.samples;
  const std::size_t n = samples.size();

  const Eigen::Matrix2cd r0 = samples.front().rho_reduced;
  const Eigen::Matrix2cd r1 = samples.back().rho_reduced;
  const double d0 = std::max(0.0, r0.determinant().real());
  const double d1 = std::max(0.0, r1.determinant().real());
  double fid = (r0 * r1).trace().real() + 2.0 * std::sqrt(d0 * d1);
  fid = std::clamp(fid, 0.0, 1.0);
  const double numerator = 1.0 - fid;  // sin^2 of the Bures angle
  if (numerator <= 1e-15) return 0.0;

  // Time average of ||L(rho)||_1 in physical time; with t = T s the T's
  // cancel, leaving a plain integral over the recorded s grid (composite
  // Simpson; the grid is uniform).
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& smp = samples[i];
    const double q = schedule.eval(smp.s);
    const double rate = model.rate(inst, q);
    g[i] = lindblad::trace_norm(
        lindblad::liouvillian_apply(inst, smp.rho_reduced, q, rate));
  }
  const double h = 1.0 / static_cast<double>(n - 1);
  double denom = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) denom += h / 3.0 * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
  if (i + 1 < n) denom += 0.5 * h * (g[i] + g[i + 1]);  // even-count tail
  if (denom <= 0.0) return 0.0;
  return numerator / denom;
}

}  // namespace adiagrover::bounds
