#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "adiagrover/grover.hpp"
#include "adiagrover/schedules.hpp"

namespace adiagrover::lindblad {

// d x d complex Hermitian, unit trace, positive semidefinite (up to the
// documented drift tolerances); d = 2 reduced, d = N full.
using DensityMatrix = Eigen::MatrixXcd;

double purity(const DensityMatrix& rho);
double hermiticity_residual(const DensityMatrix& rho);  // max |rho - rho^dag|
double min_eigenvalue(const DensityMatrix& rho);
double trace_norm(const DensityMatrix& m);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Dephasing rate damping the eigenbasis coherences.
// Constant(gamma = 0) is the unitary limit.
struct DephasingModel {
  enum class Kind { Constant, GapTracking };

  static DephasingModel constant(double gamma);      // gamma >= 0
  static DephasingModel gap_tracking(double kappa);  // kappa > 0

  double rate(const grover::GroverInstance& inst, double q) const;

  Kind kind = Kind::Constant;
  double gamma = 0.0;  // Constant
  double kappa = 0.0;  // GapTracking: rate = kappa * g(q)
};

struct SimConfig {
  double T = 1.0;  // physical runtime; the slowness parameter is 1/T
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t n_samples = 513;

  void validate() const;  // throws std::invalid_argument
};

struct TrajectorySample {
  double s = 0.0;
  double q = 0.0;
  DensityMatrix rho;  // full-space runs store the full matrix
  // Restriction of rho to span{m, m_perp}; equals rho for reduced runs.
  Eigen::Matrix2cd rho_reduced = Eigen::Matrix2cd::Zero();
  double fidelity = 0.0;
  Eigen::Vector3d bloch = Eigen::Vector3d::Zero();  // of the restriction
  double out_of_subspace = 0.0;  // population outside span{m, m_perp}
};

struct TrajectoryDiagnostics {
  std::uint64_t n_steps = 0;
  std::uint64_t n_rejected = 0;
  std::uint64_t n_rhs_evals = 0;
  double max_trace_drift = 0.0;
  // Largest |rho - rho^dag| entry seen before per-step re-symmetrization.
  double max_hermiticity_residual = 0.0;
  // Smallest eigenvalue over all recorded samples.
  double min_eigenvalue = 1.0;
  double max_out_of_subspace = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  TrajectoryDiagnostics diagnostics;
  double T = 0.0;

  bool complete() const {
    return !samples.empty() && samples.back().s == 1.0;
  }
};

// Right-hand side of the master equation before slow-time rescaling:
// -i[H(q), rho] - rate * (coherences between the eigenspaces of H(q)).
Eigen::Matrix2cd liouvillian_apply(const grover::GroverInstance& inst,
                                   const Eigen::Matrix2cd& rho, double q,
                                   double rate);

// General dephasing generator rho -> -i[H, rho]
//   + 2 sum_ab rate(a,b) P_a rho P_b - sum_a rate(a,a) {P_a, rho}.
// Validates that the projectors are orthogonal idempotents resolving the
// identity and that the rate matrix is Hermitian positive semidefinite.
std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>
build_general_dephasing(const Eigen::MatrixXcd& hamiltonian,
                        const std::vector<Eigen::MatrixXcd>& projectors,
                        const Eigen::MatrixXcd& rate_matrix);

// Ground-state population <psi_g(q)| rho |psi_g(q)>; accepts the reduced
// 2x2 state or the full-space state (ground state embedded accordingly).
double fidelity(const grover::GroverInstance& inst, const DensityMatrix& rho,
                double q);

// Solves (1/T) drho/ds = L_{q(s)}(rho) on s in [0, 1] from the instantaneous
// ground state, in the reduced two-level space.
Trajectory integrate(const grover::GroverInstance& inst,
                     const schedules::Schedule& schedule,
                     const DephasingModel& model, const SimConfig& cfg);

// Same dynamics in the full 2^n space (oracle path; dimension-capped).
Trajectory integrate_full(const grover::GroverInstance& inst,
                          const schedules::Schedule& schedule,
                          const DephasingModel& model, const SimConfig& cfg,
                          std::uint64_t dimension_cap = 256);

// Time-frozen evolution at fixed q from an arbitrary initial state; used for
// fixed-Hamiltonian checks (coherence decay, purity monotonicity).
Trajectory integrate_fixed(const grover::GroverInstance& inst, double q,
                           double rate, const Eigen::Matrix2cd& rho0,
                           const SimConfig& cfg);

// 1 - fidelity at s = 1. Requires a complete trajectory.
double tunneling_final(const Trajectory& traj);

// 2 int_0^1 M(q(u)) q'(u)^2 du, the coefficient of 1/T in the tunneling.
double leading_order_tunneling(const schedules::Schedule& schedule,
                               std::uint64_t N, double gamma);

// CSV export, one row per sample; full-space runs export the restriction.
void write_trajectory(const Trajectory& traj, std::ostream& os);

}  // namespace adiagrover::lindblad
