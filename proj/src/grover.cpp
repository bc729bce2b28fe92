#include "adiagrover/grover.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adiagrover::grover {

namespace {

void require_unit_interval(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("interpolation parameter q = " + std::to_string(q) +
                            " outside [0, 1]");
  }
}

// Angle of the traceless part of H(q) in the (x, z) Bloch plane, measured
// from +z: H - (tr H/2) 1 = (g/2)(sin(theta) sigma_x + cos(theta) sigma_z).
double bloch_angle(const GroverInstance& inst, double q) {
  const double N = inst.N();
  const double rx = -2.0 * (1.0 - q) * std::sqrt(N - 1.0) / N;
  const double rz = (N - 2.0 - 2.0 * q * (N - 1.0)) / N;
  return std::atan2(rx, rz);
}

}  // namespace

GroverInstance::GroverInstance(int n_qubits, std::uint64_t marked_index)
    : n_qubits(n_qubits), dimension(0), marked_index(marked_index) {
  if (n_qubits < 1 || n_qubits > 62) {
    throw std::domain_error("n_qubits must be in [1, 62], got " +
                            std::to_string(n_qubits));
  }
  dimension = std::uint64_t{1} << n_qubits;
  if (marked_index >= dimension) {
    throw std::domain_error("marked_index " + std::to_string(marked_index) +
                            " out of range for dimension " +
                            std::to_string(dimension));
  }
}

double GroverInstance::g_min() const { return 1.0 / std::sqrt(N()); }

Eigen::Matrix2d hamiltonian_reduced(const GroverInstance& inst, double q) {
  require_unit_interval(q);
  const double N = inst.N();
  Eigen::Matrix2d h;
  const double off = -(1.0 - q) * std::sqrt(N - 1.0) / N;
  h << (1.0 - q) * (N - 1.0) / N, off, off, q + (1.0 - q) / N;
  return h;
}

double gap(const GroverInstance& inst, double q) {
  require_unit_interval(q);
  const double N = inst.N();
  const double d = 1.0 - 2.0 * q;
  return std::sqrt(d * d + 4.0 * q * (1.0 - q) / N);
}

Eigen::Vector3d bloch_vector(const GroverInstance& inst, double q) {
  require_unit_interval(q);
  const double N = inst.N();
  return {2.0 * (1.0 - q) * std::sqrt(N - 1.0) / N, 0.0,
          (N - 2.0 - 2.0 * q * (N - 1.0)) / N};
}

double angular_velocity(const GroverInstance& inst, double q) {
  const double N = inst.N();
  const double g = gap(inst, q);
  return 2.0 * std::sqrt(1.0 / N - 1.0 / (N * N)) / (g * g);
}

Eigen::Vector2d ground_state(const GroverInstance& inst, double q) {
  const double half = 0.5 * bloch_angle(inst, q);
  return {-std::sin(half), std::cos(half)};
}

Eigen::Vector2d excited_state(const GroverInstance& inst, double q) {
  const double half = 0.5 * bloch_angle(inst, q);
  Eigen::Vector2d v{std::cos(half), std::sin(half)};
  if (v[0] < 0.0 || (v[0] == 0.0 && v[1] < 0.0)) v = -v;
  return v;
}

SpectralSample spectral_sample(const GroverInstance& inst, double q) {
  SpectralSample s;
  s.q = q;
  s.gap = gap(inst, q);
  s.bloch = bloch_vector(inst, q);
  s.ground_state = ground_state(inst, q);
  s.ground_projector = s.ground_state * s.ground_state.transpose();
  return s;
}

Eigen::MatrixXd hamiltonian_full(const GroverInstance& inst, double q,
                                 std::uint64_t dimension_cap) {
  require_unit_interval(q);
  if (inst.dimension > dimension_cap) {
    throw std::length_error("dimension " + std::to_string(inst.dimension) +
                            " exceeds the full-space cap " +
                            std::to_string(dimension_cap));
  }
  const auto n = static_cast<Eigen::Index>(inst.dimension);
  const double N = inst.N();
  Eigen::MatrixXd h = Eigen::MatrixXd::Constant(n, n, -(1.0 - q) / N);
  h.diagonal().array() += 1.0;
  const auto m = static_cast<Eigen::Index>(inst.marked_index);
  h(m, m) -= q;
  return h;
}

Eigen::MatrixXd subspace_embedding(const GroverInstance& inst,
                                   std::uint64_t dimension_cap) {
  if (inst.dimension > dimension_cap) {
    throw std::length_error("dimension " + std::to_string(inst.dimension) +
                            " exceeds the full-space cap " +
                            std::to_string(dimension_cap));
  }
  const auto n = static_cast<Eigen::Index>(inst.dimension);
  const double N = inst.N();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, 2);
  const auto m = static_cast<Eigen::Index>(inst.marked_index);
  v(m, 0) = 1.0;
  // |m_perp> = (|psi0> - <m|psi0>|m>) normalized; uniform |psi0>.
  const double c = 1.0 / std::sqrt(N - 1.0);
  for (Eigen::Index i = 0; i < n; ++i) v(i, 1) = c;
  v(m, 1) = 0.0;
  return v;
}

double energy_variance(const GroverInstance& inst, const Eigen::Matrix2cd& rho,
                       double q) {
  const Eigen::Matrix2d h = hamiltonian_reduced(inst, q);
  const double mean = (rho * h).trace().real();
  const double mean_sq = (rho * h * h).trace().real();
  return mean_sq - mean * mean;
}

}  // namespace adiagrover::grover
