#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace adiagrover::grover {

// Search instance over N = 2^n computational states with one marked state.
// The interpolating Hamiltonian H(q) = (1-q)(1 - |psi0><psi0|) + q(1 - |m><m|)
// (uniform initial state |psi0>) acts nontrivially only on the plane spanned
// by the marked state |m> and the orthonormalized uniform superposition
// |m_perp>; all reduced quantities below live in that ordered basis
// (|m>, |m_perp>).
struct GroverInstance {
  GroverInstance(int n_qubits, std::uint64_t marked_index = 0);

  int n_qubits;
  std::uint64_t dimension;  // N = 2^n_qubits
  std::uint64_t marked_index;

  double N() const { return static_cast<double>(dimension); }
  // Minimal spectral gap 1/sqrt(N), reached at q = 1/2.
  double g_min() const;
};

// Reduced 2x2 Hamiltonian in the (|m>, |m_perp>) basis. Requires q in [0, 1].
Eigen::Matrix2d hamiltonian_reduced(const GroverInstance& inst, double q);

// Spectral gap g(q) = sqrt((1-2q)^2 + 4q(1-q)/N).
double gap(const GroverInstance& inst, double q);

// Bloch decomposition H = (tr H/2) * 1 + r . sigma / 2 up to the sign
// convention fixing r_x >= 0; |r| = g(q), r_y = 0.
Eigen::Vector3d bloch_vector(const GroverInstance& inst, double q);

// Rotation rate of the Bloch axis, |d rhat / dq| = (2/g^2) sqrt(1/N - 1/N^2).
double angular_velocity(const GroverInstance& inst, double q);

// Instantaneous eigenvectors of hamiltonian_reduced, normalized with the
// first nonzero component real and >= 0. ground_state is continuous in q
// over [0, 1]; ground_state(1) = (1, 0) (the marked state).
Eigen::Vector2d ground_state(const GroverInstance& inst, double q);
Eigen::Vector2d excited_state(const GroverInstance& inst, double q);

struct SpectralSample {
  double q;
  double gap;
  Eigen::Vector3d bloch;
  Eigen::Vector2d ground_state;
  Eigen::Matrix2d ground_projector;
};

SpectralSample spectral_sample(const GroverInstance& inst, double q);

// Full N x N Hamiltonian in the computational basis. Guarded by a dimension
// cap (default 2^8) because the cost is O(N^2) memory.
Eigen::MatrixXd hamiltonian_full(const GroverInstance& inst, double q,
                                 std::uint64_t dimension_cap = 256);

// Embedding of a reduced basis vector into the computational basis:
// column 0 -> |m>, column 1 -> |m_perp>.
Eigen::MatrixXd subspace_embedding(const GroverInstance& inst,
                                   std::uint64_t dimension_cap = 256);

// <H^2> - <H>^2 for a reduced-basis state rho at interpolation point q.
// Equals g^2 p (1 - p) with p the ground-state population; at most g^2/4.
double energy_variance(const GroverInstance& inst,
                       const Eigen::Matrix2cd& rho, double q);

}  // namespace adiagrover::grover
