#include "adiagrover/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "adiagrover/errors.hpp"
#include "adiagrover/ode.hpp"
#include "adiagrover/quadrature.hpp"
#include "adiagrover/table.hpp"

namespace adiagrover::lindblad {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

Eigen::Map<Eigen::MatrixXcd> as_matrix(Eigen::VectorXd& y, Eigen::Index d) {
  return {reinterpret_cast<complexd*>(y.data()), d, d};
}

Eigen::Map<const Eigen::MatrixXcd> as_matrix(const Eigen::VectorXd& y,
                                             Eigen::Index d) {
  return {reinterpret_cast<const complexd*>(y.data()), d, d};
}

Eigen::VectorXd pack(const Eigen::MatrixXcd& m) {
  Eigen::VectorXd y(2 * m.size());
  as_matrix(y, m.rows()) = m;
  return y;
}

Eigen::Vector3d bloch_of(const Eigen::Matrix2cd& rho) {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
          rho(0, 0).real() - rho(1, 1).real()};
}

// Shared integration driver. make_sample must fill everything except
// (s, q); rhs is the already T-scaled slow-time derivative.
Trajectory run_integration(
    const num::OdeRhs& rhs, const Eigen::MatrixXcd& rho0, const SimConfig& cfg,
    const std::function<double(double)>& q_of_s,
    const std::function<void(double, const Eigen::MatrixXcd&,
                             TrajectorySample&)>& make_sample) {
  cfg.validate();
  const Eigen::Index d = rho0.rows();

  Trajectory traj;
  traj.T = cfg.T;
  traj.samples.reserve(cfg.n_samples);

  auto record = [&](double s, const Eigen::MatrixXcd& rho) {
    TrajectorySample sample;
    sample.s = s;
    sample.q = q_of_s(s);
    make_sample(sample.q, rho, sample);
    traj.diagnostics.min_eigenvalue =
        std::min(traj.diagnostics.min_eigenvalue, min_eigenvalue(sample.rho));
    traj.diagnostics.max_out_of_subspace = std::max(
        traj.diagnostics.max_out_of_subspace, sample.out_of_subspace);
    traj.samples.push_back(std::move(sample));
  };
  record(0.0, rho0);

  std::vector<double> sample_points(cfg.n_samples - 1);
  for (std::size_t i = 1; i < cfg.n_samples; ++i) {
    sample_points[i - 1] =
        static_cast<double>(i) / static_cast<double>(cfg.n_samples - 1);
  }
  sample_points.back() = 1.0;

  auto post_step = [&](double, Eigen::VectorXd& y) {
    auto rho = as_matrix(y, d);
    const double resid = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    traj.diagnostics.max_hermiticity_residual =
        std::max(traj.diagnostics.max_hermiticity_residual, resid);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double drift = std::abs(rho.trace().real() - 1.0) +
                         std::abs(rho.trace().imag());
    traj.diagnostics.max_trace_drift =
        std::max(traj.diagnostics.max_trace_drift, drift);
  };
  auto on_sample = [&](std::size_t, double s, const Eigen::VectorXd& y) {
    record(s, as_matrix(y, d));
  };

  Eigen::VectorXd y = pack(rho0);
  num::OdeOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  const num::OdeDiagnostics diag =
      num::integrate_dop853(rhs, y, 0.0, 1.0, sample_points, post_step,
                            on_sample, opt);
  traj.diagnostics.n_steps = diag.n_steps;
  traj.diagnostics.n_rejected = diag.n_rejected;
  traj.diagnostics.n_rhs_evals = diag.n_rhs_evals;
  return traj;
}

// Dephasing generator evaluated in place for the reduced space.
void reduced_generator(const grover::GroverInstance& inst, double q,
                       double rate, double T, const Eigen::Matrix2cd& rho,
                       Eigen::Matrix2cd& out) {
  const Eigen::Matrix2cd h =
      grover::hamiltonian_reduced(inst, q).cast<complexd>();
  out = -kI * (h * rho - rho * h);
  if (rate != 0.0) {
    const Eigen::Vector2d g = grover::ground_state(inst, q);
    const Eigen::Matrix2cd p0 = (g * g.transpose()).cast<complexd>();
    // Off-diagonal (coherence) part: P0 rho P1 + P1 rho P0.
    const Eigen::Matrix2cd rhop0 = rho * p0;
    out -= rate * (p0 * rho + rhop0 - 2.0 * p0 * rhop0);
  }
  out *= T;
}

void require_valid_state(const Eigen::MatrixXcd& rho, const char* who) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw std::invalid_argument(std::string(who) + ": state must be square");
  }
  if (hermiticity_residual(rho) > 1e-9 ||
      std::abs(rho.trace().real() - 1.0) > 1e-6) {
    throw std::invalid_argument(std::string(who) +
                                ": state is not a unit-trace Hermitian matrix");
  }
}

}  // namespace

double purity(const DensityMatrix& rho) {
  return (rho * rho).trace().real();
}

double hermiticity_residual(const DensityMatrix& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix& rho) {
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double trace_norm(const DensityMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return 0.5 * trace_norm(a - b);
}

DephasingModel DephasingModel::constant(double gamma) {
  if (!(gamma >= 0.0)) {
    throw std::domain_error("constant dephasing rate must be >= 0, got " +
                            std::to_string(gamma));
  }
  DephasingModel m;
  m.kind = Kind::Constant;
  m.gamma = gamma;
  return m;
}

DephasingModel DephasingModel::gap_tracking(double kappa) {
  if (!(kappa > 0.0)) {
    throw std::domain_error("gap-tracking kappa must be > 0, got " +
                            std::to_string(kappa));
  }
  DephasingModel m;
  m.kind = Kind::GapTracking;
  m.kappa = kappa;
  return m;
}

double DephasingModel::rate(const grover::GroverInstance& inst,
                            double q) const {
  switch (kind) {
    case Kind::Constant:
      return gamma;
    case Kind::GapTracking:
      return kappa * grover::gap(inst, q);
  }
  return 0.0;
}

void SimConfig::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("SimConfig: T must be > 0");
  if (!(rel_tol > 0.0 && rel_tol < 1e-2) ||
      !(abs_tol > 0.0 && abs_tol < 1e-2)) {
    throw std::invalid_argument("SimConfig: tolerances must lie in (0, 1e-2)");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("SimConfig: n_samples must be >= 2");
  }
}

Eigen::Matrix2cd liouvillian_apply(const grover::GroverInstance& inst,
                                   const Eigen::Matrix2cd& rho, double q,
                                   double rate) {
  if (!(rate >= 0.0)) throw std::domain_error("rate must be >= 0");
  Eigen::Matrix2cd out;
  reduced_generator(inst, q, rate, 1.0, rho, out);
  return out;
}

std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>
build_general_dephasing(const Eigen::MatrixXcd& hamiltonian,
                        const std::vector<Eigen::MatrixXcd>& projectors,
                        const Eigen::MatrixXcd& rate_matrix) {
  const Eigen::Index d = hamiltonian.rows();
  const auto n = static_cast<Eigen::Index>(projectors.size());
  if (hamiltonian.cols() != d) {
    throw std::invalid_argument("hamiltonian must be square");
  }
  if (n < 1 || rate_matrix.rows() != n || rate_matrix.cols() != n) {
    throw std::invalid_argument(
        "rate matrix shape must match the projector count");
  }
  constexpr double tol = 1e-10;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto& pa = projectors[a];
    if (pa.rows() != d || pa.cols() != d) {
      throw std::invalid_argument("projector dimension mismatch");
    }
    for (Eigen::Index b = 0; b < n; ++b) {
      const Eigen::MatrixXcd prod = pa * projectors[b];
      const Eigen::MatrixXcd expect =
          a == b ? pa : Eigen::MatrixXcd::Zero(d, d).eval();
      if ((prod - expect).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument(
            "projectors are not mutually orthogonal idempotents");
      }
    }
    sum += pa;
  }
  if ((sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("projectors do not resolve the identity");
  }
  if ((rate_matrix - rate_matrix.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("rate matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rate_matrix,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("rate matrix is not positive semidefinite");
  }

  return [hamiltonian, projectors, rate_matrix,
          n](const Eigen::MatrixXcd& rho) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd out = -kI * (hamiltonian * rho - rho * hamiltonian);
    for (Eigen::Index a = 0; a < n; ++a) {
      const Eigen::MatrixXcd pa_rho = projectors[a] * rho;
      for (Eigen::Index b = 0; b < n; ++b) {
        out += 2.0 * rate_matrix(a, b) * pa_rho * projectors[b];
      }
      out -= rate_matrix(a, a) * (pa_rho + rho * projectors[a]);
    }
    return out;
  };
}

double fidelity(const grover::GroverInstance& inst, const DensityMatrix& rho,
                double q) {
  const Eigen::Vector2d g = grover::ground_state(inst, q);
  if (rho.rows() == 2) {
    return (g.cast<complexd>().adjoint() * rho * g.cast<complexd>())(0, 0)
        .real();
  }
  if (rho.rows() != static_cast<Eigen::Index>(inst.dimension)) {
    throw std::invalid_argument("fidelity: state dimension matches neither "
                                "the reduced nor the full space");
  }
  const Eigen::MatrixXd emb =
      grover::subspace_embedding(inst, inst.dimension);
  const Eigen::VectorXcd psi = (emb * g).cast<complexd>();
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

Trajectory integrate(const grover::GroverInstance& inst,
                     const schedules::Schedule& schedule,
                     const DephasingModel& model, const SimConfig& cfg) {
  Eigen::Matrix2cd work_rho, work_out;
  auto rhs = [&](double s, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const double q = schedule.eval(s);
    work_rho = as_matrix(y, 2);
    reduced_generator(inst, q, model.rate(inst, q), cfg.T, work_rho, work_out);
    as_matrix(dy, 2) = work_out;
  };

  const Eigen::Vector2d g0 = grover::ground_state(inst, schedule.eval(0.0));
  const Eigen::Matrix2cd rho0 =
      (g0 * g0.transpose()).cast<complexd>();

  return run_integration(
      rhs, rho0, cfg, [&](double s) { return schedule.eval(s); },
      [&](double q, const Eigen::MatrixXcd& rho, TrajectorySample& out) {
        out.rho = rho;
        out.rho_reduced = rho;
        out.fidelity = fidelity(inst, rho, q);
        out.bloch = bloch_of(out.rho_reduced);
        out.out_of_subspace = 0.0;
      });
}

Trajectory integrate_full(const grover::GroverInstance& inst,
                          const schedules::Schedule& schedule,
                          const DephasingModel& model, const SimConfig& cfg,
                          std::uint64_t dimension_cap) {
  if (inst.dimension > dimension_cap) {
    throw std::length_error("dimension " + std::to_string(inst.dimension) +
                            " exceeds the full-space cap " +
                            std::to_string(dimension_cap));
  }
  const auto d = static_cast<Eigen::Index>(inst.dimension);
  const Eigen::MatrixXcd emb =
      grover::subspace_embedding(inst, dimension_cap).cast<complexd>();

  // Eigenvalue clustering threshold: far below the in-subspace gap except
  // within ~1e-6 of the endpoints, where the affected coherences vanish.
  constexpr double kClusterTol = 1e-6;
  Eigen::MatrixXcd rho_eig(d, d), gen_eig(d, d), vc(d, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  std::vector<int> cluster(static_cast<std::size_t>(d));

  auto rhs = [&](double s, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const double q = schedule.eval(s);
    const double rate = model.rate(inst, q);
    es.compute(grover::hamiltonian_full(inst, q, dimension_cap));
    if (es.info() != Eigen::Success) {
      throw SpectralError("full-space eigendecomposition failed at s = " +
                          std::to_string(s));
    }
    vc = es.eigenvectors().cast<complexd>();
    const Eigen::VectorXd& e = es.eigenvalues();
    cluster[0] = 0;
    for (Eigen::Index i = 1; i < d; ++i) {
      cluster[static_cast<std::size_t>(i)] =
          cluster[static_cast<std::size_t>(i - 1)] +
          (e[i] - e[i - 1] > kClusterTol ? 1 : 0);
    }
    rho_eig.noalias() = vc.adjoint() * as_matrix(y, d) * vc;
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        complexd val = -kI * (e[i] - e[j]) * rho_eig(i, j);
        if (cluster[static_cast<std::size_t>(i)] !=
            cluster[static_cast<std::size_t>(j)]) {
          val -= rate * rho_eig(i, j);
        }
        gen_eig(i, j) = val;
      }
    }
    as_matrix(dy, d).noalias() = cfg.T * (vc * gen_eig * vc.adjoint());
  };

  const Eigen::Vector2d g0 = grover::ground_state(inst, schedule.eval(0.0));
  const Eigen::VectorXcd psi0 = emb * g0.cast<complexd>();
  const Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();

  return run_integration(
      rhs, rho0, cfg, [&](double s) { return schedule.eval(s); },
      [&](double q, const Eigen::MatrixXcd& rho, TrajectorySample& out) {
        out.rho = rho;
        out.rho_reduced = emb.adjoint() * rho * emb;
        out.fidelity = fidelity(inst, rho, q);
        out.bloch = bloch_of(out.rho_reduced);
        out.out_of_subspace =
            rho.trace().real() - out.rho_reduced.trace().real();
      });
}

Trajectory integrate_fixed(const grover::GroverInstance& inst, double q,
                           double rate, const Eigen::Matrix2cd& rho0,
                           const SimConfig& cfg) {
  if (!(rate >= 0.0)) throw std::domain_error("rate must be >= 0");
  require_valid_state(rho0, "integrate_fixed");
  Eigen::Matrix2cd work_rho, work_out;
  auto rhs = [&](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    work_rho = as_matrix(y, 2);
    reduced_generator(inst, q, rate, cfg.T, work_rho, work_out);
    as_matrix(dy, 2) = work_out;
  };
  return run_integration(
      rhs, rho0, cfg, [q](double) { return q; },
      [&](double qq, const Eigen::MatrixXcd& rho, TrajectorySample& out) {
        out.rho = rho;
        out.rho_reduced = rho;
        out.fidelity = fidelity(inst, rho, qq);
        out.bloch = bloch_of(out.rho_reduced);
        out.out_of_subspace = 0.0;
      });
}

double tunneling_final(const Trajectory& traj) {
  if (!traj.complete()) {
    throw std::invalid_argument(
        "tunneling_final: trajectory does not reach s = 1");
  }
  return 1.0 - traj.samples.back().fidelity;
}

double leading_order_tunneling(const schedules::Schedule& schedule,
                               std::uint64_t N, double gamma) {
  num::QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  return 2.0 * num::integrate_split(
                   [&](double s) {
                     const double dq = schedule.deriv(s);
                     return schedules::mass(N, gamma, schedule.eval(s)) * dq *
                            dq;
                   },
                   0.0, 1.0, {0.5}, opt);
}

void write_trajectory(const Trajectory& traj, std::ostream& os) {
  io::Table table({"s", "q", "fidelity", "rho_00_re", "rho_01_re",
                   "rho_01_im", "rho_11_re", "bloch_x", "bloch_y", "bloch_z"});
  for (const auto& sample : traj.samples) {
    const Eigen::Matrix2cd& r = sample.rho_reduced;
    table.add_row({sample.s, sample.q, sample.fidelity, r(0, 0).real(),
                   r(0, 1).real(), r(0, 1).imag(), r(1, 1).real(),
                   sample.bloch[0], sample.bloch[1], sample.bloch[2]});
  }
  table.write_csv(os);
}

}  // namespace adiagrover::lindblad
