#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace adiagrover::num {

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 selects the step automatically
  double max_step = 0.0;      // 0 means unbounded
  std::uint64_t max_steps = 100'000'000;
};

struct OdeDiagnostics {
  std::uint64_t n_steps = 0;     // accepted steps
  std::uint64_t n_rejected = 0;  // rejected trial steps
  std::uint64_t n_rhs_evals = 0;
};

using OdeRhs =
    std::function<void(double s, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;

// Integrates y' = f(s, y) from s0 to s1 (> s0) with the Dormand-Prince
// 8(5,3) embedded pair and proportional-integral step-size control.
//
// sample_points must be strictly increasing, inside (s0, s1]; accepted steps
// are clamped so the solution lands on each point exactly (no interpolation),
// and on_sample(index, s, y) is invoked there. post_step, if set, may project
// the state after every accepted step (e.g. re-symmetrization); the
// first-same-as-last derivative is reused afterwards, which is harmless for
// projections of roundoff size.
//
// Throws IntegrationError on step-size underflow or step-budget exhaustion.
OdeDiagnostics integrate_dop853(
    const OdeRhs& f, Eigen::VectorXd& y, double s0, double s1,
    const std::vector<double>& sample_points,
    const std::function<void(double s, Eigen::VectorXd& y)>& post_step,
    const std::function<void(std::size_t index, double s,
                             const Eigen::VectorXd& y)>& on_sample,
    const OdeOptions& opt = {});

}  // namespace adiagrover::num
