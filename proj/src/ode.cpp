#include "adiagrover/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "adiagrover/detail/dop853_coefficients.hpp"
#include "adiagrover/errors.hpp"

namespace adiagrover::num {

namespace {

double rms(const Eigen::VectorXd& v) {
  if (v.size() == 0) return 0.0;
  return std::sqrt(v.squaredNorm() / static_cast<double>(v.size()));
}

// Blended 5th/3rd-order error norm of the trial step, scaled so that values
// below 1 are acceptable.
double error_norm(const Eigen::MatrixXd& k, double h,
                  const Eigen::VectorXd& scale) {
  Eigen::VectorXd err5 = Eigen::VectorXd::Zero(scale.size());
  Eigen::VectorXd err3 = Eigen::VectorXd::Zero(scale.size());
  for (std::size_t j = 0; j < 13; ++j) {
    if (dop853::kE5[j] != 0.0) err5 += dop853::kE5[j] * k.col(j);
    if (dop853::kE3[j] != 0.0) err3 += dop853::kE3[j] * k.col(j);
  }
  err5.array() /= scale.array();
  err3.array() /= scale.array();
  const double e5 = err5.squaredNorm();
  const double e3 = err3.squaredNorm();
  if (e5 == 0.0 && e3 == 0.0) return 0.0;
  return std::abs(h) * e5 /
         std::sqrt((e5 + 0.01 * e3) * static_cast<double>(scale.size()));
}

double initial_step(const OdeRhs& f, double s0, const Eigen::VectorXd& y0,
                    const Eigen::VectorXd& f0, double span, double rel_tol,
                    double abs_tol, OdeDiagnostics& diag) {
  Eigen::VectorXd scale =
      (abs_tol + rel_tol * y0.array().abs()).matrix();
  Eigen::VectorXd tmp = y0.array() / scale.array();
  const double d0 = rms(tmp);
  tmp = f0.array() / scale.array();
  const double d1 = rms(tmp);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, 0.1 * span);

  Eigen::VectorXd y1 = y0 + h0 * f0;
  Eigen::VectorXd f1(y0.size());
  f(s0 + h0, y1, f1);
  ++diag.n_rhs_evals;
  tmp = (f1 - f0).array() / scale.array();
  const double d2 = rms(tmp) / h0;

  double h1;
  if (d1 <= 1e-15 && d2 <= 1e-15) {
    h1 = std::max(1e-6, h0 * 1e-3);
  } else {
    h1 = std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
  }
  return std::min({100.0 * h0, h1, span});
}

}  // namespace

OdeDiagnostics integrate_dop853(
    const OdeRhs& f, Eigen::VectorXd& y, double s0, double s1,
    const std::vector<double>& sample_points,
    const std::function<void(double, Eigen::VectorXd&)>& post_step,
    const std::function<void(std::size_t, double, const Eigen::VectorXd&)>&
        on_sample,
    const OdeOptions& opt) {
  if (!(s1 > s0)) throw std::invalid_argument("integrate_dop853: s1 <= s0");
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0)) {
    throw std::invalid_argument("integrate_dop853: tolerances must be > 0");
  }
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    const double p = sample_points[i];
    if (!(p > s0 && p <= s1) ||
        (i > 0 && !(p > sample_points[i - 1]))) {
      throw std::invalid_argument(
          "integrate_dop853: sample points must increase strictly within "
          "(s0, s1]");
    }
  }

  const auto n = y.size();
  OdeDiagnostics diag;
  Eigen::MatrixXd k(n, 13);
  Eigen::VectorXd y_stage(n), y_new(n), f_stage(n), scale(n);

  double s = s0;
  f(s, y, f_stage);
  ++diag.n_rhs_evals;
  k.col(0) = f_stage;

  const double span = s1 - s0;
  const double max_step = opt.max_step > 0.0 ? opt.max_step : span;
  double h = opt.initial_step > 0.0
                 ? opt.initial_step
                 : initial_step(f, s0, y, k.col(0), span, opt.rel_tol,
                                opt.abs_tol, diag);
  h = std::min(h, max_step);

  // PI controller constants for the 8(5,3) pair.
  constexpr double kBeta = 0.04;
  constexpr double kExpo = 1.0 / 8.0 - kBeta * 0.2;
  constexpr double kSafe = 0.9;
  constexpr double kMaxGrow = 6.0;
  constexpr double kMaxShrink = 3.0;
  double fac_old = 1e-4;
  bool last_rejected = false;

  std::size_t next_sample = 0;
  while (s < s1) {
    if (diag.n_steps + diag.n_rejected >= opt.max_steps) {
      throw IntegrationError(
          "step budget exhausted after " + std::to_string(diag.n_steps) +
              " accepted steps at s = " + std::to_string(s),
          s);
    }
    const double min_step =
        16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(s), 1.0);
    if (h < min_step) {
      throw IntegrationError(
          "step size underflow at s = " + std::to_string(s), s);
    }

    // Land exactly on the next sample point (and on s1).
    const double target =
        next_sample < sample_points.size() ? sample_points[next_sample] : s1;
    double h_try = h;
    bool clamped = false;
    if (s + h_try >= target) {
      h_try = target - s;
      clamped = true;
    }
    const double s_new = clamped ? target : s + h_try;

    for (std::size_t i = 1; i < dop853::kStages; ++i) {
      y_stage = y;
      for (std::size_t j = 0; j < i; ++j) {
        if (dop853::kA[i][j] != 0.0) {
          y_stage += (h_try * dop853::kA[i][j]) * k.col(j);
        }
      }
      f(s + dop853::kC[i] * h_try, y_stage, f_stage);
      ++diag.n_rhs_evals;
      k.col(i) = f_stage;
    }
    y_new = y;
    for (std::size_t j = 0; j < dop853::kStages; ++j) {
      if (dop853::kB[j] != 0.0) y_new += (h_try * dop853::kB[j]) * k.col(j);
    }
    f(s_new, y_new, f_stage);
    ++diag.n_rhs_evals;
    k.col(12) = f_stage;

    scale = (opt.abs_tol +
             opt.rel_tol * y.array().abs().max(y_new.array().abs()))
                .matrix();
    const double err = error_norm(k, h_try, scale);

    if (err <= 1.0) {
      ++diag.n_steps;
      s = s_new;
      y = y_new;
      k.col(0) = k.col(12);
      if (post_step) post_step(s, y);

      if (next_sample < sample_points.size() &&
          s == sample_points[next_sample]) {
        if (on_sample) on_sample(next_sample, s, y);
        ++next_sample;
      }

      const double fac11 = std::pow(std::max(err, 1e-16), kExpo);
      double fac = fac11 / std::pow(fac_old, kBeta);
      fac = std::max(1.0 / kMaxGrow, std::min(kMaxShrink, fac / kSafe));
      double h_ctrl = h_try / fac;
      if (last_rejected) h_ctrl = std::min(h_ctrl, h_try);
      last_rejected = false;
      fac_old = std::max(err, 1e-4);
      // A step shortened to hit a sample point says nothing about the step
      // the accuracy would allow, so never let it reduce the working size.
      h = std::min(clamped ? std::max(h, h_ctrl) : h_ctrl, max_step);
    } else {
      ++diag.n_rejected;
      last_rejected = true;
      const double fac11 = std::pow(err, kExpo);
      h = h_try / std::min(kMaxShrink, fac11 / kSafe);
    }
  }
  return diag;
}

}  // namespace adiagrover::num
