#include "adiagrover/schedules.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "adiagrover/errors.hpp"
#include "adiagrover/quadrature.hpp"
#include "adiagrover/table.hpp"

namespace adiagrover::schedules {

namespace {

void require_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("schedule parameter s = " + std::to_string(s) +
                            " outside [0, 1]");
  }
}

void require_params(std::uint64_t N, double gamma) {
  if (N < 2) throw std::domain_error("N must be >= 2");
  if (!(gamma > 0.0)) {
    throw std::domain_error("gamma must be > 0, got " + std::to_string(gamma));
  }
}

double gap_squared(double N, double q) {
  const double d = 1.0 - 2.0 * q;
  return d * d + 4.0 * q * (1.0 - q) / N;
}

// Opening angle Theta0 of the optimal schedule: theta(s) = (2s-1) Theta0.
double theta_max(double N, double gamma) {
  return std::asin(gamma * std::sqrt(N - 1.0) /
                   std::sqrt(1.0 + N * gamma * gamma));
}

class LinearImpl final : public ScheduleImpl {
 public:
  double eval(double s) const override { return s; }
  double deriv(double) const override { return 1.0; }
};

class RolandCerfImpl final : public ScheduleImpl {
 public:
  explicit RolandCerfImpl(double N)
      : sqrt_nm1_(std::sqrt(N - 1.0)), phi_(std::atan(sqrt_nm1_)) {}

  double eval(double s) const override {
    // tan(atan(x)) can overshoot x by an ulp, pushing the endpoints a hair
    // outside [0, 1]; the range is exact analytically.
    return std::clamp(
        0.5 + std::tan((2.0 * s - 1.0) * phi_) / (2.0 * sqrt_nm1_), 0.0, 1.0);
  }
  double deriv(double s) const override {
    const double t = std::tan((2.0 * s - 1.0) * phi_);
    return phi_ * (1.0 + t * t) / sqrt_nm1_;
  }

 private:
  double sqrt_nm1_;
  double phi_;
};

class OptimalClosedImpl final : public ScheduleImpl {
 public:
  OptimalClosedImpl(double N, double gamma)
      : A_(N * gamma * gamma),
        nm1_(N - 1.0),
        theta0_(theta_max(N, gamma)) {}

  double eval(double s) const override {
    const double theta = (2.0 * s - 1.0) * theta0_;
    const double sin_t = std::sin(theta);
    const double cos_t = std::cos(theta);
    // Well-conditioned form of the denominator bracket; analytically it
    // stays >= gamma^2 on [-Theta0, Theta0], so the clamp only guards
    // rounding at the endpoints.
    const double bracket =
        std::max(A_ * cos_t * cos_t - sin_t * sin_t, 1e-300);
    const double u =
        0.5 * sin_t * std::sqrt((1.0 + A_) / (nm1_ * bracket));
    return std::clamp(0.5 + u, 0.0, 1.0);
  }

  double deriv(double s) const override {
    const double theta = (2.0 * s - 1.0) * theta0_;
    const double sin_t = std::sin(theta);
    const double cos_t = std::cos(theta);
    const double bracket =
        std::max(A_ * cos_t * cos_t - sin_t * sin_t, 1e-300);
    return std::sqrt(1.0 + A_) * A_ * cos_t * theta0_ /
           (std::sqrt(nm1_) * bracket * std::sqrt(bracket));
  }

 private:
  double A_;  // N gamma^2
  double nm1_;
  double theta0_;
};

// Numeric construction: nodes (s_i, q_i) from cumulative quadrature of
// sqrt(M) over a graded q-grid on [0, 1/2], mirrored to [1/2, 1];
// evaluation by monotone piecewise-cubic Hermite interpolation with the
// exact slopes tau/sqrt(M(q_i)).
class OptimalNumericImpl final : public ScheduleImpl {
 public:
  OptimalNumericImpl(std::uint64_t N, double gamma) {
    build(static_cast<double>(N), gamma);
  }

  double eval(double s) const override {
    const auto [i, t, h] = locate(s);
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    const double q = h00 * q_[i] + h * h10 * d_[i] + h01 * q_[i + 1] +
                     h * h11 * d_[i + 1];
    return std::clamp(q, 0.0, 1.0);
  }

  double deriv(double s) const override {
    const auto [i, t, h] = locate(s);
    const double g00 = 6.0 * t * (t - 1.0);
    const double g10 = (3.0 * t - 1.0) * (t - 1.0);
    const double g01 = -g00;
    const double g11 = t * (3.0 * t - 2.0);
    return g00 * q_[i] / h + g10 * d_[i] + g01 * q_[i + 1] / h +
           g11 * d_[i + 1];
  }

 private:
  struct Local {
    std::size_t i;
    double t;
    double h;
  };

  Local locate(double s) const {
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    std::size_t i = it == s_.begin()
                        ? 0
                        : static_cast<std::size_t>(it - s_.begin()) - 1;
    i = std::min(i, s_.size() - 2);
    const double h = s_[i + 1] - s_[i];
    return {i, (s - s_[i]) / h, h};
  }

  void build(double N, double gamma) {
    // Panel width proportional to the distance from the mass peak at
    // q = 1/2, floored at the peak's own width scale.
    const double peak_width = 0.5 / std::sqrt(N - 1.0);
    const double h_max = 1.0 / 256.0;
    constexpr double kRefine = 96.0;

    std::vector<double> q_left{0.0};
    while (true) {
      const double q = q_left.back();
      const double dist = 0.5 - q;
      double h = std::min(h_max, std::max(peak_width, dist) / kRefine);
      if (dist <= 1.5 * h) {
        q_left.push_back(0.5);
        break;
      }
      q_left.push_back(q + h);
    }
    const std::size_t m = q_left.size() - 1;
    if (m < 8 || m > 2'000'000) {
      throw NumericalError("optimal schedule grid construction failed: " +
                           std::to_string(m) + " panels");
    }

    // Cumulative integral of sqrt(M) panel by panel (15-point
    // Gauss-Legendre; panels are smooth by construction).
    using gauss = boost::math::quadrature::gauss<double, 15>;
    std::vector<double> cum(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double a = q_left[i], b = q_left[i + 1];
      cum[i + 1] =
          cum[i] + gauss::integrate(
                       [&](double q) { return std::sqrt(mass_raw(N, gamma, q)); },
                       a, b);
    }
    const double tau_half = cum[m];
    if (!(tau_half > 0.0) || !std::isfinite(tau_half)) {
      throw NumericalError("optimal schedule grid integration failed");
    }
    const double tau = 2.0 * tau_half;

    // Mirror onto [1/2, 1]; the mass is symmetric about q = 1/2.
    const std::size_t n_nodes = 2 * m + 1;
    s_.resize(n_nodes);
    q_.resize(n_nodes);
    d_.resize(n_nodes);
    for (std::size_t i = 0; i <= m; ++i) {
      s_[i] = cum[i] / tau;
      q_[i] = q_left[i];
      d_[i] = tau / std::sqrt(mass_raw(N, gamma, q_left[i]));
      const std::size_t j = n_nodes - 1 - i;
      s_[j] = 1.0 - s_[i];
      q_[j] = 1.0 - q_left[i];
      d_[j] = d_[i];
    }
    s_.front() = 0.0;
    s_.back() = 1.0;
    q_.front() = 0.0;
    q_.back() = 1.0;

    // Fritsch-Carlson safeguard; with exact ODE slopes on this grid it
    // should never bind, but it guarantees monotonicity regardless.
    for (std::size_t i = 0; i + 1 < n_nodes; ++i) {
      const double delta = (q_[i + 1] - q_[i]) / (s_[i + 1] - s_[i]);
      if (!(delta > 0.0)) {
        throw NumericalError("optimal schedule nodes not increasing");
      }
      d_[i] = std::min(d_[i], 3.0 * delta);
      d_[i + 1] = std::min(d_[i + 1], 3.0 * delta);
    }
  }

  static double mass_raw(double N, double gamma, double q) {
    const double g2 = gap_squared(N, q);
    return gamma * (N - 1.0) / (N * N * g2 * g2 * (g2 + gamma * gamma));
  }

  std::vector<double> s_, q_, d_;
};

}  // namespace

Schedule::Schedule(ScheduleKind kind, std::uint64_t N, double gamma,
                   std::shared_ptr<const ScheduleImpl> impl)
    : kind_(kind), N_(N), gamma_(gamma), impl_(std::move(impl)) {
  if (!impl_) throw std::invalid_argument("Schedule: null implementation");
}

double Schedule::eval(double s) const {
  require_s(s);
  return impl_->eval(s);
}

double Schedule::deriv(double s) const {
  require_s(s);
  return impl_->deriv(s);
}

double mass(std::uint64_t N, double gamma, double q) {
  require_params(N, gamma);
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("mass: q outside [0, 1]");
  }
  const double Nd = static_cast<double>(N);
  const double g2 = gap_squared(Nd, q);
  return gamma * (Nd - 1.0) / (Nd * Nd * g2 * g2 * (g2 + gamma * gamma));
}

TauConstant tau(std::uint64_t N, double gamma) {
  require_params(N, gamma);
  const double value = num::integrate_split(
      [N, gamma](double q) { return std::sqrt(mass(N, gamma, q)); }, 0.0, 1.0,
      {0.5});
  return {value, TauConstant::Method::Quadrature};
}

TauConstant tau_closed_form(std::uint64_t N, double gamma) {
  require_params(N, gamma);
  return {theta_max(static_cast<double>(N), gamma) / std::sqrt(gamma),
          TauConstant::Method::ClosedForm};
}

Schedule linear_schedule() {
  return Schedule(ScheduleKind::Linear, 0, 0.0,
                  std::make_shared<LinearImpl>());
}

double landau_zener_probability(std::uint64_t N, double T) {
  if (N < 2) throw std::domain_error("N must be >= 2");
  if (!(T > 0.0)) throw std::domain_error("T must be > 0");
  const double g_min_sq = 1.0 / static_cast<double>(N);
  return std::exp(-0.5 * M_PI * g_min_sq * T);
}

Schedule roland_cerf_schedule(std::uint64_t N) {
  if (N < 2) throw std::domain_error("N must be >= 2");
  return Schedule(ScheduleKind::RolandCerf, N, 0.0,
                  std::make_shared<RolandCerfImpl>(static_cast<double>(N)));
}

double rc_runtime(std::uint64_t N, double c) {
  if (N < 2) throw std::domain_error("N must be >= 2");
  if (!(c > 0.0)) throw std::domain_error("adiabaticity c must be > 0");
  const double Nd = static_cast<double>(N);
  const double r = std::sqrt(Nd - 1.0);
  return Nd * std::atan(r) / (c * r);
}

Schedule optimal_schedule_closed(std::uint64_t N, double gamma) {
  require_params(N, gamma);
  return Schedule(
      ScheduleKind::OptimalClosed, N, gamma,
      std::make_shared<OptimalClosedImpl>(static_cast<double>(N), gamma));
}

Schedule optimal_schedule_numeric(std::uint64_t N, double gamma) {
  require_params(N, gamma);
  return Schedule(ScheduleKind::OptimalNumeric, N, gamma,
                  std::make_shared<OptimalNumericImpl>(N, gamma));
}

void write_table(const Schedule& schedule, std::ostream& os,
                 std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  io::Table table({"s", "q", "dq_ds"});
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double s =
        static_cast<double>(i) / static_cast<double>(n_samples - 1);
    table.add_row({s, schedule.eval(s), schedule.deriv(s)});
  }
  table.write_csv(os);
}

}  // namespace adiagrover::schedules
