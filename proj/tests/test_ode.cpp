#include <cmath>
#include <doctest.h>
#include <Eigen/Dense>
#include <vector>

#include "adiagrover/errors.hpp"
#include "adiagrover/ode.hpp"

using adiagrover::num::integrate_dop853;
using adiagrover::num::OdeOptions;

TEST_SUITE("ode") {

TEST_CASE("exponential growth to tight tolerance") {
  Eigen::VectorXd y(1);
  y << 1.0;
  OdeOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  const auto diag = integrate_dop853(
      [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) { dv = v; }, y,
      0.0, 1.0, {}, nullptr, nullptr, opt);
  CHECK(std::abs(y(0) - std::exp(1.0)) < 1e-11);
  CHECK(diag.n_steps > 0);
  CHECK(diag.n_rhs_evals >= 12 * diag.n_steps);
}

TEST_CASE("harmonic oscillator over many periods") {
  Eigen::VectorXd y(2);
  y << 1.0, 0.0;
  OdeOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-13;
  const double t1 = 10.0 * M_PI;
  integrate_dop853(
      [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
        dv.resize(2);
        dv(0) = v(1);
        dv(1) = -v(0);
      },
      y, 0.0, t1, {}, nullptr, nullptr, opt);
  CHECK(std::abs(y(0) - std::cos(t1)) < 1e-8);
  CHECK(std::abs(y(1) + std::sin(t1)) < 1e-8);
  CHECK(std::abs(y.squaredNorm() - 1.0) < 1e-9);
}

TEST_CASE("sample points are hit exactly, in order") {
  Eigen::VectorXd y(1);
  y << 0.0;
  std::vector<double> grid{0.125, 0.25, 0.70000000001, 1.0};
  std::vector<double> seen_s;
  std::vector<double> seen_y;
  integrate_dop853(
      [](double s, const Eigen::VectorXd&, Eigen::VectorXd& dy) {
        dy.resize(1);
        dy(0) = 2.0 * s;
      },
      y, 0.0, 1.0, grid, nullptr,
      [&](std::size_t index, double s, const Eigen::VectorXd& v) {
        CHECK(index == seen_s.size());
        seen_s.push_back(s);
        seen_y.push_back(v(0));
      });
  REQUIRE(seen_s.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(seen_s[i] == grid[i]);  // exact, no interpolation
    CHECK(std::abs(seen_y[i] - grid[i] * grid[i]) < 1e-12);
  }
}

TEST_CASE("post_step projection is applied after every accepted step") {
  Eigen::VectorXd y(2);
  y << 1.0, 0.0;
  int calls = 0;
  const auto diag = integrate_dop853(
      [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
        dv.resize(2);
        dv(0) = v(1);
        dv(1) = -v(0);
      },
      y, 0.0, 5.0, {},
      [&](double, Eigen::VectorXd& v) {
        v.normalize();
        ++calls;
      },
      nullptr);
  CHECK(calls == static_cast<int>(diag.n_steps));
  CHECK(std::abs(y.norm() - 1.0) < 1e-15);
}

TEST_CASE("max_step clamp is honored without hurting accuracy") {
  Eigen::VectorXd y(1);
  y << 1.0;
  OdeOptions opt;
  opt.max_step = 1e-2;
  const auto diag = integrate_dop853(
      [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
        dv = -3.0 * v;
      },
      y, 0.0, 2.0, {}, nullptr, nullptr, opt);
  CHECK(diag.n_steps >= 200);
  CHECK(std::abs(y(0) - std::exp(-6.0)) < 1e-10);
}

TEST_CASE("step budget exhaustion raises IntegrationError") {
  Eigen::VectorXd y(1);
  y << 1.0;
  OdeOptions opt;
  opt.max_steps = 4;
  opt.max_step = 1e-3;
  CHECK_THROWS_AS(
      integrate_dop853(
          [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
            dv = v;
          },
          y, 0.0, 1.0, {}, nullptr, nullptr, opt),
      adiagrover::IntegrationError);
}

}  // TEST_SUITE
