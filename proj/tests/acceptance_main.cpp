// Acceptance gate: every release-blocking claim checked at its stated
// tolerance, one pass/fail line per criterion. Run all or -c <k>.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "adiagrover/bounds.hpp"
#include "adiagrover/experiments.hpp"
#include "adiagrover/fit.hpp"
#include "adiagrover/grover.hpp"
#include "adiagrover/lindblad.hpp"
#include "adiagrover/quadrature.hpp"
#include "adiagrover/schedules.hpp"

namespace {

using namespace adiagrover;
namespace ex = adiagrover::experiments;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

void merge_diag(lindblad::TrajectoryDiagnostics& into,
                const lindblad::TrajectoryDiagnostics& from) {
  into.n_steps += from.n_steps;
  into.n_rejected += from.n_rejected;
  into.n_rhs_evals += from.n_rhs_evals;
  into.max_trace_drift = std::max(into.max_trace_drift, from.max_trace_drift);
  into.max_hermiticity_residual =
      std::max(into.max_hermiticity_residual, from.max_hermiticity_residual);
  into.min_eigenvalue = std::min(into.min_eigenvalue, from.min_eigenvalue);
  into.max_out_of_subspace =
      std::max(into.max_out_of_subspace, from.max_out_of_subspace);
}

// Heavy artifacts shared between criteria (11 and 12 audit the simulations
// performed for 3-7), computed once on demand.
class Context {
 public:
  struct Tunneling {
    double two_tau_sq = 0.0;
    std::vector<double> T_values;
    std::vector<double> deviation;  // |T*tun - 2 tau^2| / (2 tau^2)
    lindblad::TrajectoryDiagnostics worst;
  };

  struct FullVsReduced {
    double max_distance = 0.0;
    double max_out_of_subspace = 0.0;
    lindblad::TrajectoryDiagnostics worst;
  };

  struct Fig1b {
    double f_linear = 0.0;
    double f_rc = 0.0;
    double f_optimal = 0.0;
    lindblad::TrajectoryDiagnostics worst;
  };

  struct Scaling {
    std::vector<int> n_values;
    std::vector<ex::MinTimeResult> constant;
    std::vector<ex::MinTimeResult> tracking;
    std::vector<ex::MinTimeResult> unitary;
    num::LinearFit fit;  // log2 T_constant vs n
    lindblad::TrajectoryDiagnostics worst;
  };

  const Tunneling& tunneling() {
    if (!tunneling_) {
      Tunneling out;
      const int n = 6;
      const grover::GroverInstance inst(n);
      const double gamma = inst.g_min();
      const double tau =
          schedules::tau_closed_form(inst.dimension, gamma).value;
      out.two_tau_sq = 2.0 * tau * tau;
      const auto sched =
          schedules::optimal_schedule_closed(inst.dimension, gamma);
      const auto model = lindblad::DephasingModel::constant(gamma);
      for (double mult : {1e2, 1e3, 1e4}) {
        lindblad::SimConfig cfg;
        cfg.T = mult * tau;
        cfg.rel_tol = 1e-11;
        cfg.abs_tol = 1e-14;
        cfg.n_samples = 9;
        const auto traj = lindblad::integrate(inst, sched, model, cfg);
        const double tun = lindblad::tunneling_final(traj);
        out.T_values.push_back(cfg.T);
        out.deviation.push_back(
            std::abs(cfg.T * tun - out.two_tau_sq) / out.two_tau_sq);
        merge_diag(out.worst, traj.diagnostics);
      }
      tunneling_ = std::move(out);
    }
    return *tunneling_;
  }

  const FullVsReduced& full_vs_reduced() {
    if (!full_vs_reduced_) {
      FullVsReduced out;
      for (int n : {2, 3, 4, 5}) {
        const grover::GroverInstance inst(n);
        const double gamma = inst.g_min();
        const auto sched =
            schedules::optimal_schedule_closed(inst.dimension, gamma);
        const auto model = lindblad::DephasingModel::constant(gamma);
        lindblad::SimConfig cfg;
        cfg.T = 40.0;
        cfg.n_samples = 513;
        const auto reduced = lindblad::integrate(inst, sched, model, cfg);
        const auto full = lindblad::integrate_full(inst, sched, model, cfg);
        for (std::size_t i = 0; i < reduced.samples.size(); ++i) {
          out.max_distance = std::max(
              out.max_distance,
              lindblad::trace_distance(reduced.samples[i].rho_reduced,
                                       full.samples[i].rho_reduced));
          out.max_out_of_subspace = std::max(
              out.max_out_of_subspace, full.samples[i].out_of_subspace);
        }
        merge_diag(out.worst, reduced.diagnostics);
        merge_diag(out.worst, full.diagnostics);
      }
      full_vs_reduced_ = std::move(out);
    }
    return *full_vs_reduced_;
  }

  const Fig1b& fig1b() {
    if (!fig1b_) {
      Fig1b out;
      const grover::GroverInstance inst(10);
      const double gamma = inst.g_min();
      // eps_adiab = 1/2. Near c = 0.25 a coherent recovery happens to favor
      // RC by ~5e-4; away from that interference window the dephasing-optimal
      // schedule leads robustly, as it must at leading order in 1/T.
      const double T = schedules::rc_runtime(inst.dimension, 0.5);
      const auto model = lindblad::DephasingModel::constant(gamma);
      lindblad::SimConfig cfg;
      cfg.T = T;
      cfg.n_samples = 65;
      const auto run = [&](const schedules::Schedule& sched) {
        const auto traj = lindblad::integrate(inst, sched, model, cfg);
        merge_diag(out.worst, traj.diagnostics);
        return traj.samples.back().fidelity;
      };
      out.f_linear = run(schedules::linear_schedule());
      out.f_rc = run(schedules::roland_cerf_schedule(inst.dimension));
      out.f_optimal =
          run(schedules::optimal_schedule_closed(inst.dimension, gamma));
      fig1b_ = std::move(out);
    }
    return *fig1b_;
  }

  const Scaling& scaling() {
    if (!scaling_) {
      Scaling out;
      for (int n = 4; n <= 10; ++n) out.n_values.push_back(n);
      const double kappa_max = bounds::gamma_max(1.0, std::exp(-1.0)).value;
      const std::size_t count = out.n_values.size();
      std::vector<std::optional<ex::MinTimeResult>> results(3 * count);
      ex::parallel_for(3 * count, [&](std::size_t task) {
        const int n = out.n_values[task % count];
        const grover::GroverInstance inst(n);
        ex::MinTimeQuery query;
        query.n_qubits = n;
        query.target_fidelity = 0.9;
        query.sim.n_samples = 129;
        switch (task / count) {
          case 0:
            query.protocol = ex::Protocol::DephasingConstant;
            query.gamma = inst.g_min();
            break;
          case 1:
            query.protocol = ex::Protocol::DephasingGapTracking;
            query.kappa = kappa_max;
            break;
          default:
            query.protocol = ex::Protocol::UnitaryRC;
            break;
        }
        results[task] = ex::find_min_time(query);
      });
      std::vector<double> n_axis;
      std::vector<double> log2_t;
      for (std::size_t i = 0; i < count; ++i) {
        out.constant.push_back(std::move(*results[i]));
        out.tracking.push_back(std::move(*results[count + i]));
        out.unitary.push_back(std::move(*results[2 * count + i]));
        n_axis.push_back(static_cast<double>(out.n_values[i]));
        log2_t.push_back(std::log2(out.constant.back().t_min));
      }
      out.fit = num::fit_line(n_axis, log2_t);
      for (const auto* curve : {&out.constant, &out.tracking, &out.unitary}) {
        for (const auto& res : *curve) merge_diag(out.worst, res.worst);
      }
      scaling_ = std::move(out);
    }
    return *scaling_;
  }

 private:
  std::optional<Tunneling> tunneling_;
  std::optional<FullVsReduced> full_vs_reduced_;
  std::optional<Fig1b> fig1b_;
  std::optional<Scaling> scaling_;
};

Outcome criterion_1(Context&) {
  double worst = 0.0;
  for (std::uint64_t N : {16ull, 64ull, 1024ull}) {
    const double g_min = 1.0 / std::sqrt(static_cast<double>(N));
    for (double mult : {0.1, 1.0, 10.0}) {
      const double gamma = mult * g_min;
      const auto closed = schedules::optimal_schedule_closed(N, gamma);
      const auto numeric = schedules::optimal_schedule_numeric(N, gamma);
      for (int i = 0; i <= 1000; ++i) {
        const double s = i / 1000.0;
        worst = std::max(worst, std::abs(closed.eval(s) - numeric.eval(s)));
      }
    }
  }
  return {worst < 1e-6,
          "max |q_closed - q_numeric| = " + sci(worst) + " (limit 1e-6)"};
}

Outcome criterion_2(Context&) {
  double worst = 0.0;
  const auto gammas = num::logspace(1e-2, 1e2, 10);
  for (int k = 1; k <= 10; ++k) {
    const auto N = static_cast<std::uint64_t>(1) << k;
    for (double gamma : gammas) {
      const double tau = schedules::tau(N, gamma).value;
      const double bracket =
          bounds::infidelity_bracket(static_cast<double>(N), gamma);
      // gamma tau^2 = bracket^2, certified against the quadrature tau.
      worst = std::max(worst, std::abs(gamma * tau * tau - bracket * bracket) /
                                  (bracket * bracket));
    }
  }
  return {worst < 1e-8,
          "max rel |gamma tau^2 - bracket^2| = " + sci(worst) +
              " on 10x10 grid (limit 1e-8)"};
}

Outcome criterion_3(Context& ctx) {
  const auto& tun = ctx.tunneling();
  const double dev_largest_T = tun.deviation.back();
  std::vector<double> log_T;
  std::vector<double> log_dev;
  for (std::size_t i = 0; i < tun.T_values.size(); ++i) {
    log_T.push_back(std::log(tun.T_values[i]));
    log_dev.push_back(std::log(tun.deviation[i]));
  }
  const auto fit = num::fit_line(log_T, log_dev);
  const bool pass = dev_largest_T < 0.05 && std::abs(fit.slope + 1.0) < 0.2;
  return {pass, "dev(T=1e4 tau) = " + sci(dev_largest_T) +
                    " (limit 0.05), correction exponent " + sci(fit.slope) +
                    " (want -1 +- 0.2)"};
}

Outcome criterion_4(Context& ctx) {
  const auto& fvr = ctx.full_vs_reduced();
  const bool pass =
      fvr.max_distance < 1e-8 && fvr.max_out_of_subspace < 1e-10;
  return {pass, "max trace distance = " + sci(fvr.max_distance) +
                    " (limit 1e-8), max out-of-subspace = " +
                    sci(fvr.max_out_of_subspace) + " (limit 1e-10)"};
}

Outcome criterion_5(Context&) {
  double worst_runtime = 0.0;
  for (std::uint64_t N : {4ull, 64ull, 4096ull}) {
    for (double c : {0.25, 1.0}) {
      const grover::GroverInstance inst(
          static_cast<int>(std::llround(std::log2(static_cast<double>(N)))));
      const double quad = num::integrate_split(
          [&](double q) {
            const double g = grover::gap(inst, q);
            return 1.0 / (c * g * g);
          },
          0.0, 1.0, {0.5});
      worst_runtime =
          std::max(worst_runtime,
                   std::abs(schedules::rc_runtime(N, c) - quad) / quad);
    }
  }
  // dq/ds = c g^2(q(s)) rc_runtime(N, c) pointwise.
  double worst_residual = 0.0;
  const std::uint64_t N = 1024;
  const grover::GroverInstance inst(10);
  const double c = 0.25;
  const auto sched = schedules::roland_cerf_schedule(N);
  const double T = schedules::rc_runtime(N, c);
  for (int i = 0; i < 100; ++i) {
    const double s = (i + 0.5) / 100.0;
    const double g = grover::gap(inst, sched.eval(s));
    const double residual =
        std::abs(sched.deriv(s) - c * g * g * T) / sched.deriv(s);
    worst_residual = std::max(worst_residual, residual);
  }
  const bool pass = worst_runtime < 1e-9 && worst_residual < 1e-9;
  return {pass, "runtime vs quadrature rel err = " + sci(worst_runtime) +
                    ", speed-law residual = " + sci(worst_residual) +
                    " (limits 1e-9)"};
}

Outcome criterion_6(Context& ctx) {
  const auto& fig = ctx.fig1b();
  const bool pass = fig.f_linear < fig.f_rc && fig.f_rc < fig.f_optimal;
  return {pass, "final fidelity linear " + sci(fig.f_linear) + " < rc " +
                    sci(fig.f_rc) + " < optimal " + sci(fig.f_optimal)};
}

Outcome criterion_7(Context& ctx) {
  const auto& sc = ctx.scaling();
  const bool slope_ok =
      std::abs(sc.fit.slope - 0.5) < 0.05 && sc.fit.r_squared > 0.98;
  bool ordering_ok = true;
  bool qsl_ok = true;
  for (std::size_t i = 0; i < sc.n_values.size(); ++i) {
    const grover::GroverInstance inst(sc.n_values[i]);
    const double qsl = bounds::mt_path_qsl(inst);
    ordering_ok = ordering_ok &&
                  sc.tracking[i].t_min < sc.constant[i].t_min &&
                  sc.unitary[i].t_min < sc.tracking[i].t_min;
    qsl_ok = qsl_ok && sc.constant[i].t_min > qsl &&
             sc.tracking[i].t_min > qsl && sc.unitary[i].t_min > qsl;
  }
  const bool pass = slope_ok && ordering_ok && qsl_ok;
  std::ostringstream os;
  os << "log2 T slope = " << sci(sc.fit.slope) << " (want 0.5 +- 0.05, R^2 "
     << sci(sc.fit.r_squared) << "), ordering "
     << (ordering_ok ? "unitary < tracking < constant holds"
                     : "VIOLATED")
     << ", QSL floor " << (qsl_ok ? "respected" : "VIOLATED");
  return {pass, os.str()};
}

Outcome criterion_8(Context&) {
  const double N = std::ldexp(1.0, 20);
  const double target = 0.1;
  const auto weak =
      bounds::asymptotic_tmin(N, 0.01 / std::sqrt(N), target);
  const auto strong =
      bounds::asymptotic_tmin(N, 100.0 / std::sqrt(N), target);
  const bool pass = weak.regime == bounds::Regime::Weak &&
                    weak.rel_deviation < 0.05 &&
                    strong.regime == bounds::Regime::Strong &&
                    strong.rel_deviation < 0.02;
  return {pass, "weak (alpha = 0.01) rel dev = " + sci(weak.rel_deviation) +
                    " (limit 0.05), strong (alpha = 100) rel dev = " +
                    sci(strong.rel_deviation) + " (limit 0.02)"};
}

Outcome criterion_9(Context&) {
  std::vector<int> n_values{4, 5, 6, 7, 8, 9, 10};
  const auto lin = ex::c_scaling_experiment(
      {1.0}, n_values, schedules::ScheduleKind::Linear);
  const auto opt = ex::c_scaling_experiment(
      {1.0, 0.1}, n_values, schedules::ScheduleKind::OptimalClosed);
  const auto& f_lin = lin.fits.at(0);
  const ex::FitRecord* f_opt1 = nullptr;
  const ex::FitRecord* f_opt01 = nullptr;
  for (const auto& f : opt.fits) {
    if (f.label == "a=1") f_opt1 = &f;
    if (f.label == "a=0.1") f_opt01 = &f;
  }
  if (f_opt1 == nullptr || f_opt01 == nullptr) {
    return {false, "missing fit labels in optimal-schedule sweep"};
  }
  const bool lin_ok =
      std::abs(f_lin.slope - 1.0) < 0.15 && f_lin.r_squared > 0.98;
  const bool opt1_ok =
      std::abs(f_opt1->slope - 0.5) < 0.1 && f_opt1->r_squared > 0.98;
  const bool opt01_ok =
      std::abs(f_opt01->slope) < 0.1 && f_opt01->r_squared > 0.98;
  std::ostringstream os;
  os << "slopes: linear a=1 " << sci(f_lin.slope) << " (want 1 +- 0.15, R^2 "
     << sci(f_lin.r_squared) << "), optimal a=1 " << sci(f_opt1->slope)
     << " (want 0.5 +- 0.1, R^2 " << sci(f_opt1->r_squared)
     << "), optimal a=0.1 " << sci(f_opt01->slope)
     << " (want 0 +- 0.1, R^2 " << sci(f_opt01->r_squared) << ")";
  return {lin_ok && opt1_ok && opt01_ok, os.str()};
}

Outcome criterion_10(Context&) {
  const double x_err =
      std::abs(bounds::gamma_max(1.0, std::exp(-1.0)).x_exact - 1.0);
  const double w0 = std::abs(bounds::lambert_w0(0.0));
  const double w_branch =
      std::abs(bounds::lambert_w0(-std::exp(-1.0)) + 1.0);
  const double w_e = std::abs(bounds::lambert_w0(std::exp(1.0)) - 1.0);
  const bool pass =
      x_err < 1e-12 && w0 < 1e-12 && w_branch < 1e-12 && w_e < 1e-12;
  return {pass, "x(1/e) err = " + sci(x_err) + ", W(0) err = " + sci(w0) +
                    ", W(-1/e) err = " + sci(w_branch) +
                    ", W(e) err = " + sci(w_e) + " (limits 1e-12)"};
}

Outcome criterion_11(Context& ctx) {
  lindblad::TrajectoryDiagnostics worst;
  merge_diag(worst, ctx.tunneling().worst);
  merge_diag(worst, ctx.full_vs_reduced().worst);
  merge_diag(worst, ctx.fig1b().worst);
  merge_diag(worst, ctx.scaling().worst);
  const bool pass = worst.max_trace_drift < 1e-9 &&
                    worst.min_eigenvalue > -1e-9 &&
                    worst.max_hermiticity_residual < 1e-12;
  return {pass, "across criteria 3-7: trace drift " +
                    sci(worst.max_trace_drift) + " (limit 1e-9), min eig " +
                    sci(worst.min_eigenvalue) + " (floor -1e-9), herm " +
                    sci(worst.max_hermiticity_residual) + " (limit 1e-12)"};
}

Outcome criterion_12(Context& ctx) {
  const auto& sc = ctx.scaling();
  // Positive means the bound failed; reported unclamped so the margin shows.
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sc.n_values.size(); ++i) {
    const grover::GroverInstance inst(sc.n_values[i]);
    for (const auto* curve : {&sc.constant, &sc.tracking, &sc.unitary}) {
      const auto& res = (*curve)[i];
      const double qsl =
          bounds::deffner_lutz_qsl(res.trajectory, inst, res.model,
                                   res.schedule);
      worst_excess =
          std::max(worst_excess, (qsl - res.t_min) / res.t_min);
    }
  }
  double worst_ratio = 0.0;
  for (int n : sc.n_values) {
    const grover::GroverInstance inst(n);
    for (double eps : {0.1, 0.25, 0.5}) {
      worst_ratio = std::max(
          worst_ratio,
          std::abs(bounds::rc_qsl_ratio(inst, eps) - 1.0 / (2.0 * eps)));
    }
  }
  const bool pass = worst_excess <= 1e-12 && worst_ratio < 1e-10;
  return {pass, "max (qsl - T)/T = " + sci(worst_excess) +
                    " (must be <= 0), max |ratio - 1/(2 eps)| = " +
                    sci(worst_ratio) + " (limit 1e-10)"};
}

using CriterionFn = Outcome (*)(Context&);

struct Entry {
  const char* name;
  CriterionFn fn;
};

const Entry kCriteria[] = {
    {"optimal schedule: closed form vs independent numeric", criterion_1},
    {"gamma tau^2 identity on the (N, gamma) grid", criterion_2},
    {"leading-order tunneling law and its 1/T correction", criterion_3},
    {"full-space vs reduced two-level simulation", criterion_4},
    {"local-adiabatic runtime and speed law", criterion_5},
    {"final-fidelity ordering of the three schedules", criterion_6},
    {"minimal-runtime scaling and protocol ordering", criterion_7},
    {"weak/strong regime asymptotics", criterion_8},
    {"adiabatic-constant scaling exponents", criterion_9},
    {"dephasing ceiling and Lambert-W exactness", criterion_10},
    {"physicality of every recorded simulation", criterion_11},
    {"speed-limit validity of every minimal-time run", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;  // 0 = all
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if ((arg == "--criterion" || arg == "-c") && i + 1 < argc) {
      const std::string value = argv[++i];
      if (value == "all") {
        only = 0;
        continue;
      }
      only = std::atoi(value.c_str());
      if (only < 1 || only > 12) {
        std::cerr << "criterion index must be 1..12 or 'all'\n";
        return 2;
      }
    } else if (arg == "--list") {
      for (int k = 0; k < 12; ++k) {
        std::cout << k + 1 << ": " << kCriteria[k].name << '\n';
      }
      return 0;
    } else {
      std::cerr << "usage: acceptance [--criterion <1..12|all>] [--list]\n";
      return arg == "--help" ? 0 : 2;
    }
  }

  Context ctx;
  int failures = 0;
  for (int k = 1; k <= 12; ++k) {
    if (only != 0 && k != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = kCriteria[k - 1].fn(ctx);
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %2d: %s | %s [%.1f s]\n",
                outcome.pass ? "PASS" : "FAIL", k, kCriteria[k - 1].name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (only == 0) {
    std::printf("%s: %d of 12 criteria failed\n",
                failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures);
  }
  return failures == 0 ? 0 : 1;
}
