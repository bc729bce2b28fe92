#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "adiagrover/grover.hpp"
#include "adiagrover/lindblad.hpp"
#include "adiagrover/schedules.hpp"

namespace adiagrover::experiments {

// Runs fn(0), ..., fn(n-1) on a small thread pool. Tasks must be
// independent and write results by index, so the assembled output does not
// depend on completion order. The first worker exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

enum class Protocol { UnitaryRC, DephasingConstant, DephasingGapTracking };

std::string protocol_name(Protocol p);

struct MinTimeQuery {
  Protocol protocol = Protocol::DephasingConstant;
  int n_qubits = 4;
  double target_fidelity = 0.9;
  double gamma = 0.0;  // DephasingConstant rate
  double kappa = 0.0;  // DephasingGapTracking rate per unit gap
  // Search window. t_high = 0 lets the bracket grow by doubling.
  double t_low = 1.0;
  double t_high = 0.0;
  double tolerance = 0.01;  // relative width of the final bracket
  lindblad::SimConfig sim;  // T is overwritten per evaluation
};

struct MinTimeResult {
  double t_min = 0.0;
  double final_fidelity = 0.0;  // from the rerun at t_min
  std::size_t n_simulations = 0;
  // Final fidelity stayed nondecreasing along the doubling bracket; a
  // violation switches the search to a coarse scan and is flagged here.
  bool monotone = true;
  schedules::Schedule schedule;
  lindblad::DephasingModel model;
  lindblad::Trajectory trajectory;  // the run at t_min
  // Worst-case integration diagnostics over every simulation performed.
  lindblad::TrajectoryDiagnostics worst;
};

// Smallest runtime in the search window whose final ground-state fidelity
// reaches the target. Dephasing protocols bracket by doubling and bisect
// (fidelity is monotone in T); the unitary protocol scans a log grid below
// the first doubling hit (fidelity oscillates in T) and refines locally.
// Throws NumericalError if the target is unreachable within the window.
MinTimeResult find_min_time(const MinTimeQuery& query);

struct FitRecord {
  std::string label;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Row-major grid of values over named axes, with optional per-slice fits.
struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axes;
  std::vector<double> values;
  std::vector<FitRecord> fits;
  std::string protocol;
  double wall_time_s = 0.0;

  std::size_t expected_size() const;
  double at(std::size_t i, std::size_t j) const;  // two-axis sweeps
};

// Minimal infidelity on an (n, gamma) grid at fixed runtime (analytic).
SweepResult contour_min_infidelity(const std::vector<int>& n_values,
                                   const std::vector<double>& gamma_grid,
                                   double T);

// Minimal runtime to a target infidelity across dephasing rates (analytic).
SweepResult tmin_vs_gamma_curve(int n_qubits, double target_infidelity,
                                const std::vector<double>& gamma_grid);

// Adiabatic constant C over (a, n) with the rate rule gamma = N^{-a/2},
// under the given schedule kind; attaches a log2 C vs n fit per a.
SweepResult c_scaling_experiment(const std::vector<double>& a_values,
                                 const std::vector<int>& n_values,
                                 schedules::ScheduleKind kind);

// Output root: explicit argument, else $ADIAGROVER_OUT, else "out".
std::filesystem::path output_root(const std::string& override_dir = "");

// Writes the data files behind one of fig1a, fig1b, fig1c, fig2, fig3,
// fig4, fig5 under <root>/<name>/ and returns the written paths. Rerunning
// with the same build and config produces byte-identical CSV files
// (meta.json additionally records the wall time).
std::vector<std::filesystem::path> figure_bundle(const std::string& name,
                                                 const std::string& out_dir = "");

}  // namespace adiagrover::experiments
