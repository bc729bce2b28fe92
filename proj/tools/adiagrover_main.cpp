#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adiagrover/bounds.hpp"
#include "adiagrover/errors.hpp"
#include "adiagrover/experiments.hpp"
#include "adiagrover/grover.hpp"
#include "adiagrover/lindblad.hpp"
#include "adiagrover/schedules.hpp"
#include "adiagrover/table.hpp"
#include "adiagrover/version.hpp"

namespace {

namespace ag = adiagrover;
using nlohmann::json;

// "gmin", "<x>gmin" (multiplier), or a plain non-negative number.
double parse_gamma(const std::string& text, double g_min) {
  const auto fail = [&text]() -> double {
    throw std::invalid_argument("cannot parse dephasing rate '" + text +
                                "' (expected a number, 'gmin', or '<x>gmin')");
  };
  double value = 0.0;
  std::size_t used = 0;
  if (text == "gmin") {
    value = g_min;
  } else if (text.size() > 4 && text.substr(text.size() - 4) == "gmin") {
    const std::string head = text.substr(0, text.size() - 4);
    double mult = 0.0;
    try {
      mult = std::stod(head, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != head.size()) return fail();
    value = mult * g_min;
  } else {
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != text.size()) return fail();
  }
  if (!(value >= 0.0)) fail();
  return value;
}

// "rc", "<x>rc" (multiplier of the local-adiabatic runtime), or a number.
double parse_time(const std::string& text, std::uint64_t N, double adiab) {
  const auto fail = [&text]() -> double {
    throw std::invalid_argument("cannot parse runtime '" + text +
                                "' (expected a number, 'rc', or '<x>rc')");
  };
  double value = 0.0;
  std::size_t used = 0;
  if (text == "rc") {
    value = ag::schedules::rc_runtime(N, adiab);
  } else if (text.size() > 2 && text.substr(text.size() - 2) == "rc") {
    const std::string head = text.substr(0, text.size() - 2);
    double mult = 0.0;
    try {
      mult = std::stod(head, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != head.size()) return fail();
    value = mult * ag::schedules::rc_runtime(N, adiab);
  } else {
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != text.size()) return fail();
  }
  if (!(value > 0.0)) fail();
  return value;
}

ag::schedules::Schedule make_schedule(const std::string& kind,
                                      const std::string& method,
                                      std::uint64_t N, double gamma) {
  if (kind == "linear") return ag::schedules::linear_schedule();
  if (kind == "rc") return ag::schedules::roland_cerf_schedule(N);
  if (kind == "optimal") {
    if (method == "closed")
      return ag::schedules::optimal_schedule_closed(N, gamma);
    if (method == "numeric")
      return ag::schedules::optimal_schedule_numeric(N, gamma);
    throw std::invalid_argument("unknown schedule method '" + method + "'");
  }
  throw std::invalid_argument("unknown schedule kind '" + kind + "'");
}

void reject_unknown(const json& obj,
                    const std::vector<std::string>& allowed,
                    const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || key == a;
    if (!ok)
      throw std::invalid_argument("unknown config key '" + scope + key + "'");
  }
}

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file '" + path + "'");
  json cfg;
  try {
    is >> cfg;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  if (!cfg.is_object())
    throw std::invalid_argument("config file '" + path +
                                "' must hold a JSON object");
  return cfg;
}

std::string text_of(const json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return ag::io::format_double(v.get<double>());
  throw std::invalid_argument(std::string("config key '") + key +
                              "' must be a string or number");
}

// All tunables of `schedule` and `simulate`, with the declarative config
// file merged underneath whatever was passed on the command line.
struct RunArgs {
  int n_qubits = 10;
  std::string schedule = "optimal";
  std::string method = "closed";
  std::string dephasing_kind = "constant";
  std::string gamma = "0";
  double kappa = 0.0;
  std::string T = "rc";
  double adiab = 0.25;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t n_samples = 513;
  bool full = false;
  std::string out;
  std::string format = "csv";
  std::string config;

  // CLI option handles, so config values only fill in unset flags.
  CLI::Option* opt_n = nullptr;
  CLI::Option* opt_schedule = nullptr;
  CLI::Option* opt_method = nullptr;
  CLI::Option* opt_kind = nullptr;
  CLI::Option* opt_gamma = nullptr;
  CLI::Option* opt_kappa = nullptr;
  CLI::Option* opt_T = nullptr;
  CLI::Option* opt_adiab = nullptr;
  CLI::Option* opt_rel = nullptr;
  CLI::Option* opt_abs = nullptr;
  CLI::Option* opt_samples = nullptr;
  CLI::Option* opt_out = nullptr;
  CLI::Option* opt_format = nullptr;

  void add_common(CLI::App* cmd, bool with_sim) {
    if (!with_sim) {
      n_samples = 1025;
      gamma = "gmin";
    }
    opt_n = cmd->add_option("--n", n_qubits, "number of qubits (N = 2^n)")
                ->check(CLI::Range(1, 62));
    opt_schedule =
        cmd->add_option(with_sim ? "--schedule" : "--kind", schedule,
                        "schedule kind")
            ->check(CLI::IsMember({"linear", "rc", "optimal"}))
            ->capture_default_str();
    opt_method = cmd->add_option("--method", method,
                                 "optimal-schedule construction")
                     ->check(CLI::IsMember({"closed", "numeric"}))
                     ->capture_default_str();
    opt_gamma = cmd->add_option(
                       "--gamma", gamma,
                       "dephasing rate: number, 'gmin', or '<x>gmin'")
                    ->capture_default_str();
    opt_adiab = cmd->add_option("--adiab", adiab,
                                "local-adiabatic constant used by 'rc' units")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
    if (with_sim) {
      opt_kind = cmd->add_option("--dephasing", dephasing_kind,
                                 "rate model (gap-tracking uses --kappa)")
                     ->check(CLI::IsMember({"constant", "gap-tracking"}))
                     ->capture_default_str();
      opt_kappa =
          cmd->add_option("--kappa", kappa, "gap-tracking rate per unit gap")
              ->check(CLI::NonNegativeNumber)
              ->capture_default_str();
      opt_T = cmd->add_option("--T", T,
                              "runtime: number, 'rc', or '<x>rc'")
                  ->capture_default_str();
      opt_rel = cmd->add_option("--rel-tol", rel_tol, "integrator rel tol")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
      opt_abs = cmd->add_option("--abs-tol", abs_tol, "integrator abs tol")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
      opt_samples =
          cmd->add_option("--samples", n_samples, "recorded sample count")
              ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
              ->capture_default_str();
      cmd->add_flag("--full", full, "integrate in the full 2^n space");
    } else {
      opt_samples =
          cmd->add_option("--samples", n_samples, "tabulated row count")
              ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
              ->capture_default_str();
    }
    opt_out = cmd->add_option("--out", out, "output file (default stdout)");
    opt_format = cmd->add_option("--format", format, "table format")
                     ->check(CLI::IsMember({"csv", "json"}))
                     ->capture_default_str();
    cmd->add_option("--config", config, "JSON config file (flags win)")
        ->check(CLI::ExistingFile);
  }

  void merge_config() {
    if (config.empty()) return;
    const json cfg = load_config(config);
    reject_unknown(cfg, {"n_qubits", "dephasing", "schedule", "sim", "output"},
                   "");
    if (cfg.contains("n_qubits") && opt_n->count() == 0)
      n_qubits = cfg.at("n_qubits").get<int>();
    if (cfg.contains("dephasing")) {
      const json& d = cfg.at("dephasing");
      reject_unknown(d, {"kind", "gamma", "kappa"}, "dephasing.");
      if (d.contains("kind") && (!opt_kind || opt_kind->count() == 0))
        dephasing_kind = d.at("kind").get<std::string>();
      if (d.contains("gamma") && opt_gamma->count() == 0)
        gamma = text_of(d.at("gamma"), "dephasing.gamma");
      if (d.contains("kappa") && (!opt_kappa || opt_kappa->count() == 0))
        kappa = d.at("kappa").get<double>();
    }
    if (cfg.contains("schedule")) {
      const json& s = cfg.at("schedule");
      reject_unknown(s, {"kind", "method"}, "schedule.");
      if (s.contains("kind") && opt_schedule->count() == 0)
        schedule = s.at("kind").get<std::string>();
      if (s.contains("method") && opt_method->count() == 0)
        method = s.at("method").get<std::string>();
    }
    if (cfg.contains("sim")) {
      const json& s = cfg.at("sim");
      reject_unknown(s, {"T", "rel_tol", "abs_tol", "n_samples"}, "sim.");
      if (s.contains("T") && (!opt_T || opt_T->count() == 0))
        T = text_of(s.at("T"), "sim.T");
      if (s.contains("rel_tol") && (!opt_rel || opt_rel->count() == 0))
        rel_tol = s.at("rel_tol").get<double>();
      if (s.contains("abs_tol") && (!opt_abs || opt_abs->count() == 0))
        abs_tol = s.at("abs_tol").get<double>();
      if (s.contains("n_samples") && opt_samples->count() == 0)
        n_samples = s.at("n_samples").get<std::size_t>();
    }
    if (cfg.contains("output")) {
      const json& o = cfg.at("output");
      reject_unknown(o, {"dir", "format"}, "output.");
      if (o.contains("dir") && opt_out->count() == 0)
        out = o.at("dir").get<std::string>();
      if (o.contains("format") && opt_format->count() == 0) {
        format = o.at("format").get<std::string>();
        if (format != "csv" && format != "json")
          throw std::invalid_argument("output.format must be csv or json");
      }
    }
  }
};

// Writes either to the named file or to stdout.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_schedule(RunArgs& args) {
  args.merge_config();
  const ag::grover::GroverInstance inst(args.n_qubits);
  const double gamma_value = parse_gamma(args.gamma, inst.g_min());
  const ag::schedules::Schedule sched = make_schedule(
      args.schedule, args.method, inst.dimension,
      gamma_value > 0.0 ? gamma_value : inst.g_min());
  const std::size_t rows = args.n_samples;
  OutStream os(args.out);
  if (args.format == "json") {
    json rows_json = json::array();
    for (std::size_t i = 0; i < rows; ++i) {
      const double s =
          static_cast<double>(i) / static_cast<double>(rows - 1);
      rows_json.push_back({s, sched.eval(s), sched.deriv(s)});
    }
    const json doc = {{"columns", {"s", "q", "dq_ds"}}, {"rows", rows_json}};
    os.get() << doc.dump(2) << '\n';
  } else {
    ag::schedules::write_table(sched, os.get(), rows);
  }
  return 0;
}

int cmd_simulate(RunArgs& args) {
  args.merge_config();
  const ag::grover::GroverInstance inst(args.n_qubits);
  ag::lindblad::DephasingModel model = ag::lindblad::DephasingModel::constant(
      parse_gamma(args.gamma, inst.g_min()));
  if (args.dephasing_kind == "gap-tracking" ||
      (args.opt_kappa && args.opt_kappa->count() > 0)) {
    if (!(args.kappa > 0.0))
      throw std::invalid_argument("gap-tracking needs --kappa > 0");
    model = ag::lindblad::DephasingModel::gap_tracking(args.kappa);
  }
  const double schedule_gamma =
      model.kind == ag::lindblad::DephasingModel::Kind::Constant &&
              model.gamma > 0.0
          ? model.gamma
          : inst.g_min();
  const ag::schedules::Schedule sched = make_schedule(
      args.schedule, args.method, inst.dimension, schedule_gamma);
  ag::lindblad::SimConfig cfg;
  cfg.T = parse_time(args.T, inst.dimension, args.adiab);
  cfg.rel_tol = args.rel_tol;
  cfg.abs_tol = args.abs_tol;
  cfg.n_samples = args.n_samples;
  const ag::lindblad::Trajectory traj =
      args.full ? ag::lindblad::integrate_full(inst, sched, model, cfg)
                : ag::lindblad::integrate(inst, sched, model, cfg);

  OutStream os(args.out);
  const std::vector<std::string> columns = {
      "s",        "q",         "fidelity", "rho_00_re", "rho_01_re",
      "rho_01_im", "rho_11_re", "bloch_x",  "bloch_y",   "bloch_z",
      "purity"};
  const auto row_of = [](const ag::lindblad::TrajectorySample& smp) {
    return std::vector<double>{smp.s,
                               smp.q,
                               smp.fidelity,
                               smp.rho_reduced(0, 0).real(),
                               smp.rho_reduced(0, 1).real(),
                               smp.rho_reduced(0, 1).imag(),
                               smp.rho_reduced(1, 1).real(),
                               smp.bloch(0),
                               smp.bloch(1),
                               smp.bloch(2),
                               ag::lindblad::purity(smp.rho)};
  };
  if (args.format == "json") {
    json rows_json = json::array();
    for (const auto& smp : traj.samples) rows_json.push_back(row_of(smp));
    const json doc = {{"columns", columns},
                      {"T", traj.T},
                      {"rows", rows_json}};
    os.get() << doc.dump(2) << '\n';
  } else {
    ag::io::Table t(columns);
    for (const auto& smp : traj.samples) {
      std::vector<std::string> cells;
      for (const double v : row_of(smp)) cells.push_back(ag::io::format_double(v));
      t.add_row(cells);
    }
    t.write_csv(os.get());
  }
  return 0;
}

struct BoundsArgs {
  int n_qubits = 10;
  std::string gamma = "gmin";
  double T = 100.0;
  double target = 0.1;
  double gap = 1.0;
  double eps = 0.1;
  double eps_adiab = 0.25;
  double s_end = 1.0;
  std::string schedule = "optimal";
  std::string method = "closed";
  std::string norm = "spectral";
};

void print_json(const json& doc) { std::cout << doc.dump(2) << '\n'; }

int cmd_bounds_imin(const BoundsArgs& a) {
  const ag::grover::GroverInstance inst(a.n_qubits);
  const double gamma = parse_gamma(a.gamma, inst.g_min());
  print_json({{"n_qubits", a.n_qubits},
              {"gamma", gamma},
              {"T", a.T},
              {"min_infidelity", ag::bounds::min_infidelity(inst.N(), gamma, a.T)}});
  return 0;
}

int cmd_bounds_tmin(const BoundsArgs& a) {
  const ag::grover::GroverInstance inst(a.n_qubits);
  const double gamma = parse_gamma(a.gamma, inst.g_min());
  const ag::bounds::RegimeReport rep =
      ag::bounds::asymptotic_tmin(inst.N(), gamma, a.target);
  print_json({{"n_qubits", a.n_qubits},
              {"gamma", gamma},
              {"target_infidelity", a.target},
              {"tmin", rep.exact_tmin},
              {"alpha", rep.alpha},
              {"regime", ag::bounds::regime_name(rep.regime)},
              {"asymptotic_tmin", rep.asymptotic_tmin},
              {"rel_deviation", rep.rel_deviation}});
  return 0;
}

int cmd_bounds_gamma_max(const BoundsArgs& a) {
  const ag::bounds::GammaMaxResult r = ag::bounds::gamma_max(a.gap, a.eps);
  print_json({{"gap", a.gap},
              {"epsilon", a.eps},
              {"gamma_max", r.value},
              {"x_exact", r.x_exact},
              {"x_expansion", r.x_expansion}});
  return 0;
}

int cmd_bounds_cbound(const BoundsArgs& a) {
  const ag::grover::GroverInstance inst(a.n_qubits);
  const double gamma = parse_gamma(a.gamma, inst.g_min());
  const ag::schedules::Schedule sched =
      make_schedule(a.schedule, a.method, inst.dimension,
                    gamma > 0.0 ? gamma : inst.g_min());
  ag::bounds::CBoundOptions opt;
  opt.norm = a.norm == "trace" ? ag::bounds::SuperNorm::InducedTrace
                               : ag::bounds::SuperNorm::Spectral;
  const ag::bounds::CBoundResult r =
      ag::bounds::adiabatic_constant_C(inst, sched, gamma, a.s_end, opt);
  print_json({{"n_qubits", a.n_qubits},
              {"gamma", gamma},
              {"schedule", a.schedule},
              {"norm", a.norm},
              {"s_end", a.s_end},
              {"c_bound", r.value},
              {"boundary_start", r.boundary_start},
              {"boundary_end", r.boundary_end},
              {"integral", r.integral}});
  return 0;
}

int cmd_bounds_qsl(const BoundsArgs& a) {
  const ag::grover::GroverInstance inst(a.n_qubits);
  const double t_qsl = ag::bounds::mt_path_qsl(inst);
  const double t_rc = ag::schedules::rc_runtime(inst.dimension, a.eps_adiab);
  print_json({{"n_qubits", a.n_qubits},
              {"eps_adiab", a.eps_adiab},
              {"t_qsl_mt", t_qsl},
              {"t_rc", t_rc},
              {"ratio", ag::bounds::rc_qsl_ratio(inst, a.eps_adiab)},
              {"expected_ratio", 1.0 / (2.0 * a.eps_adiab)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "adiabatic Grover search under energy-basis dephasing: schedules, "
      "master-equation simulation, closed-form bounds, figure data",
      "adiagrover"};
  app.set_help_all_flag("--help-all", "print help for every subcommand");
  app.set_version_flag("--version", adiagrover::kVersion);
  app.require_subcommand(0, 1);

  RunArgs sched_args;
  CLI::App* sched_cmd = app.add_subcommand(
      "schedule", "tabulate a schedule as (s, q, dq/ds) rows");
  sched_args.add_common(sched_cmd, false);

  RunArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "integrate the dephasing master equation along a schedule");
  sim_args.add_common(sim_cmd, true);

  BoundsArgs bounds_args;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "evaluate closed-form bounds as JSON");
  bounds_cmd->require_subcommand(1);
  CLI::App* imin_cmd = bounds_cmd->add_subcommand(
      "imin", "minimal infidelity reachable in runtime T");
  imin_cmd->add_option("--n", bounds_args.n_qubits, "number of qubits")
      ->required()
      ->check(CLI::Range(1, 62));
  imin_cmd->add_option("--gamma", bounds_args.gamma,
                       "dephasing rate (number, 'gmin', '<x>gmin')");
  imin_cmd->add_option("--T", bounds_args.T, "runtime")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* tmin_cmd = bounds_cmd->add_subcommand(
      "tmin", "minimal runtime to a target infidelity, with regime report");
  tmin_cmd->add_option("--n", bounds_args.n_qubits, "number of qubits")
      ->required()
      ->check(CLI::Range(1, 62));
  tmin_cmd->add_option("--gamma", bounds_args.gamma,
                       "dephasing rate (number, 'gmin', '<x>gmin')");
  tmin_cmd->add_option("--target", bounds_args.target, "target infidelity")
      ->check(CLI::Range(1e-12, 0.999999))
      ->capture_default_str();

  CLI::App* gmax_cmd = bounds_cmd->add_subcommand(
      "gamma-max", "measurement-limited maximal dephasing rate");
  gmax_cmd->add_option("--gap", bounds_args.gap, "spectral gap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gmax_cmd->add_option("--eps", bounds_args.eps, "error budget per interval")
      ->required()
      ->check(CLI::Range(1e-12, 0.999999));

  CLI::App* cbound_cmd = bounds_cmd->add_subcommand(
      "cbound", "open-system adiabatic constant along a schedule");
  cbound_cmd->add_option("--n", bounds_args.n_qubits, "number of qubits")
      ->required()
      ->check(CLI::Range(1, 30));
  cbound_cmd->add_option("--gamma", bounds_args.gamma,
                         "dephasing rate (number, 'gmin', '<x>gmin')")
      ->capture_default_str();
  cbound_cmd->add_option("--schedule", bounds_args.schedule, "schedule kind")
      ->check(CLI::IsMember({"linear", "rc", "optimal"}))
      ->capture_default_str();
  cbound_cmd->add_option("--method", bounds_args.method,
                         "optimal-schedule construction")
      ->check(CLI::IsMember({"closed", "numeric"}))
      ->capture_default_str();
  cbound_cmd->add_option("--s-end", bounds_args.s_end, "integration endpoint")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  cbound_cmd->add_option("--norm", bounds_args.norm, "superoperator norm")
      ->check(CLI::IsMember({"spectral", "trace"}))
      ->capture_default_str();

  CLI::App* qsl_cmd = bounds_cmd->add_subcommand(
      "qsl", "Mandelstam-Tamm path time and local-adiabatic ratio");
  qsl_cmd->add_option("--n", bounds_args.n_qubits, "number of qubits")
      ->required()
      ->check(CLI::Range(1, 62));
  qsl_cmd->add_option("--eps-adiab", bounds_args.eps_adiab,
                      "local-adiabatic constant")
      ->check(CLI::Range(1e-6, 10.0))
      ->capture_default_str();

  std::string figure_name;
  std::string figure_out;
  CLI::App* figure_cmd = app.add_subcommand(
      "figure", "write the data files behind one figure");
  figure_cmd
      ->add_option("name", figure_name,
                   "one of fig1a fig1b fig1c fig2 fig3 fig4 fig5")
      ->required();
  figure_cmd->add_option("--out", figure_out,
                         "output root (default $ADIAGROVER_OUT or ./out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sched_cmd->parsed()) return cmd_schedule(sched_args);
    if (sim_cmd->parsed()) return cmd_simulate(sim_args);
    if (bounds_cmd->parsed()) {
      if (imin_cmd->parsed()) return cmd_bounds_imin(bounds_args);
      if (tmin_cmd->parsed()) return cmd_bounds_tmin(bounds_args);
      if (gmax_cmd->parsed()) return cmd_bounds_gamma_max(bounds_args);
      if (cbound_cmd->parsed()) return cmd_bounds_cbound(bounds_args);
      if (qsl_cmd->parsed()) return cmd_bounds_qsl(bounds_args);
    }
    if (figure_cmd->parsed()) {
      const auto paths =
          adiagrover::experiments::figure_bundle(figure_name, figure_out);
      for (const auto& p : paths) std::cout << p.string() << '\n';
      return 0;
    }
    std::cout << app.help() << '\n';
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const adiagrover::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
}
