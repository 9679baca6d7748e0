// Command-line driver: classify backgrounds, integrate scenarios, sweep
// parameter grids, evaluate orbit numbers, and print existence budgets.
#include <clocale>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "flrw/scenario.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::string solver;
  int grid = 0;
  double tol = 0.0;
};

flrw::ScenarioFile load_with_overrides(const CommonArgs& args) {
  flrw::ScenarioFile sf = args.config.empty()
                              ? flrw::ScenarioFile{}
                              : flrw::load_scenario_file(args.config);
  if (!args.solver.empty()) {
    if (args.solver != "rk" && args.solver != "picard" && args.solver != "both")
      throw flrw::ScenarioError("--solver must be rk, picard, or both");
    sf.solver = args.solver;
  }
  if (args.grid > 0) sf.scenario.output_points = args.grid;
  if (args.tol > 0.0) {
    sf.scenario.tol.rel = args.tol;
    sf.scenario.tol.abs = 1e-2 * args.tol;
  }
  return sf;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");

  CLI::App app{"Semilinear field equations on expanding and contracting "
               "homogeneous backgrounds"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&args](CLI::App* sub, bool with_solver) {
    sub->add_option("--config", args.config, "JSON scenario file");
    sub->add_option("--out", args.out, "output CSV path ('-' for stdout)");
    if (with_solver) {
      sub->add_option("--solver", args.solver, "rk | picard | both");
      sub->add_option("--grid", args.grid, "output grid points");
      sub->add_option("--tol", args.tol,
                      "relative tolerance (absolute = tol/100)");
    }
  };

  CLI::App* c_classify = app.add_subcommand("classify", "background regime");
  add_common(c_classify, false);
  CLI::App* c_integrate =
      app.add_subcommand("integrate", "solve one scenario, emit CSV");
  add_common(c_integrate, true);
  CLI::App* c_sweep =
      app.add_subcommand("sweep", "blow-up study over a parameter grid");
  add_common(c_sweep, false);
  CLI::App* c_orbit =
      app.add_subcommand("orbit", "circular-orbit frequency numbers");
  add_common(c_orbit, false);
  CLI::App* c_budget =
      app.add_subcommand("budget", "guaranteed-existence span");
  add_common(c_budget, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const flrw::ScenarioFile sf = load_with_overrides(args);
    if (c_classify->parsed()) return flrw::cmd_classify(sf, std::cout);
    if (c_integrate->parsed())
      return flrw::cmd_integrate(sf, args.out, std::cout);
    if (c_sweep->parsed()) return flrw::cmd_sweep(sf, args.out, std::cout);
    if (c_orbit->parsed()) return flrw::cmd_orbit(sf, std::cout);
    if (c_budget->parsed()) return flrw::cmd_budget(sf, std::cout);
  } catch (const std::exception& ex) {
    std::cout << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
