// Scenario files, CSV emission, the sweep engine, and the command bodies
// behind the command-line driver.
#ifndef FLRW_SCENARIO_HPP
#define FLRW_SCENARIO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flrw/desitter.hpp"
#include "flrw/dynamics.hpp"
#include "flrw/energy.hpp"
#include "flrw/picard.hpp"

namespace flrw {

// Configuration problems carry the offending key in the message.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BudgetRequest {
  BudgetConstants constants;
  double q_star = kInfinity;
};

// One parsed configuration file.  Sections are optional; each command checks
// for the sections it needs.  Sweep axes default to the scenario's fixed
// values when absent.
struct ScenarioFile {
  Scenario scenario;
  std::string solver = "rk";  // rk | picard | both
  BudgetRequest budget;
  std::vector<double> sweep_lambda, sweep_p, sweep_y0, sweep_y1;
  OrbitConfig orbit = solar_orbit();
  bool has_cosmology = false;
  bool has_nonlinearity = false;
  bool has_initial = false;
};

// Throw ScenarioError on malformed input.
ScenarioFile parse_scenario_json(const std::string& text);
ScenarioFile load_scenario_file(const std::string& path);

// Columns t, Y_1..Y_n, DtY_1..DtY_n, e0, drift with 17 significant digits;
// reruns of the same scenario emit byte-identical files.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const EnergyLedger& led);

// One sweep cell: data magnitudes are signed multiples of the first basis
// vector.  status is bracket | no_blowup | stepfloor | error.
struct SweepCell {
  double lambda = 0.0, p = 0.0, y0 = 0.0, y1 = 0.0;
  std::string status;
  double t_low = 0.0, t_high = 0.0, searched_until = 0.0;
  std::optional<double> budget_T;
  bool budget_global = false;
  std::string message;
};

// Worker threads are capped by FLRW_ODE_THREADS (default: hardware
// concurrency); cell order in the result is the loop order lambda, p, y0, y1
// regardless of thread count.
int sweep_thread_cap();
std::vector<SweepCell> run_sweep(const ScenarioFile& sf);
void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);

// Command bodies.  Human-readable report lines go to `report`; CSV payloads
// go to the given path ("" or "-" for stdout).  Returned exit codes:
//   0 success, 1 configuration or scenario error, 2 solver failure,
//   3 invariant violation detected.
int cmd_classify(const ScenarioFile& sf, std::ostream& report);
int cmd_integrate(const ScenarioFile& sf, const std::string& out_path,
                  std::ostream& report);
int cmd_sweep(const ScenarioFile& sf, const std::string& out_path,
              std::ostream& report);
int cmd_orbit(const ScenarioFile& sf, std::ostream& report);
int cmd_budget(const ScenarioFile& sf, std::ostream& report);

}  // namespace flrw

#endif
