// Adaptive integration of D^2 Y + A(t) Y + f(Y) = 0, the companion frame
// X = Y/a, blow-up detection with threshold escalation, and a change-of-
// variables residual audit.
#ifndef FLRW_DYNAMICS_HPP
#define FLRW_DYNAMICS_HPP

#include <string>
#include <vector>

#include "flrw/cosmology.hpp"
#include "flrw/nonlinearity.hpp"
#include "flrw/propagator.hpp"

namespace flrw {

struct Tolerances {
  double rel = 1e-8;
  double abs = 1e-10;
};

// One integration request.  Y0, Y1 are the initial value and rate in whatever
// frame the chosen integrator works in.  PowerScalar requires dimension 1.
struct Scenario {
  CosmologyParams cosmology;
  NonlinearitySpec nonlinearity;
  Vec Y0, Y1;
  double t_end = 10.0;
  Tolerances tol;
  double blow_threshold = 1e8;
  int output_points = 1001;
};

// Throws std::invalid_argument describing the first offending field.
void validate_scenario(const Scenario& s);

// Deterministic 16-hex-digit digest of every scenario field.
std::string scenario_hash(const Scenario& s);

enum class RunStatus { Completed, BlowUpDetected, HorizonReached, StepFloor };

// Samples on a uniform output grid.  The run stops early at a threshold
// crossing (grid truncated, final sample at the crossing estimate) or when
// the step controller underflows the minimum step 1e-12.  A t_end beyond the
// guarded horizon is clipped to it and reported as HorizonReached.
struct Trajectory {
  std::vector<double> t;
  std::vector<Vec> Y, DtY;
  RunStatus status = RunStatus::Completed;
  double blowup_t_estimate = 0.0;  // meaningful only for BlowUpDetected
  std::string params_hash;
  long steps_accepted = 0;
  long steps_rejected = 0;
};

// Y-frame integration of D^2 Y + A(t) Y + f(Y) = 0.
Trajectory integrate_Y(const Scenario& s);

// X-frame integration of D^2 X + q0(t) Dt X + a(t)^{p-1} f(X) = 0, with the
// scenario's (Y0, Y1) read as the X-frame initial data.
Trajectory integrate_X(const Scenario& s);

// Same equation as integrate_Y with an arbitrary coefficient in place of the
// background weight.
Trajectory integrate_weighted(const CoefficientFn& coeff,
                              const NonlinearitySpec& spec, const Vec& Y0,
                              const Vec& Y1, double t_end, Tolerances tol,
                              int output_points = 1001,
                              double blow_threshold = 1e8);

// Pointwise frame change along a trajectory: Y = a X, DtY = a DtX + (Dt a) X,
// and the inverse.  Grid, status, and hash carry over.
enum class FrameDirection { XtoY, YtoX };
Trajectory frame_map(const CosmologyParams& c, const Trajectory& traj,
                     FrameDirection dir);

// Residual of the logarithmic-time power substitution s = e^t, Z = Y s^-beta:
//   Z'' + (2 beta + 1)/s Z' + ((beta^2 + A(ln s))/s^2) Z
//      + lambda s^{beta(p-1)-2} |Z|^{p-1} Z,
// with Z', Z'' formed by non-uniform 3-point differences on the geometric
// s-grid.  Interior nodes only.  PowerVector nonlinearity required.
struct SubstitutionResidual {
  std::vector<double> s;
  std::vector<double> value;  // Euclidean norm of the residual vector
};
SubstitutionResidual emden_fowler_residual(const Scenario& sc,
                                           const Trajectory& traj, double beta);

// Blow-up bracketing by threshold escalation 1e4 / 1e6 / 1e8: crossing times
// t4 <= t6 <= t8 give gaps d1, d2; their ratio r = d2/d1 < 1 signals a
// power-law approach to a finite blow-up time, extrapolated to the bracket
// (t8, t8 + 2 d2 r / (1 - r)).  r >= 0.999 or a completed run reports
// NoBlowUpBefore with the time searched.
struct BlowUpEstimate {
  enum class Kind { Bracket, NoBlowUpBefore, StepFloor };
  Kind kind = Kind::NoBlowUpBefore;
  double t_low = 0.0;
  double t_high = 0.0;
  double searched_until = 0.0;
};
BlowUpEstimate estimate_blowup_time(const Scenario& s);

}  // namespace flrw

#endif
