// Fixed-point solution map Psi, its iteration, solution-space norms, and
// heuristic existence budgets instantiating the contraction argument.
#ifndef FLRW_PICARD_HPP
#define FLRW_PICARD_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "flrw/dynamics.hpp"
#include "flrw/propagator.hpp"

namespace flrw {

// Thrown when fixed-point increments grow for three consecutive iterations.
class NonContractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One application of
//   Psi(Y)(t) = rho0(t) Y0 + rho1(t) Y1 - int_0^t rho12(t, s) f(Y(s)) ds,
// with the t-derivative using rho22 in the kernel slot.  The integral splits
// through the kernel into two cumulative Simpson sweeps, so a full
// application costs O(grid) kernel-free work.  The input trajectory must sit
// on a uniform grid inside the pair's span.
Trajectory apply_psi(const FundamentalPair& pair, const NonlinearitySpec& spec,
                     const Vec& Y0, const Vec& Y1, const Trajectory& Y);

// Iterates Psi from the homogeneous solution until the sup-norm increment
// falls below tol.  lambda = 0 converges in exactly one iteration.
struct PicardResult {
  Trajectory trajectory;
  int iterations = 0;
  double final_increment = 0.0;
  std::vector<double> increments;
  bool converged = false;
};
PicardResult solve_fixed_point(const FundamentalPair& pair,
                               const NonlinearitySpec& spec, const Vec& Y0,
                               const Vec& Y1, double T, int max_iter = 64,
                               double tol = 1e-12, int grid_points = 1001);

// Solution-space norms over the trajectory's span [0, T]:
//   x_norm      = ||DtY||_inf + ||sqrt(A) Y||_inf + ||sqrt(-DtA) Y||_L2
//                 (defined when A >= 0 and DtA <= 0 on the grid),
//   xprime_norm = ||DtY/sqrt(A)||_inf + ||Y||_inf + ||sqrt(DtA) DtY / A||_L2
//                 (defined when A > 0 and DtA >= 0 on the grid).
// data  = sqrt(A(0)) |Y(0)| + |DtY(0)|;  data_prime = |Y(0)| + |DtY(0)| /
// sqrt(A(0)) (kInfinity when A(0) = 0 and DtY(0) != 0).  Sups and the
// trapezoid L2 pieces are taken over the trajectory grid.
struct NormReport {
  std::optional<double> x_norm;
  std::optional<double> xprime_norm;
  double data = 0.0;
  double data_prime = 0.0;
};
NormReport norm_X(const CosmologyParams& c, const Trajectory& traj);

// Heuristic guaranteed-existence spans from the contraction argument, one
// budget per background regime.  The argument's unspecified absolute
// constants are taken as C0 (homogeneous propagation) and C (Duhamel and
// Lipschitz aggregation), both defaulting to 1; |lambda| enters explicitly.
// The returned spans are planning numbers, not certified bounds, and they
// shrink monotonically as the data size or |lambda| grows.
//
//   Expanding   (case I):   fixed-point radius R = 2 C0 (sqrt(A(0))|Y0| +
//     |Y1|), decay exponent q_star in [1, inf] with 1/q_star >= 1 - p/2.
//   Flat        (case II/III): radii (R0, R1) >= (2|Y0|, 2 C0 |Y1|) chosen to
//     maximize the admissible span.
//   Contracting (case IV):  R = 2 C0 (|Y0| + |Y1|/sqrt(A(0))), span solving
//     kappa T (1 - T/(2 T0)) = 1 when the whole lifetime is not admissible.
//
// global means the budget certifies the entire lifetime: a sign-definite
// vector nonlinearity (lambda >= 0), lambda = 0, vanishing data, or a span
// formula reaching T1.  T_admissible is nullopt when the bound yields no
// span at all (possible only for q_star = inf with large data).
enum class BudgetKind { Expanding, Flat, Contracting };

struct BudgetConstants {
  double C0 = 1.0;
  double C = 1.0;
};

struct ExistenceBudget {
  BudgetKind kind = BudgetKind::Flat;
  std::optional<double> T_admissible;
  bool global = false;
  double data = 0.0;
  double q_star = kInfinity;
  BudgetConstants constants;
};

ExistenceBudget existence_budget(const CosmologyParams& c,
                                 const NonlinearitySpec& spec, const Vec& Y0,
                                 const Vec& Y1,
                                 const BudgetConstants& constants = {},
                                 double q_star = kInfinity);

}  // namespace flrw

#endif
