// Fundamental solution pair of D^2 rho + atilde(t) rho = 0, Duhamel kernels,
// a Peano-Baker series evaluator, and decay/growth bound audits.
#ifndef FLRW_PROPAGATOR_HPP
#define FLRW_PROPAGATOR_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "flrw/cosmology.hpp"

namespace flrw {

// Time-dependent coefficient atilde(t) with its admissible right endpoint.
struct CoefficientFn {
  std::function<double(double)> eval;
  double domain_end = kInfinity;
};

// atilde = weight_A of a background, clipped at the guarded horizon.
CoefficientFn coefficient_from(const CosmologyParams& c);

// rho0, rho1 with rho0(0) = 1, Drho0(0) = 0, rho1(0) = 0, Drho1(0) = 1,
// tabulated on a uniform grid by a fixed-step fourth-order march.  Queries
// between nodes use cubic Hermite interpolation of the stored values and
// derivatives; derivative queries get their Hermite slopes from the equation
// itself (D^2 rho = -atilde rho).  Errors are O(step^4).
class FundamentalPair {
 public:
  double t_end() const { return grid_.back(); }
  double step() const { return step_; }
  const std::vector<double>& grid() const { return grid_; }
  double coefficient_at_node(std::size_t k) const { return avals_[k]; }

  double rho0_at(double t) const;
  double drho0_at(double t) const;
  double rho1_at(double t) const;
  double drho1_at(double t) const;

 private:
  friend FundamentalPair build_fundamental(const CoefficientFn&, double,
                                           double);
  std::vector<double> grid_, avals_;
  std::vector<double> rho0_, drho0_, rho1_, drho1_;
  double step_ = 0.0;

  double query(const std::vector<double>& val, const std::vector<double>& slope,
               double t) const;
  double query_slope(const std::vector<double>& val,
                     const std::vector<double>& dval, double t) const;
};

// Marches both solutions over [0, t_end].  The actual step divides t_end
// evenly and never exceeds the requested one.  Throws std::invalid_argument
// for a non-positive step and std::domain_error when t_end leaves the
// coefficient's domain or the coefficient evaluates non-finite.
FundamentalPair build_fundamental(const CoefficientFn& coeff, double t_end,
                                  double step);

// det [[rho0, rho1], [Drho0, Drho1]](t); identically 1 for the true pair.
double wronskian(const FundamentalPair& pair, double t);

// Duhamel kernels: rho12(t,s) = -rho0(t) rho1(s) + rho1(t) rho0(s) and its
// t-derivative rho22(t,s) = -Drho0(t) rho1(s) + Drho1(t) rho0(s).
// Require 0 <= s <= t <= t_end.
double kernel_rho12(const FundamentalPair& pair, double t, double s);
double kernel_rho22(const FundamentalPair& pair, double t, double s);

// Solution of D^2 rho + atilde rho = b with rho(0), Drho(0) given, sampled on
// the pair's grid:  rho(t) = rho0 rho(0) + rho1 Drho(0) + int_0^t rho12 b ds.
// b holds the forcing at the grid nodes.
struct ForcedSolution {
  std::vector<double> value, rate;
};
ForcedSolution duhamel(const FundamentalPair& pair, double rho_init,
                       double drho_init, const std::vector<double>& b);

// Truncated Peano-Baker series for the companion system U' = [[0,1],
// [-atilde,0]] U: Phi = sum of iterated integrals, evaluated level by level
// with cumulative Simpson quadrature on quad_points panels.  last_term_norm
// is the max-abs entry of the final added term at t; the series is accepted
// as converged when that falls below 1e-10.
struct PeanoBakerResult {
  std::array<std::array<double, 2>, 2> phi{};
  double last_term_norm = 0.0;
  int terms = 0;
  bool converged = false;
};
PeanoBakerResult peano_baker(const CoefficientFn& coeff, double t, int terms,
                             int quad_points);

// Four pointwise bounds on the pair, audited at every grid node.
//
// Decreasing trend (needs atilde >= 0 nonincreasing on the grid):
//   |rho0| <= sqrt(atilde(0)/atilde(t)),  |Drho0| <= sqrt(atilde(0)),
//   |rho1| <= 1/sqrt(atilde(t)),          |Drho1| <= 1.
// Increasing trend (needs atilde >= 0 nondecreasing on the grid):
//   |rho0| <= 1,                          |Drho0| <= sqrt(atilde(t)),
//   |rho1| <= 1/sqrt(atilde(0)),          |Drho1| <= sqrt(atilde(t)/atilde(0)).
//
// Nodes where the stated limit is infinite (vanishing coefficient in a
// denominator) are counted as skipped.  A violation is a value exceeding its
// limit by more than 1e-10 * max(1, limit).
enum class WeightTrend { Decreasing, Increasing };

struct BoundCheck {
  std::string name;
  int checked = 0;
  int skipped = 0;
  int violations = 0;
  double worst_margin = -kInfinity;  // max over nodes of value - limit
};

struct BoundReport {
  bool applicable = false;  // sign/monotonicity precondition held on the grid
  std::string note;
  std::array<BoundCheck, 4> checks{};
  int total_violations() const;
};

BoundReport check_bounds(const FundamentalPair& pair, WeightTrend trend);

}  // namespace flrw

#endif
