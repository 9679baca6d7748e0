// Exact solutions on the exponentially expanding background a = a0 e^{Ht}
// (weight A = -H^2): the linear branches, circular-orbit family, the
// Keplerian frequency correction, and a no-global-weak-solution test.
#ifndef FLRW_DESITTER_HPP
#define FLRW_DESITTER_HPP

#include <stdexcept>

#include "flrw/nonlinearity.hpp"

namespace flrw {

// Thrown when initial data fail the orbit-family compatibility checks.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solution of D^2 Y - H^2 Y + lambda Y = 0 (vector power law with p = 1):
//   lambda > H^2:  trigonometric,  lambda == H^2: affine,
//   lambda < H^2:  hyperbolic.   Branch selection is exact in floating point.
Vec exact_p1(double H, double lambda, const Vec& Y0, const Vec& Y1, double t);

// Circular solutions of D^2 Y - H^2 Y + lambda |Y|^{p-1} Y = 0 in the plane,
// p != 1, keyed on s = lambda R^{p-1} - H^2 with R = |Y0|:
//   s > 0   Orbit          Y = R (cos(omega t + delta), sin(omega t + delta)),
//                          |omega| = sqrt(s), sign from the orientation of
//                          (Y0, Y1); data must satisfy Y0 . Y1 = 0 and
//                          |Y1| = R |omega| within 1e-10 (scaled), else
//                          ConsistencyError.
//   s == 0  ConstantOrbit  stationary solution, requires Y1 = 0.
//   s < 0   NullOnly       no circular solution with this radius.
struct DeSitterExact {
  enum class Branch { Orbit, ConstantOrbit, NullOnly };
  Branch branch = Branch::NullOnly;
  double R = 0.0;
  double omega = 0.0;
  double delta = 0.0;
};

DeSitterExact exact_orbit(double H, double lambda, double p,
                          const Eigen::Vector2d& Y0,
                          const Eigen::Vector2d& Y1);

Eigen::Vector2d orbit_position(const DeSitterExact& e, double t);
Eigen::Vector2d orbit_velocity(const DeSitterExact& e, double t);

// Keplerian circular orbit of radius R around mass M on the expanding
// background: omega = sqrt(G M / R^3 - H^2).  Units are the caller's; the
// solar defaults use km, kg, s.
struct OrbitConfig {
  double G = 6.67408e-20;  // km^3 kg^-1 s^-2
  double M = 1.9884e30;    // kg
  double R = 1.496e8;      // km
  double H = 0.0;          // 1/s
  double T = 3.1556925e7;  // s, the span omega is reported against
};

inline constexpr double kMpcInKm = 3.085677581e19;

// 70 km/s/Mpc expressed in 1/s, and the solar defaults carrying it.
double hubble_per_second(double km_per_s_per_Mpc);
OrbitConfig solar_orbit();

// omega, the accumulated phase omega T, and the relative frequency
// correction H^2 R^3/(G M) (omega = sqrt(GM/R^3) sqrt(1 - correction)).
struct OrbitNumbers {
  double omega = 0.0;
  double omega_T = 0.0;
  double correction = 0.0;
};
OrbitNumbers orbit_omega(const OrbitConfig& cfg);

// Scalar power law on R^1, lambda > 0, 1 < p < inf, H >= 0: data with
// H Y0 + Y1 <= 0 and (Y0, Y1) != (0, 0) admit no global weak solution.
enum class WeakVerdict { NoGlobalWeakSolution, Inconclusive };
WeakVerdict weak_blowup_verdict(double H, double lambda, double p, double Y0,
                                double Y1);

// The same criterion phrased for X = Y e^{-Ht} data: X1 + 2 H X0 <= 0.
bool x_frame_condition(double H, double X0, double X1);

}  // namespace flrw

#endif
