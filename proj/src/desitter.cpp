#include "flrw/desitter.hpp"

#include <cmath>

namespace flrw {

Vec exact_p1(double H, double lambda, const Vec& Y0, const Vec& Y1, double t) {
  if (!std::isfinite(H) || !std::isfinite(lambda) || !std::isfinite(t))
    throw std::invalid_argument("exact_p1: arguments must be finite");
  if (Y0.size() != Y1.size())
    throw std::invalid_argument("exact_p1: dimension mismatch");
  const double s = lambda - H * H;
  if (s > 0.0) {
    const double w = std::sqrt(s);
    return std::cos(w * t) * Y0 + (std::sin(w * t) / w) * Y1;
  }
  if (s == 0.0) return Y0 + t * Y1;
  const double mu = std::sqrt(-s);
  const Vec B = 0.5 * (Y0 + Y1 / mu);
  const Vec C = 0.5 * (Y0 - Y1 / mu);
  return std::exp(mu * t) * B + std::exp(-mu * t) * C;
}

DeSitterExact exact_orbit(double H, double lambda, double p,
                          const Eigen::Vector2d& Y0,
                          const Eigen::Vector2d& Y1) {
  if (p == 1.0)
    throw std::invalid_argument("exact_orbit: p = 1 is the linear branch");
  const double R = Y0.norm();
  if (!(R > 0.0))
    throw std::domain_error("exact_orbit: needs a nonzero radius |Y0|");

  DeSitterExact e;
  e.R = R;
  e.delta = std::atan2(Y0.y(), Y0.x());
  const double s = lambda * std::pow(R, p - 1.0) - H * H;
  if (s < 0.0) return e;  // NullOnly

  if (s == 0.0) {
    if (Y1.norm() > 1e-10 * std::max(1.0, R))
      throw ConsistencyError(
          "exact_orbit: the stationary branch requires Y1 = 0");
    e.branch = DeSitterExact::Branch::ConstantOrbit;
    return e;
  }

  const double w = std::sqrt(s);
  const double speed_scale = std::max(1.0, R * w);
  if (std::abs(Y0.dot(Y1)) > 1e-10 * std::max(1.0, R) * speed_scale)
    throw ConsistencyError("exact_orbit: Y0 . Y1 = 0 fails");
  if (std::abs(Y1.norm() - R * w) > 1e-10 * speed_scale)
    throw ConsistencyError("exact_orbit: |Y1| = R omega fails");

  const double cross = Y0.x() * Y1.y() - Y0.y() * Y1.x();
  e.branch = DeSitterExact::Branch::Orbit;
  e.omega = cross < 0.0 ? -w : w;
  return e;
}

Eigen::Vector2d orbit_position(const DeSitterExact& e, double t) {
  if (e.branch == DeSitterExact::Branch::NullOnly)
    throw std::domain_error("orbit_position: no circular solution here");
  const double ph = e.omega * t + e.delta;
  return {e.R * std::cos(ph), e.R * std::sin(ph)};
}

Eigen::Vector2d orbit_velocity(const DeSitterExact& e, double t) {
  if (e.branch == DeSitterExact::Branch::NullOnly)
    throw std::domain_error("orbit_velocity: no circular solution here");
  const double ph = e.omega * t + e.delta;
  return {-e.R * e.omega * std::sin(ph), e.R * e.omega * std::cos(ph)};
}

double hubble_per_second(double km_per_s_per_Mpc) {
  return km_per_s_per_Mpc / kMpcInKm;
}

OrbitConfig solar_orbit() {
  OrbitConfig cfg;
  cfg.H = hubble_per_second(70.0);
  return cfg;
}

OrbitNumbers orbit_omega(const OrbitConfig& cfg) {
  if (!(cfg.G > 0.0) || !(cfg.M > 0.0) || !(cfg.R > 0.0) || !(cfg.T > 0.0) ||
      !(cfg.H >= 0.0))
    throw std::invalid_argument("orbit_omega: G, M, R, T > 0 and H >= 0");
  const double kepler2 = cfg.G * cfg.M / (cfg.R * cfg.R * cfg.R);
  const double h2 = cfg.H * cfg.H;
  if (kepler2 <= h2)
    throw std::domain_error("orbit_omega: expansion dominates, no orbit");
  OrbitNumbers out;
  out.omega = std::sqrt(kepler2 - h2);
  out.omega_T = std::sqrt(kepler2) * cfg.T;
  out.correction = h2 / kepler2;
  return out;
}

WeakVerdict weak_blowup_verdict(double H, double lambda, double p, double Y0,
                                double Y1) {
  if (!(H >= 0.0))
    throw std::domain_error("weak_blowup_verdict: requires H >= 0");
  if (!(lambda > 0.0))
    throw std::domain_error("weak_blowup_verdict: requires lambda > 0");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("weak_blowup_verdict: requires 1 < p < inf");
  if (H * Y0 + Y1 <= 0.0 && !(Y0 == 0.0 && Y1 == 0.0))
    return WeakVerdict::NoGlobalWeakSolution;
  return WeakVerdict::Inconclusive;
}

bool x_frame_condition(double H, double X0, double X1) {
  return X1 + 2.0 * H * X0 <= 0.0;
}

}  // namespace flrw
