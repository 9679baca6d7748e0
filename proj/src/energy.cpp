#include "flrw/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "flrw/quadrature.hpp"

namespace flrw {

namespace {

double uniform_step(const std::vector<double>& t) {
  if (t.size() < 2)
    throw std::invalid_argument("energy: need at least two samples");
  const double h = t[1] - t[0];
  const double T = t.back();
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::abs(t[k] - static_cast<double>(k) * h) >
        1e-9 * std::max(1.0, std::abs(T)))
      throw std::invalid_argument("energy: uniform trajectory grid required");
  return h;
}

void finish(EnergyLedger& led, double h) {
  led.e1_integral = cumulative_trapezoid(h, led.e1);
  led.drift.resize(led.e0.size());
  for (std::size_t k = 0; k < led.e0.size(); ++k)
    led.drift[k] = led.e0[k] + led.e1_integral[k] - led.e0[0];
}

}  // namespace

EnergyLedger ledger_decreasing(const CosmologyParams& c,
                               const NonlinearitySpec& spec,
                               const Trajectory& traj) {
  if (spec.kind != NonlinKind::PowerVector)
    throw std::domain_error("ledger_decreasing: vector power law required");
  const double h = uniform_step(traj.t);
  const double slack = 1e-12 * std::max(1.0, std::abs(weight_A(c, 0.0)));

  EnergyLedger led;
  led.form = EnergyLedger::Form::Decreasing;
  led.t = traj.t;
  const double pot = spec.lambda / (spec.p + 1.0);
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const double A = weight_A(c, traj.t[k]);
    const double dA = weight_A_rate(c, traj.t[k]);
    if (A < -slack || dA > slack)
      throw std::domain_error(
          "ledger_decreasing: needs A >= 0 and DtA <= 0 on the grid");
    const double ny = traj.Y[k].norm();
    led.e0.push_back(0.5 * traj.DtY[k].squaredNorm() + 0.5 * A * ny * ny +
                     pot * std::pow(ny, spec.p + 1.0));
    led.e1.push_back(-0.5 * dA * ny * ny);
  }
  finish(led, h);
  return led;
}

EnergyLedger ledger_increasing(const CosmologyParams& c,
                               const NonlinearitySpec& spec,
                               const Trajectory& traj) {
  if (spec.kind != NonlinKind::PowerVector)
    throw std::domain_error("ledger_increasing: vector power law required");
  const double h = uniform_step(traj.t);
  const double slack = 1e-12 * std::max(1.0, std::abs(weight_A(c, 0.0)));

  EnergyLedger led;
  led.form = EnergyLedger::Form::Increasing;
  led.t = traj.t;
  const double pot = spec.lambda / (spec.p + 1.0);
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const double A = weight_A(c, traj.t[k]);
    const double dA = weight_A_rate(c, traj.t[k]);
    if (!(A > 0.0) || dA < -slack)
      throw std::domain_error(
          "ledger_increasing: needs A > 0 and DtA >= 0 on the grid");
    const double ny = traj.Y[k].norm();
    const double nv2 = traj.DtY[k].squaredNorm();
    const double yp1 = std::pow(ny, spec.p + 1.0);
    led.e0.push_back(0.5 * nv2 / A + 0.5 * ny * ny + pot * yp1 / A);
    led.e1.push_back(0.5 * dA * nv2 / (A * A) + pot * dA * yp1 / (A * A));
  }
  finish(led, h);
  return led;
}

EnergyLedger ledger_generic(const CosmologyParams& c,
                            const NonlinearitySpec& spec,
                            const Trajectory& traj) {
  // Truncated runs end off-grid, so this ledger integrates e1 with the
  // trapezoid rule over the actual sample times.
  if (traj.t.size() < 2)
    throw std::invalid_argument("energy: need at least two samples");
  for (std::size_t k = 1; k < traj.t.size(); ++k)
    if (!(traj.t[k] >= traj.t[k - 1]))
      throw std::invalid_argument("energy: sample times must be nondecreasing");
  EnergyLedger led;
  led.form = EnergyLedger::Form::Decreasing;
  led.t = traj.t;
  const double pot = spec.lambda / (spec.p + 1.0);
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const double A = weight_A(c, traj.t[k]);
    const double dA = weight_A_rate(c, traj.t[k]);
    const double ny = traj.Y[k].norm();
    double potential;
    if (spec.kind == NonlinKind::PowerScalar) {
      // d/dY of lambda |Y|^p Y/(p+1) is lambda |Y|^p on R^1.
      potential = pot * std::pow(ny, spec.p) * traj.Y[k][0];
    } else {
      potential = pot * std::pow(ny, spec.p + 1.0);
    }
    led.e0.push_back(0.5 * traj.DtY[k].squaredNorm() + 0.5 * A * ny * ny +
                     potential);
    led.e1.push_back(-0.5 * dA * ny * ny);
  }
  led.e1_integral.resize(led.e1.size(), 0.0);
  for (std::size_t k = 1; k < led.e1.size(); ++k)
    led.e1_integral[k] = led.e1_integral[k - 1] +
                         0.5 * (traj.t[k] - traj.t[k - 1]) *
                             (led.e1[k - 1] + led.e1[k]);
  led.drift.resize(led.e0.size());
  for (std::size_t k = 0; k < led.e0.size(); ++k)
    led.drift[k] = led.e0[k] + led.e1_integral[k] - led.e0[0];
  return led;
}

}  // namespace flrw
