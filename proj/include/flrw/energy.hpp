// Energy ledgers: pointwise energy density, its exchange rate, and the
// conservation drift  e0(t) + int_0^t e1 ds - e0(0)  along a trajectory.
#ifndef FLRW_ENERGY_HPP
#define FLRW_ENERGY_HPP

#include <vector>

#include "flrw/dynamics.hpp"

namespace flrw {

// Two audited forms, named for the monotonicity of the weight they require:
//   Decreasing (A >= 0, DtA <= 0):
//     e0 = |DtY|^2/2 + A |Y|^2/2 + lambda |Y|^{p+1}/(p+1),
//     e1 = -(DtA) |Y|^2 / 2.
//   Increasing (A > 0, DtA >= 0):
//     e0 = |DtY|^2/(2A) + |Y|^2/2 + lambda |Y|^{p+1}/((p+1) A),
//     e1 = (DtA) |DtY|^2/(2A^2) + lambda (DtA) |Y|^{p+1}/((p+1) A^2).
// Both obey e0(t) + int_0^t e1 = e0(0) along exact solutions; the integral is
// the cumulative trapezoid on the uniform trajectory grid.
struct EnergyLedger {
  enum class Form { Decreasing, Increasing };
  Form form = Form::Decreasing;
  std::vector<double> t, e0, e1, e1_integral, drift;
};

// Require the vector power law and the stated weight signs on the grid
// (1e-12 relative slack); throw std::domain_error otherwise.
EnergyLedger ledger_decreasing(const CosmologyParams& c,
                               const NonlinearitySpec& spec,
                               const Trajectory& traj);
EnergyLedger ledger_increasing(const CosmologyParams& c,
                               const NonlinearitySpec& spec,
                               const Trajectory& traj);

// Reporting ledger with no sign gates: the Decreasing form, with the
// potential  lambda |Y|^p Y / (p+1)  substituted for the scalar law on R^1.
// The drift column of CSV output comes from here.
EnergyLedger ledger_generic(const CosmologyParams& c,
                            const NonlinearitySpec& spec,
                            const Trajectory& traj);

}  // namespace flrw

#endif
