#include "flrw/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flrw/quadrature.hpp"

namespace flrw {

namespace {

double eval_coeff(const CoefficientFn& coeff, double t) {
  const double v = coeff.eval(t);
  if (!std::isfinite(v))
    throw std::domain_error("propagator: coefficient evaluated non-finite");
  return v;
}

double hermite(double y0, double m0, double y1, double m1, double h,
               double th) {
  const double th2 = th * th;
  const double th3 = th2 * th;
  return (2.0 * th3 - 3.0 * th2 + 1.0) * y0 + (th3 - 2.0 * th2 + th) * h * m0 +
         (-2.0 * th3 + 3.0 * th2) * y1 + (th3 - th2) * h * m1;
}

}  // namespace

CoefficientFn coefficient_from(const CosmologyParams& c) {
  validate(c);
  return {[c](double t) { return weight_A(c, t); }, guarded_end(c)};
}

FundamentalPair build_fundamental(const CoefficientFn& coeff, double t_end,
                                  double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("build_fundamental: step must be positive");
  if (!(t_end > 0.0) || t_end > coeff.domain_end)
    throw std::domain_error(
        "build_fundamental: t_end outside the coefficient domain");
  const int N = std::max(1, static_cast<int>(std::ceil(t_end / step - 1e-12)));
  const double h = t_end / N;

  FundamentalPair P;
  P.step_ = h;
  P.grid_.resize(N + 1);
  P.avals_.resize(N + 1);
  P.rho0_.resize(N + 1);
  P.drho0_.resize(N + 1);
  P.rho1_.resize(N + 1);
  P.drho1_.resize(N + 1);

  for (int k = 0; k <= N; ++k) {
    P.grid_[k] = (k == N) ? t_end : k * h;
    P.avals_[k] = eval_coeff(coeff, P.grid_[k]);
  }
  P.rho0_[0] = 1.0;
  P.drho0_[0] = 0.0;
  P.rho1_[0] = 0.0;
  P.drho1_[0] = 1.0;

  // One classic fourth-order step for the 4-state (rho0, Drho0, rho1, Drho1);
  // the coefficient is shared by both columns, so evaluate it once per stage.
  for (int k = 0; k < N; ++k) {
    const double t = P.grid_[k];
    const double am = eval_coeff(coeff, std::min(t + 0.5 * h, t_end));
    const double a0v = P.avals_[k];
    const double a1v = P.avals_[k + 1];

    double y[4] = {P.rho0_[k], P.drho0_[k], P.rho1_[k], P.drho1_[k]};
    auto deriv = [](const double* u, double a, double* du) {
      du[0] = u[1];
      du[1] = -a * u[0];
      du[2] = u[3];
      du[3] = -a * u[2];
    };
    double k1[4], k2[4], k3[4], k4[4], tmp[4];
    deriv(y, a0v, k1);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    deriv(tmp, am, k2);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    deriv(tmp, am, k3);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * k3[i];
    deriv(tmp, a1v, k4);
    for (int i = 0; i < 4; ++i)
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    P.rho0_[k + 1] = y[0];
    P.drho0_[k + 1] = y[1];
    P.rho1_[k + 1] = y[2];
    P.drho1_[k + 1] = y[3];
  }
  return P;
}

double FundamentalPair::query(const std::vector<double>& val,
                              const std::vector<double>& slope,
                              double t) const {
  const double T = t_end();
  if (!(t >= 0.0) || t > T * (1.0 + 1e-12))
    throw std::domain_error("fundamental pair: query outside [0, t_end]");
  const std::size_t last = grid_.size() - 2;
  const std::size_t i =
      std::min(static_cast<std::size_t>(std::max(0.0, t / step_)), last);
  const double th = std::clamp((t - grid_[i]) / step_, 0.0, 1.0);
  return hermite(val[i], slope[i], val[i + 1], slope[i + 1], step_, th);
}

double FundamentalPair::query_slope(const std::vector<double>& val,
                                    const std::vector<double>& dval,
                                    double t) const {
  // Slope endpoints for Drho come from the equation: D^2 rho = -atilde rho.
  const double T = t_end();
  if (!(t >= 0.0) || t > T * (1.0 + 1e-12))
    throw std::domain_error("fundamental pair: query outside [0, t_end]");
  const std::size_t last = grid_.size() - 2;
  const std::size_t i =
      std::min(static_cast<std::size_t>(std::max(0.0, t / step_)), last);
  const double th = std::clamp((t - grid_[i]) / step_, 0.0, 1.0);
  return hermite(dval[i], -avals_[i] * val[i], dval[i + 1],
                 -avals_[i + 1] * val[i + 1], step_, th);
}

double FundamentalPair::rho0_at(double t) const {
  return query(rho0_, drho0_, t);
}
double FundamentalPair::drho0_at(double t) const {
  return query_slope(rho0_, drho0_, t);
}
double FundamentalPair::rho1_at(double t) const {
  return query(rho1_, drho1_, t);
}
double FundamentalPair::drho1_at(double t) const {
  return query_slope(rho1_, drho1_, t);
}

double wronskian(const FundamentalPair& pair, double t) {
  return pair.rho0_at(t) * pair.drho1_at(t) -
         pair.rho1_at(t) * pair.drho0_at(t);
}

double kernel_rho12(const FundamentalPair& pair, double t, double s) {
  if (!(s >= 0.0) || s > t * (1.0 + 1e-12))
    throw std::domain_error("kernel_rho12: requires 0 <= s <= t");
  return -pair.rho0_at(t) * pair.rho1_at(s) + pair.rho1_at(t) * pair.rho0_at(s);
}

double kernel_rho22(const FundamentalPair& pair, double t, double s) {
  if (!(s >= 0.0) || s > t * (1.0 + 1e-12))
    throw std::domain_error("kernel_rho22: requires 0 <= s <= t");
  return -pair.drho0_at(t) * pair.rho1_at(s) +
         pair.drho1_at(t) * pair.rho0_at(s);
}

ForcedSolution duhamel(const FundamentalPair& pair, double rho_init,
                       double drho_init, const std::vector<double>& b) {
  const std::vector<double>& g = pair.grid();
  if (b.size() != g.size())
    throw std::invalid_argument("duhamel: forcing must be sampled on the grid");
  const std::size_t N = g.size();
  std::vector<double> g0(N), g1(N);
  for (std::size_t k = 0; k < N; ++k) {
    g0[k] = pair.rho0_at(g[k]) * b[k];
    g1[k] = pair.rho1_at(g[k]) * b[k];
  }
  // int_0^t rho12(t,s) b(s) ds = rho1(t) int rho0 b - rho0(t) int rho1 b.
  const std::vector<double> F0 = cumulative_simpson(pair.step(), g0);
  const std::vector<double> F1 = cumulative_simpson(pair.step(), g1);

  ForcedSolution out;
  out.value.resize(N);
  out.rate.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double t = g[k];
    const double r0 = pair.rho0_at(t), r1 = pair.rho1_at(t);
    const double d0 = pair.drho0_at(t), d1 = pair.drho1_at(t);
    out.value[k] = r0 * rho_init + r1 * drho_init + (r1 * F0[k] - r0 * F1[k]);
    out.rate[k] = d0 * rho_init + d1 * drho_init + (d1 * F0[k] - d0 * F1[k]);
  }
  return out;
}

PeanoBakerResult peano_baker(const CoefficientFn& coeff, double t, int terms,
                             int quad_points) {
  if (terms < 1) throw std::invalid_argument("peano_baker: terms must be >= 1");
  if (quad_points < 2)
    throw std::invalid_argument("peano_baker: quad_points must be >= 2");
  if (!(t >= 0.0) || t > coeff.domain_end)
    throw std::domain_error("peano_baker: t outside the coefficient domain");

  PeanoBakerResult res;
  if (t == 0.0) {
    res.phi = {{{1.0, 0.0}, {0.0, 1.0}}};
    res.converged = true;
    return res;
  }

  const int M = quad_points + (quad_points % 2);  // even panel count
  const double h = t / M;
  std::vector<double> a(M + 1);
  for (int k = 0; k <= M; ++k) a[k] = eval_coeff(coeff, k * h);

  // Current term tabulated entrywise on the nodes; level m is the running
  // integral of [[0,1],[-atilde,0]] times level m-1.
  std::vector<double> c00(M + 1, 1.0), c01(M + 1, 0.0), c10(M + 1, 0.0),
      c11(M + 1, 1.0);
  double s00 = 1.0, s01 = 0.0, s10 = 0.0, s11 = 1.0;

  for (int m = 1; m <= terms; ++m) {
    std::vector<double> g00(M + 1), g01(M + 1), g10(M + 1), g11(M + 1);
    for (int k = 0; k <= M; ++k) {
      g00[k] = c10[k];
      g01[k] = c11[k];
      g10[k] = -a[k] * c00[k];
      g11[k] = -a[k] * c01[k];
    }
    c00 = cumulative_simpson(h, g00);
    c01 = cumulative_simpson(h, g01);
    c10 = cumulative_simpson(h, g10);
    c11 = cumulative_simpson(h, g11);
    s00 += c00[M];
    s01 += c01[M];
    s10 += c10[M];
    s11 += c11[M];
    res.terms = m;
    res.last_term_norm =
        std::max(std::max(std::abs(c00[M]), std::abs(c01[M])),
                 std::max(std::abs(c10[M]), std::abs(c11[M])));
    if (res.last_term_norm < 1e-10) {
      res.converged = true;
      break;
    }
  }

  res.phi = {{{s00, s01}, {s10, s11}}};
  return res;
}

int BoundReport::total_violations() const {
  int n = 0;
  for (const BoundCheck& c : checks) n += c.violations;
  return n;
}

BoundReport check_bounds(const FundamentalPair& pair, WeightTrend trend) {
  const std::vector<double>& g = pair.grid();
  const std::size_t N = g.size();
  BoundReport rep;

  const double scale = std::max(1.0, std::abs(pair.coefficient_at_node(0)));
  for (std::size_t k = 0; k < N; ++k) {
    const double ak = pair.coefficient_at_node(k);
    if (ak < -1e-12 * scale) {
      rep.note = "coefficient is negative on the grid";
      return rep;
    }
    if (k == 0) continue;
    const double prev = pair.coefficient_at_node(k - 1);
    if (trend == WeightTrend::Decreasing && ak > prev + 1e-12 * scale) {
      rep.note = "coefficient is not nonincreasing on the grid";
      return rep;
    }
    if (trend == WeightTrend::Increasing && ak < prev - 1e-12 * scale) {
      rep.note = "coefficient is not nondecreasing on the grid";
      return rep;
    }
  }
  rep.applicable = true;

  const double A0 = std::max(0.0, pair.coefficient_at_node(0));
  if (trend == WeightTrend::Decreasing) {
    rep.checks[0].name = "|rho0| <= sqrt(a(0)/a(t))";
    rep.checks[1].name = "|Drho0| <= sqrt(a(0))";
    rep.checks[2].name = "|rho1| <= 1/sqrt(a(t))";
    rep.checks[3].name = "|Drho1| <= 1";
  } else {
    rep.checks[0].name = "|rho0| <= 1";
    rep.checks[1].name = "|Drho0| <= sqrt(a(t))";
    rep.checks[2].name = "|rho1| <= 1/sqrt(a(0))";
    rep.checks[3].name = "|Drho1| <= sqrt(a(t)/a(0))";
  }

  auto audit = [&rep](int idx, double value, double limit) {
    BoundCheck& c = rep.checks[idx];
    if (!std::isfinite(limit)) {
      ++c.skipped;
      return;
    }
    ++c.checked;
    const double margin = value - limit;
    c.worst_margin = std::max(c.worst_margin, margin);
    if (margin > 1e-10 * std::max(1.0, limit)) ++c.violations;
  };

  for (std::size_t k = 0; k < N; ++k) {
    const double t = g[k];
    const double At = std::max(0.0, pair.coefficient_at_node(k));
    const double r0 = std::abs(pair.rho0_at(t));
    const double d0 = std::abs(pair.drho0_at(t));
    const double r1 = std::abs(pair.rho1_at(t));
    const double d1 = std::abs(pair.drho1_at(t));
    if (trend == WeightTrend::Decreasing) {
      audit(0, r0, At > 0.0 ? std::sqrt(A0 / At) : kInfinity);
      audit(1, d0, std::sqrt(A0));
      audit(2, r1, At > 0.0 ? 1.0 / std::sqrt(At) : kInfinity);
      audit(3, d1, 1.0);
    } else {
      audit(0, r0, 1.0);
      audit(1, d0, std::sqrt(At));
      audit(2, r1, A0 > 0.0 ? 1.0 / std::sqrt(A0) : kInfinity);
      audit(3, d1, A0 > 0.0 ? std::sqrt(At / A0) : kInfinity);
    }
  }
  return rep;
}

}  // namespace flrw
