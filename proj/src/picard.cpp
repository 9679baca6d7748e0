#include "flrw/picard.hpp"

#include <algorithm>
#include <cmath>

#include "flrw/quadrature.hpp"

namespace flrw {

namespace {

double uniform_step(const std::vector<double>& t) {
  if (t.size() < 2)
    throw std::invalid_argument("picard: need at least two samples");
  const double h = t[1] - t[0];
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::abs(t[k] - static_cast<double>(k) * h) >
        1e-9 * std::max(1.0, std::abs(t.back())))
      throw std::invalid_argument("picard: uniform grid required");
  return h;
}

}  // namespace

Trajectory apply_psi(const FundamentalPair& pair, const NonlinearitySpec& spec,
                     const Vec& Y0, const Vec& Y1, const Trajectory& Y) {
  if (Y0.size() != Y1.size())
    throw std::invalid_argument("apply_psi: Y0 and Y1 must share a dimension");
  const double h = uniform_step(Y.t);
  if (Y.t.back() > pair.t_end() * (1.0 + 1e-12))
    throw std::domain_error("apply_psi: grid leaves the propagator span");
  const std::size_t N = Y.t.size();

  std::vector<Vec> g0(N), g1(N);
  for (std::size_t k = 0; k < N; ++k) {
    const Vec f = eval_f(spec, Y.Y[k]);
    g0[k] = pair.rho0_at(Y.t[k]) * f;
    g1[k] = pair.rho1_at(Y.t[k]) * f;
  }
  const std::vector<Vec> F0 = cumulative_simpson(h, g0);
  const std::vector<Vec> F1 = cumulative_simpson(h, g1);

  Trajectory out;
  out.t = Y.t;
  out.status = Y.status;
  out.params_hash = Y.params_hash;
  out.Y.resize(N);
  out.DtY.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double t = Y.t[k];
    const double r0 = pair.rho0_at(t), r1 = pair.rho1_at(t);
    const double d0 = pair.drho0_at(t), d1 = pair.drho1_at(t);
    out.Y[k] = r0 * Y0 + r1 * Y1 - (r1 * F0[k] - r0 * F1[k]);
    out.DtY[k] = d0 * Y0 + d1 * Y1 - (d1 * F0[k] - d0 * F1[k]);
  }
  return out;
}

PicardResult solve_fixed_point(const FundamentalPair& pair,
                               const NonlinearitySpec& spec, const Vec& Y0,
                               const Vec& Y1, double T, int max_iter,
                               double tol, int grid_points) {
  if (!(T > 0.0) || T > pair.t_end() * (1.0 + 1e-12))
    throw std::domain_error("solve_fixed_point: T outside the propagator span");
  if (grid_points < 3)
    throw std::invalid_argument("solve_fixed_point: grid_points must be >= 3");
  if (max_iter < 1)
    throw std::invalid_argument("solve_fixed_point: max_iter must be >= 1");

  Trajectory cur;
  cur.t.resize(grid_points);
  cur.Y.resize(grid_points);
  cur.DtY.resize(grid_points);
  for (int k = 0; k < grid_points; ++k) {
    const double t = T * k / (grid_points - 1);
    cur.t[k] = t;
    cur.Y[k] = pair.rho0_at(t) * Y0 + pair.rho1_at(t) * Y1;
    cur.DtY[k] = pair.drho0_at(t) * Y0 + pair.drho1_at(t) * Y1;
  }

  PicardResult res;
  double prev_inc = kInfinity;
  int grow_streak = 0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    Trajectory nxt = apply_psi(pair, spec, Y0, Y1, cur);
    double inc = 0.0;
    for (int k = 0; k < grid_points; ++k) {
      inc = std::max(inc, (nxt.Y[k] - cur.Y[k]).norm());
      inc = std::max(inc, (nxt.DtY[k] - cur.DtY[k]).norm());
    }
    res.increments.push_back(inc);
    res.iterations = iter;
    res.final_increment = inc;
    cur = std::move(nxt);

    const bool grew = !std::isfinite(inc) || inc > prev_inc;
    grow_streak = grew ? grow_streak + 1 : 0;
    if (grow_streak >= 3)
      throw NonContractionError(
          "solve_fixed_point: increments grew for 3 consecutive iterations");
    if (inc < tol) {
      res.converged = true;
      break;
    }
    prev_inc = inc;
  }
  res.trajectory = std::move(cur);
  return res;
}

NormReport norm_X(const CosmologyParams& c, const Trajectory& traj) {
  const double h = uniform_step(traj.t);
  const std::size_t N = traj.t.size();
  const double A0 = weight_A(c, 0.0);
  const double slack = 1e-12 * std::max(1.0, std::abs(A0));

  NormReport rep;
  rep.data = std::sqrt(std::max(0.0, A0)) * traj.Y[0].norm() +
             traj.DtY[0].norm();
  if (A0 > 0.0)
    rep.data_prime = traj.Y[0].norm() + traj.DtY[0].norm() / std::sqrt(A0);
  else
    rep.data_prime =
        traj.DtY[0].norm() == 0.0 ? traj.Y[0].norm() : kInfinity;

  bool dec_ok = true, inc_ok = true;
  double sup_dty = 0.0, sup_sqa_y = 0.0, sup_y = 0.0, sup_dty_over = 0.0;
  std::vector<double> l2dec(N), l2inc(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double A = weight_A(c, traj.t[k]);
    const double dA = weight_A_rate(c, traj.t[k]);
    const double ny = traj.Y[k].norm();
    const double nv = traj.DtY[k].norm();
    if (A < -slack || dA > slack) dec_ok = false;
    if (!(A > 0.0) || dA < -slack) inc_ok = false;
    sup_dty = std::max(sup_dty, nv);
    sup_y = std::max(sup_y, ny);
    sup_sqa_y = std::max(sup_sqa_y, std::sqrt(std::max(0.0, A)) * ny);
    if (A > 0.0) sup_dty_over = std::max(sup_dty_over, nv / std::sqrt(A));
    l2dec[k] = std::max(0.0, -dA) * ny * ny;
    l2inc[k] = A > 0.0 ? std::max(0.0, dA) / (A * A) * nv * nv : 0.0;
  }
  if (dec_ok) {
    const std::vector<double> I = cumulative_trapezoid(h, l2dec);
    rep.x_norm = sup_dty + sup_sqa_y + std::sqrt(I.back());
  }
  if (inc_ok) {
    const std::vector<double> I = cumulative_trapezoid(h, l2inc);
    rep.xprime_norm = sup_dty_over + sup_y + std::sqrt(I.back());
  }
  return rep;
}

namespace {

// Span of the flat-background contraction with the fixed-point radii chosen
// to maximize it: inner radius closed form, outer radius by long ternary
// search on the log axis (the objective is unimodal there).
double flat_budget_span(double alpha, double C0, double p, double y0n,
                        double y1n) {
  auto value = [&](double R0) {
    const double R1 = std::max(2.0 * C0 * y1n, std::sqrt(0.5 * alpha) *
                                                   std::pow(R0, 0.5 * (p + 1.0)));
    const double x = alpha * std::pow(R0, p - 1.0);
    const double t12 = std::min(1.0 / x, 1.0 / std::sqrt(x));
    const double t34 =
        std::min(R1 / (alpha * std::pow(R0, p)), R0 / (2.0 * R1));
    return std::min(t12, t34);
  };

  const double R0min = 2.0 * y0n;
  const double S = std::max(
      {1.0, R0min, 2.0 * C0 * y1n, std::pow(alpha, -1.0 / (p - 1.0))});
  double lo = std::log(std::max(R0min, S * 1e-16));
  double hi = std::log(S * 1e16);
  for (int it = 0; it < 400; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (value(std::exp(m1)) < value(std::exp(m2)))
      lo = m1;
    else
      hi = m2;
  }
  double best = value(std::exp(0.5 * (lo + hi)));
  if (R0min > 0.0) best = std::max(best, value(R0min));
  return best;
}

}  // namespace

ExistenceBudget existence_budget(const CosmologyParams& c,
                                 const NonlinearitySpec& spec, const Vec& Y0,
                                 const Vec& Y1,
                                 const BudgetConstants& constants,
                                 double q_star) {
  if (Y0.size() != Y1.size())
    throw std::invalid_argument("existence_budget: dimension mismatch");
  if (!(spec.p > 1.0))
    throw std::domain_error("existence_budget: requires p > 1");
  if (!(constants.C0 > 0.0) || !(constants.C > 0.0))
    throw std::invalid_argument("existence_budget: constants must be positive");
  if (std::isnan(q_star))
    throw std::invalid_argument("existence_budget: q_star must not be NaN");

  const RegimeClass rc = classify(c);
  const Horizon hz = horizon(c);
  const double p = spec.p;
  const double lam = std::abs(spec.lambda);
  const bool sign_definite =
      spec.lambda == 0.0 ||
      (spec.lambda >= 0.0 && spec.kind == NonlinKind::PowerVector);

  ExistenceBudget b;
  b.constants = constants;
  b.q_star = q_star;

  switch (rc.case_tag) {
    case RegimeCase::I: {
      b.kind = BudgetKind::Expanding;
      const double inv_q = (q_star == kInfinity) ? 0.0 : 1.0 / q_star;
      if (!(q_star >= 1.0) || inv_q + 1e-15 < 1.0 - 0.5 * p)
        throw std::invalid_argument(
            "existence_budget: q_star needs 1 <= q_star and 1/q_star >= 1 - p/2");
      const double D =
          std::sqrt(weight_A(c, 0.0)) * Y0.norm() + Y1.norm();
      b.data = D;
      if (sign_definite || D == 0.0) {
        b.global = true;
        b.T_admissible = hz.t1;
        return b;
      }
      const double R = 2.0 * constants.C0 * D;
      const double T0abs = std::abs(*hz.t0);
      const double Cp =
          std::pow(2.0 * c.a1 / c.a0, -(p + 1.0) + inv_q) *
          (inv_q == 0.0 ? 1.0 : std::pow((p + 1.0) * q_star, -inv_q));
      const double g = 2.0 * constants.C * lam * Cp * std::pow(R, p - 1.0);
      if (q_star == kInfinity) {
        if (g >= 1.0) return b;  // no admissible span from this bound
        b.T_admissible = T0abs * (std::pow(g, -1.0 / (p + 1.0)) - 1.0);
        return b;
      }
      const double log_ratio = -q_star * std::log(g) - std::log(T0abs);
      const double log1p_term =
          log_ratio > 40.0 ? log_ratio : std::log1p(std::exp(log_ratio));
      b.T_admissible = T0abs * std::expm1(log1p_term / ((p + 1.0) * q_star));
      return b;
    }
    case RegimeCase::II:
    case RegimeCase::III: {
      b.kind = BudgetKind::Flat;
      const double y0n = Y0.norm(), y1n = Y1.norm();
      b.data = y0n + y1n;
      if (sign_definite || (y0n == 0.0 && y1n == 0.0)) {
        b.global = true;
        b.T_admissible = hz.t1;
        return b;
      }
      const double span =
          flat_budget_span(2.0 * constants.C * lam, constants.C0, p, y0n, y1n);
      if (span >= hz.t1) {
        b.global = true;
        b.T_admissible = hz.t1;
      } else {
        b.T_admissible = span;
      }
      return b;
    }
    case RegimeCase::IV: {
      b.kind = BudgetKind::Contracting;
      const double A0 = weight_A(c, 0.0);
      const double Dp = Y0.norm() + Y1.norm() / std::sqrt(A0);
      b.data = Dp;
      const double T0 = *hz.t0;
      if (sign_definite || Dp == 0.0) {
        b.global = true;
        b.T_admissible = T0;
        return b;
      }
      const double R = 2.0 * constants.C0 * Dp;
      const double kappa = 2.0 * constants.C * lam * (c.a0 / std::abs(c.a1)) *
                           std::pow(R, p - 1.0);
      if (kappa * T0 <= 1.0) {
        // The damping integral stays within budget over the whole lifetime.
        b.global = true;
        b.T_admissible = T0;
      } else if (0.5 * kappa * T0 <= 1.0) {
        b.T_admissible = T0;
      } else {
        b.T_admissible = T0 * (1.0 - std::sqrt(1.0 - 2.0 / (kappa * T0)));
      }
      return b;
    }
    default:
      throw std::domain_error(
          "existence_budget: background outside the supported sign regimes");
  }
}

}  // namespace flrw
