#include "flrw/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace flrw {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights for the quartic interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

constexpr double kStepFloor = 1e-12;
constexpr long kMaxSteps = 50'000'000;

using Rhs = std::function<void(double, const Vec&, Vec&)>;

struct CoreSetup {
  int ndim = 1;
  double t_run = 1.0;
  Tolerances tol;
  int output_points = 1001;
  double blow_threshold = 1e8;
  std::string hash;
};

struct DenseStep {
  Vec c1, c2, c3, c4, c5;
  double t0 = 0.0, h = 0.0;
  Vec at(double theta) const {
    return c1 + theta * (c2 + (1.0 - theta) * (c3 + theta * (c4 + (1.0 - theta) * c5)));
  }
};

Trajectory run_core(const Rhs& rhs, const Vec& Y0, const Vec& Y1,
                    const CoreSetup& cfg) {
  const int n = cfg.ndim;
  const int dim = 2 * n;
  const double T = cfg.t_run;
  const double hmax = T / 10.0;
  const double rel = cfg.tol.rel, abs = cfg.tol.abs;

  Trajectory out;
  out.params_hash = cfg.hash;
  const int nout = cfg.output_points;
  const double dt_out = T / (nout - 1);

  Vec u(dim);
  u.head(n) = Y0;
  u.tail(n) = Y1;
  Vec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  Vec utmp(dim), u5(dim), errv(dim);

  double t = 0.0;
  rhs(t, u, k1);

  auto push_sample = [&](double ts, const Vec& us) {
    out.t.push_back(ts);
    out.Y.push_back(us.head(n));
    out.DtY.push_back(us.tail(n));
  };
  push_sample(0.0, u);
  int next_out = 1;

  // Initial step from the scale of the state and its derivative.
  double h;
  {
    double d0 = 0.0, dd1 = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double sc = abs + rel * std::abs(u[i]);
      d0 += (u[i] / sc) * (u[i] / sc);
      dd1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / dim);
    dd1 = std::sqrt(dd1 / dim);
    h = (d0 < 1e-10 || dd1 < 1e-10) ? 1e-6 : 0.01 * d0 / dd1;
    h = std::min({h, hmax, T});
  }

  const double expo1 = 0.2 - 0.04 * 0.75;
  double facold = 1e-4;
  bool last_rejected = false;
  long attempts = 0;
  const double t_eps = 1e-12 * std::max(1.0, T);

  while (t < T - t_eps && next_out < nout) {
    if (++attempts > kMaxSteps) {
      out.status = RunStatus::StepFloor;
      return out;
    }

    h = std::min(h, hmax);
    if (t + h > T) h = T - t;
    if (h < kStepFloor) {
      out.status = RunStatus::StepFloor;
      return out;
    }

    auto stage_t = [&](double c) { return std::min(t + c * h, T); };
    utmp = u + h * (a21 * k1);
    rhs(stage_t(0.2), utmp, k2);
    utmp = u + h * (a31 * k1 + a32 * k2);
    rhs(stage_t(0.3), utmp, k3);
    utmp = u + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(stage_t(0.8), utmp, k4);
    utmp = u + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(stage_t(8.0 / 9.0), utmp, k5);
    utmp = u + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(stage_t(1.0), utmp, k6);
    u5 = u + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(stage_t(1.0), u5, k7);

    if (!u5.allFinite() || !k7.allFinite()) {
      ++out.steps_rejected;
      h *= 0.5;
      last_rejected = true;
      continue;
    }

    errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double sc = abs + rel * std::max(std::abs(u[i]), std::abs(u5[i]));
      err += (errv[i] / sc) * (errv[i] / sc);
    }
    err = std::sqrt(err / dim);
    if (!std::isfinite(err)) err = 1e10;

    const double fac11 = std::pow(err, expo1);
    if (err > 1.0) {
      ++out.steps_rejected;
      h /= std::min(5.0, fac11 / 0.9);
      last_rejected = true;
      continue;
    }

    // Accepted: build the dense interpolant before advancing.
    DenseStep ds;
    ds.t0 = t;
    ds.h = h;
    ds.c1 = u;
    ds.c2 = u5 - u;
    ds.c3 = h * k1 - ds.c2;
    ds.c4 = ds.c2 - h * k7 - ds.c3;
    ds.c5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

    const double t_new = t + h;
    ++out.steps_accepted;

    double t_stop = t_new;
    bool crossed = false;
    double theta_cross = 1.0;
    if (u5.head(n).norm() >= cfg.blow_threshold) {
      crossed = true;
      double lo = 0.0, hi = 1.0;
      if (ds.at(0.0).head(n).norm() >= cfg.blow_threshold) {
        hi = 0.0;
      } else {
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (ds.at(mid).head(n).norm() < cfg.blow_threshold ? lo : hi) = mid;
        }
      }
      theta_cross = hi;
      t_stop = t + hi * h;
    }

    while (next_out < nout) {
      const double tq = (next_out == nout - 1) ? T : next_out * dt_out;
      if (tq > t_stop + t_eps) break;
      const double theta = std::clamp((tq - t) / h, 0.0, 1.0);
      push_sample(tq, ds.at(theta));
      ++next_out;
    }

    if (crossed) {
      if (out.t.empty() || out.t.back() < t_stop - t_eps)
        push_sample(t_stop, ds.at(theta_cross));
      out.status = RunStatus::BlowUpDetected;
      out.blowup_t_estimate = t_stop;
      return out;
    }

    t = t_new;
    u.swap(u5);
    k1.swap(k7);

    double fac = fac11 / std::pow(facold, 0.04);
    fac = std::max(0.1, std::min(5.0, fac / 0.9));
    double hnew = h / fac;
    if (last_rejected) hnew = std::min(hnew, h);
    facold = std::max(err, 1e-4);
    last_rejected = false;
    h = hnew;
  }

  out.status = RunStatus::Completed;
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void check_common(const Scenario& s) {
  validate(s.cosmology);
  if (s.Y0.size() < 1 || s.Y0.size() != s.Y1.size())
    throw std::invalid_argument("scenario: Y0 and Y1 must share a dimension >= 1");
  if (!s.Y0.allFinite() || !s.Y1.allFinite())
    throw std::invalid_argument("scenario: initial data must be finite");
  if (s.nonlinearity.kind == NonlinKind::PowerScalar && s.Y0.size() != 1)
    throw std::invalid_argument(
        "scenario: the scalar power law is defined for dimension 1 only");
  if (!std::isfinite(s.nonlinearity.lambda) || !std::isfinite(s.nonlinearity.p))
    throw std::invalid_argument("scenario: lambda and p must be finite");
  if (!(s.t_end > 0.0))
    throw std::invalid_argument("scenario: t_end must be positive");
  if (!(s.tol.rel > 0.0) || !(s.tol.abs > 0.0))
    throw std::invalid_argument("scenario: tolerances must be positive");
  if (!(s.blow_threshold > 0.0))
    throw std::invalid_argument("scenario: blow_threshold must be positive");
  if (s.output_points < 2)
    throw std::invalid_argument("scenario: output_points must be >= 2");
}

CoreSetup setup_from(const Scenario& s, double t_run) {
  CoreSetup cfg;
  cfg.ndim = static_cast<int>(s.Y0.size());
  cfg.t_run = t_run;
  cfg.tol = s.tol;
  cfg.output_points = s.output_points;
  cfg.blow_threshold = s.blow_threshold;
  cfg.hash = scenario_hash(s);
  return cfg;
}

}  // namespace

void validate_scenario(const Scenario& s) { check_common(s); }

std::string scenario_hash(const Scenario& s) {
  std::string buf;
  char num[40];
  auto put = [&](double v) {
    std::snprintf(num, sizeof num, "%.17g;", v);
    buf += num;
  };
  buf += "n=";
  std::snprintf(num, sizeof num, "%d;", s.cosmology.n);
  buf += num;
  put(s.cosmology.sigma);
  put(s.cosmology.a0);
  put(s.cosmology.a1);
  put(s.nonlinearity.lambda);
  put(s.nonlinearity.p);
  buf += (s.nonlinearity.kind == NonlinKind::PowerVector ? "pv;" : "ps;");
  for (int i = 0; i < s.Y0.size(); ++i) put(s.Y0[i]);
  buf += "|";
  for (int i = 0; i < s.Y1.size(); ++i) put(s.Y1[i]);
  put(s.t_end);
  put(s.tol.rel);
  put(s.tol.abs);
  put(s.blow_threshold);
  std::snprintf(num, sizeof num, "%d", s.output_points);
  buf += num;
  std::snprintf(num, sizeof num, "%016llx",
                static_cast<unsigned long long>(fnv1a(buf)));
  return std::string(num);
}

Trajectory integrate_Y(const Scenario& s) {
  check_common(s);
  const double guard = guarded_end(s.cosmology);
  const bool clipped = s.t_end > guard;
  const double t_run = clipped ? guard : s.t_end;
  const CosmologyParams c = s.cosmology;
  const NonlinearitySpec spec = s.nonlinearity;
  const int n = static_cast<int>(s.Y0.size());

  Rhs rhs = [c, spec, n](double t, const Vec& u, Vec& du) {
    du.resize(u.size());
    du.head(n) = u.tail(n);
    du.tail(n) = -weight_A(c, t) * u.head(n) - eval_f(spec, u.head(n));
  };
  Trajectory traj = run_core(rhs, s.Y0, s.Y1, setup_from(s, t_run));
  if (clipped && traj.status == RunStatus::Completed)
    traj.status = RunStatus::HorizonReached;
  return traj;
}

Trajectory integrate_X(const Scenario& s) {
  check_common(s);
  const double guard = guarded_end(s.cosmology);
  const bool clipped = s.t_end > guard;
  const double t_run = clipped ? guard : s.t_end;
  const CosmologyParams c = s.cosmology;
  const NonlinearitySpec spec = s.nonlinearity;
  const int n = static_cast<int>(s.Y0.size());
  const double pm1 = s.nonlinearity.p - 1.0;

  Rhs rhs = [c, spec, n, pm1](double t, const Vec& u, Vec& du) {
    du.resize(u.size());
    du.head(n) = u.tail(n);
    du.tail(n) = -q0(c, t) * u.tail(n) -
                 std::pow(scale_factor(c, t), pm1) * eval_f(spec, u.head(n));
  };
  Trajectory traj = run_core(rhs, s.Y0, s.Y1, setup_from(s, t_run));
  if (clipped && traj.status == RunStatus::Completed)
    traj.status = RunStatus::HorizonReached;
  return traj;
}

Trajectory integrate_weighted(const CoefficientFn& coeff,
                              const NonlinearitySpec& spec, const Vec& Y0,
                              const Vec& Y1, double t_end, Tolerances tol,
                              int output_points, double blow_threshold) {
  if (Y0.size() < 1 || Y0.size() != Y1.size())
    throw std::invalid_argument("integrate_weighted: bad initial data");
  if (spec.kind == NonlinKind::PowerScalar && Y0.size() != 1)
    throw std::invalid_argument(
        "integrate_weighted: scalar power law needs dimension 1");
  if (!(t_end > 0.0) || t_end > coeff.domain_end)
    throw std::domain_error("integrate_weighted: t_end outside the domain");
  if (output_points < 2)
    throw std::invalid_argument("integrate_weighted: output_points must be >= 2");
  const int n = static_cast<int>(Y0.size());

  Rhs rhs = [&coeff, spec, n](double t, const Vec& u, Vec& du) {
    du.resize(u.size());
    du.head(n) = u.tail(n);
    du.tail(n) = -coeff.eval(t) * u.head(n) - eval_f(spec, u.head(n));
  };
  CoreSetup cfg;
  cfg.ndim = n;
  cfg.t_run = t_end;
  cfg.tol = tol;
  cfg.output_points = output_points;
  cfg.blow_threshold = blow_threshold;
  cfg.hash = "";
  return run_core(rhs, Y0, Y1, cfg);
}

Trajectory frame_map(const CosmologyParams& c, const Trajectory& traj,
                     FrameDirection dir) {
  Trajectory out = traj;
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const double t = traj.t[k];
    const double a = scale_factor(c, t);
    const double da = scale_factor_rate(c, t);
    if (dir == FrameDirection::XtoY) {
      out.Y[k] = a * traj.Y[k];
      out.DtY[k] = a * traj.DtY[k] + da * traj.Y[k];
    } else {
      out.Y[k] = traj.Y[k] / a;
      out.DtY[k] = (traj.DtY[k] - (da / a) * traj.Y[k]) / a;
    }
  }
  return out;
}

SubstitutionResidual emden_fowler_residual(const Scenario& sc,
                                           const Trajectory& traj,
                                           double beta) {
  if (sc.nonlinearity.kind != NonlinKind::PowerVector)
    throw std::invalid_argument(
        "emden_fowler_residual: vector power law required");
  const std::size_t N = traj.t.size();
  if (N < 3)
    throw std::invalid_argument("emden_fowler_residual: need >= 3 samples");

  const double lam = sc.nonlinearity.lambda;
  const double p = sc.nonlinearity.p;
  const NonlinearitySpec unit{1.0, p, NonlinKind::PowerVector};

  std::vector<double> svals(N);
  std::vector<Vec> Z(N);
  for (std::size_t k = 0; k < N; ++k) {
    svals[k] = std::exp(traj.t[k]);
    Z[k] = traj.Y[k] * std::pow(svals[k], -beta);
  }

  SubstitutionResidual res;
  res.s.reserve(N - 2);
  res.value.reserve(N - 2);
  for (std::size_t k = 1; k + 1 < N; ++k) {
    const double h1 = svals[k] - svals[k - 1];
    const double h2 = svals[k + 1] - svals[k];
    const Vec Zpp = 2.0 * (Z[k - 1] / (h1 * (h1 + h2)) - Z[k] / (h1 * h2) +
                           Z[k + 1] / (h2 * (h1 + h2)));
    const Vec Zp = -h2 / (h1 * (h1 + h2)) * Z[k - 1] +
                   (h2 - h1) / (h1 * h2) * Z[k] +
                   h1 / (h2 * (h1 + h2)) * Z[k + 1];
    const double s = svals[k];
    const double A = weight_A(sc.cosmology, traj.t[k]);
    const Vec r = Zpp + (2.0 * beta + 1.0) / s * Zp +
                  (beta * beta + A) / (s * s) * Z[k] +
                  lam * std::pow(s, beta * (p - 1.0) - 2.0) * eval_f(unit, Z[k]);
    res.s.push_back(s);
    res.value.push_back(r.norm());
  }
  return res;
}

BlowUpEstimate estimate_blowup_time(const Scenario& s) {
  check_common(s);
  const double thresholds[3] = {1e4, 1e6, 1e8};
  double tc[3] = {0, 0, 0};
  BlowUpEstimate est;

  for (int i = 0; i < 3; ++i) {
    Scenario si = s;
    si.blow_threshold = thresholds[i];
    const Trajectory tr = integrate_Y(si);
    est.searched_until = tr.t.empty() ? 0.0 : tr.t.back();
    if (tr.status == RunStatus::StepFloor) {
      est.kind = BlowUpEstimate::Kind::StepFloor;
      return est;
    }
    if (tr.status != RunStatus::BlowUpDetected) {
      est.kind = BlowUpEstimate::Kind::NoBlowUpBefore;
      return est;
    }
    tc[i] = tr.blowup_t_estimate;
  }

  const double gap1 = tc[1] - tc[0];
  const double gap2 = tc[2] - tc[1];
  est.searched_until = tc[2];
  if (gap1 <= 0.0) {
    // Near-vertical escape: the crossings coincide to solver resolution.
    const double width = std::max(gap2, 1e-9 * std::max(1.0, tc[2]));
    est.kind = BlowUpEstimate::Kind::Bracket;
    est.t_low = tc[2];
    est.t_high = tc[2] + width;
    return est;
  }
  const double r = gap2 / gap1;
  if (!(r < 0.999)) {
    est.kind = BlowUpEstimate::Kind::NoBlowUpBefore;
    return est;
  }
  est.kind = BlowUpEstimate::Kind::Bracket;
  est.t_low = tc[2];
  est.t_high = tc[2] + 2.0 * gap2 * r / (1.0 - r);
  return est;
}

}  // namespace flrw
