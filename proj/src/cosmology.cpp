#include "flrw/cosmology.hpp"

#include <cmath>
#include <stdexcept>

namespace flrw {

namespace {

// 1 + n(1+sigma) a1 t / (2 a0), the power-law base, equal to 1 - t/T0.
double powerlaw_base(const CosmologyParams& c, double t) {
  return 1.0 + 0.5 * c.n * (1.0 + c.sigma) * c.a1 * t / c.a0;
}

void require_in_domain(const CosmologyParams& c, double t) {
  if (!(t >= 0.0) || t > guarded_end(c))
    throw std::domain_error("cosmology: t outside [0, (1 - margin) * T1]");
}

Sign sign_of(double x) {
  if (x > 0.0) return Sign::Positive;
  if (x < 0.0) return Sign::Negative;
  return Sign::Zero;
}

// sigma + 1 - 2/n, forced to exactly zero for the stored linear-scale-factor
// sigma; the naive expression leaks a rounding residual for some n >= 5.
double sigma_excess(const CosmologyParams& c) {
  if (c.sigma == 2.0 / c.n - 1.0) return 0.0;
  return c.sigma + 1.0 - 2.0 / c.n;
}

}  // namespace

void validate(const CosmologyParams& c) {
  if (c.n < 1) throw std::invalid_argument("cosmology: n must be >= 1");
  if (!std::isfinite(c.sigma) || !std::isfinite(c.a0) || !std::isfinite(c.a1))
    throw std::invalid_argument("cosmology: sigma, a0, a1 must be finite");
  if (!(c.a0 > 0.0)) throw std::invalid_argument("cosmology: a0 must be > 0");
}

Horizon horizon(const CosmologyParams& c) {
  validate(c);
  Horizon h;
  if (c.sigma == -1.0 || c.a1 == 0.0) return h;
  const double t0 = -2.0 * c.a0 / (c.n * (1.0 + c.sigma) * c.a1);
  h.t0 = t0;
  if ((1.0 + c.sigma) * c.a1 < 0.0) h.t1 = t0;
  return h;
}

double guarded_end(const CosmologyParams& c) {
  const Horizon h = horizon(c);
  if (h.t1 == kInfinity) return kInfinity;
  return (1.0 - kHorizonMargin) * h.t1;
}

double scale_factor(const CosmologyParams& c, double t) {
  require_in_domain(c, t);
  if (c.sigma == -1.0) return c.a0 * std::exp(c.a1 * t / c.a0);
  const double expo = 2.0 / (c.n * (1.0 + c.sigma));
  return c.a0 * std::pow(powerlaw_base(c, t), expo);
}

double scale_factor_rate(const CosmologyParams& c, double t) {
  require_in_domain(c, t);
  if (c.sigma == -1.0) return c.a1 * std::exp(c.a1 * t / c.a0);
  const double expo = 2.0 / (c.n * (1.0 + c.sigma));
  return c.a1 * std::pow(powerlaw_base(c, t), expo - 1.0);
}

double q0(const CosmologyParams& c, double t) {
  require_in_domain(c, t);
  if (c.sigma == -1.0) return 2.0 * c.a1 / c.a0;
  return 2.0 * c.a1 / c.a0 / powerlaw_base(c, t);
}

double weight_A(const CosmologyParams& c, double t) {
  const double q = q0(c, t);
  return 0.125 * c.n * sigma_excess(c) * q * q;
}

double weight_A_rate(const CosmologyParams& c, double t) {
  const double q = q0(c, t);
  return -0.0625 * c.n * c.n * sigma_excess(c) * (c.sigma + 1.0) * q * q * q;
}

RegimeClass classify(const CosmologyParams& c) {
  validate(c);
  if (c.a1 == 0.0) return {RegimeCase::II, Sign::Zero, Sign::Zero};
  const double linear_sigma = 2.0 / c.n - 1.0;
  if (c.sigma == linear_sigma) return {RegimeCase::III, Sign::Zero, Sign::Zero};
  if (c.sigma > linear_sigma) {
    if (c.a1 > 0.0) return {RegimeCase::I, Sign::Positive, Sign::Negative};
    return {RegimeCase::IV, Sign::Positive, Sign::Positive};
  }
  return {RegimeCase::Other, sign_of(weight_A(c, 0.0)),
          sign_of(weight_A_rate(c, 0.0))};
}

}  // namespace flrw
