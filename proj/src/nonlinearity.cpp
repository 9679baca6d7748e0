#include "flrw/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

namespace flrw {

Vec eval_f(const NonlinearitySpec& spec, const Vec& Y) {
  if (!std::isfinite(spec.lambda) || !std::isfinite(spec.p))
    throw std::invalid_argument("eval_f: lambda and p must be finite");
  const double r = Y.norm();
  if (spec.p < 1.0 && r == 0.0)
    throw std::domain_error("eval_f: |Y|^(p-1) is singular at Y = 0 for p < 1");
  if (spec.kind == NonlinKind::PowerScalar) {
    Vec out(1);
    out[0] = spec.lambda * std::pow(r, spec.p);
    return out;
  }
  if (spec.p == 1.0) return spec.lambda * Y;
  if (r == 0.0) return Vec::Zero(Y.size());
  return (spec.lambda * std::pow(r, spec.p - 1.0)) * Y;
}

BoundPair lipschitz_bound_vector(const Vec& Y, const Vec& Z, double p) {
  if (!(p > 1.0))
    throw std::domain_error("lipschitz_bound_vector: requires p > 1");
  const NonlinearitySpec unit{1.0, p, NonlinKind::PowerVector};
  BoundPair b;
  b.lhs = (eval_f(unit, Y) - eval_f(unit, Z)).norm();
  b.rhs = p * (std::pow(Y.norm(), p - 1.0) + std::pow(Z.norm(), p - 1.0)) *
          (Y - Z).norm();
  return b;
}

BoundPair lipschitz_bound_scalar(const Vec& Y, const Vec& Z, double p) {
  if (!(p > 1.0))
    throw std::domain_error("lipschitz_bound_scalar: requires p > 1");
  const double ry = Y.norm();
  const double rz = Z.norm();
  BoundPair b;
  b.lhs = std::abs(std::pow(ry, p) - std::pow(rz, p));
  b.rhs = p * std::pow(std::max(ry, rz), p - 1.0) * (Y - Z).norm();
  return b;
}

}  // namespace flrw
