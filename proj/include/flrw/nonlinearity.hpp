// Power-law nonlinearities f(Y) and their one-sided Lipschitz certificates.
#ifndef FLRW_NONLINEARITY_HPP
#define FLRW_NONLINEARITY_HPP

#include <Eigen/Core>

namespace flrw {

using Vec = Eigen::VectorXd;

// PowerVector: f(Y) = lambda |Y|^(p-1) Y, maps R^n -> R^n.
// PowerScalar: f(Y) = lambda |Y|^p, scalar-valued; solvers accept it only for
// state dimension 1, and eval_f returns it as a 1-vector.
enum class NonlinKind { PowerVector, PowerScalar };

struct NonlinearitySpec {
  double lambda = 1.0;
  double p = 3.0;
  NonlinKind kind = NonlinKind::PowerVector;
};

// f(Y).  p == 1 reduces PowerVector to the linear map lambda Y.  For p < 1
// the power of |Y| is singular at the origin: Y = 0 throws std::domain_error.
Vec eval_f(const NonlinearitySpec& spec, const Vec& Y);

struct BoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// lhs = | |Y|^{p-1} Y - |Z|^{p-1} Z |,
// rhs = p (|Y|^{p-1} + |Z|^{p-1}) |Y - Z|.      Requires p > 1.
BoundPair lipschitz_bound_vector(const Vec& Y, const Vec& Z, double p);

// lhs = | |Y|^p - |Z|^p |,
// rhs = p max(|Y|, |Z|)^{p-1} |Y - Z|.          Requires p > 1.
BoundPair lipschitz_bound_scalar(const Vec& Y, const Vec& Z, double p);

}  // namespace flrw

#endif
