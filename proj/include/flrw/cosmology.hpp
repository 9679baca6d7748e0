// Homogeneous-isotropic background: scale factor family, expansion rate,
// effective weight of the linearized field equation, horizon bookkeeping,
// and sign-regime classification.
#ifndef FLRW_COSMOLOGY_HPP
#define FLRW_COSMOLOGY_HPP

#include <limits>
#include <optional>

namespace flrw {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Evaluation is permitted up to (1 - kHorizonMargin) * T1 when T1 is finite.
inline constexpr double kHorizonMargin = 1e-9;

// Spatial dimension n >= 1, equation-of-state parameter sigma, initial scale
// factor a0 > 0 and its initial rate a1.  The scale factor is
//   a(t) = a0 * (1 + n(1+sigma) a1 t / (2 a0))^(2/(n(1+sigma)))   sigma != -1
//   a(t) = a0 * exp(a1 t / a0)                                    sigma == -1
// The sigma == -1 branch is selected by exact floating comparison.
struct CosmologyParams {
  int n = 3;
  double sigma = 0.0;
  double a0 = 1.0;
  double a1 = 1.0;
};

// Throws std::invalid_argument on non-finite fields, n < 1, or a0 <= 0.
void validate(const CosmologyParams& c);

// Degeneration time T0 = -2 a0 / (n (1+sigma) a1), absent when sigma == -1 or
// a1 == 0.  T1 is the forward lifetime: T0 when (1+sigma) a1 < 0, else +inf
// (kInfinity; a genuine extended real, never a sentinel).
struct Horizon {
  std::optional<double> t0;
  double t1 = kInfinity;
};

Horizon horizon(const CosmologyParams& c);

// Largest admissible evaluation time: (1 - kHorizonMargin) * T1, or +inf.
double guarded_end(const CosmologyParams& c);

// a(t).  Throws std::domain_error outside [0, guarded_end].
double scale_factor(const CosmologyParams& c, double t);

// d/dt a(t).
double scale_factor_rate(const CosmologyParams& c, double t);

// q0(t) = (d/dt a^2) / a^2 = 2 (da/dt) / a.
double q0(const CosmologyParams& c, double t);

// Weight of the linearized equation D^2 Y + A(t) Y = 0, closed form
//   A(t) = (n/8) (sigma + 1 - 2/n) q0(t)^2,
// equal to -q0^2/4 - (d/dt q0)/2 and to -(d^2/dt^2 a)/a.
double weight_A(const CosmologyParams& c, double t);

// d/dt A(t) = -(n^2/16) (sigma + 1 - 2/n) (sigma + 1) q0(t)^3.
double weight_A_rate(const CosmologyParams& c, double t);

enum class RegimeCase { I, II, III, IV, Other };
enum class Sign { Negative, Zero, Positive };

// Sign regime of (A, dA/dt) on the whole lifetime:
//   I   a1 > 0, sigma > 2/n - 1   (A > 0 decreasing)
//   II  a1 == 0                   (A == 0)
//   III a1 != 0, sigma == 2/n - 1 (linear scale factor, A == 0)
//   IV  a1 < 0, sigma > 2/n - 1   (A > 0 increasing)
// Everything else is Other, with signs reported at t = 0.  The case III
// comparison is exact in floating point: only a sigma stored as the double
// 2.0/n - 1.0 selects it.
struct RegimeClass {
  RegimeCase case_tag = RegimeCase::Other;
  Sign weight_sign = Sign::Zero;
  Sign weight_rate_sign = Sign::Zero;
};

RegimeClass classify(const CosmologyParams& c);

}  // namespace flrw

#endif
