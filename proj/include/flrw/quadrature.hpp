// Cumulative quadrature on uniform grids.  T needs +, scalar *, and
// construction from such expressions (double and Eigen vectors both work).
#ifndef FLRW_QUADRATURE_HPP
#define FLRW_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace flrw {

// F[k] = trapezoid-rule integral of f over the first k panels of step h.
template <class T>
std::vector<T> cumulative_trapezoid(double h, const std::vector<T>& f) {
  std::vector<T> F;
  F.reserve(f.size());
  if (f.empty()) return F;
  F.push_back(T(0.0 * f[0]));
  for (std::size_t k = 1; k < f.size(); ++k)
    F.push_back(T(F[k - 1] + 0.5 * h * (f[k - 1] + f[k])));
  return F;
}

// Fourth-order cumulative integral: composite Simpson reaching even nodes,
// with the 3-point open start  F[1] = h (5 f0 + 8 f1 - f2) / 12  bridging to
// odd nodes.  Two-point input falls back to a single trapezoid panel.
template <class T>
std::vector<T> cumulative_simpson(double h, const std::vector<T>& f) {
  const std::size_t N = f.size();
  std::vector<T> F;
  F.reserve(N);
  if (N == 0) return F;
  F.push_back(T(0.0 * f[0]));
  if (N == 1) return F;
  if (N == 2) {
    F.push_back(T(0.5 * h * (f[0] + f[1])));
    return F;
  }
  F.push_back(T((h / 12.0) * (5.0 * f[0] + 8.0 * f[1] - f[2])));
  for (std::size_t k = 2; k < N; ++k)
    F.push_back(T(F[k - 2] + (h / 3.0) * (f[k - 2] + 4.0 * f[k - 1] + f[k])));
  return F;
}

}  // namespace flrw

#endif
