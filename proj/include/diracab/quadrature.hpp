#pragma once

// Gauss-Legendre rules (cached per node count) and composite panel
// integration. Nodes are computed by Newton iteration on the Legendre
// recurrence in long double.

#include <Eigen/Dense>

#include <complex>
#include <type_traits>
#include <utility>

namespace diracab {

struct QuadratureRule {
  Eigen::ArrayXd x;  // nodes
  Eigen::ArrayXd w;  // weights
};

// n-point rule on [-1, 1]; cached, thread-safe, stable reference.
const QuadratureRule& gauss_legendre(int n);

// n-point rule mapped to [a, b].
QuadratureRule mapped_rule(int n, double a, double b);

// panels * nodes points on [a, b], equal panel widths.
QuadratureRule composite_rule(double a, double b, int panels, int nodes);

// Spherical Bessel j_n for Filon moments, n <= 15, y >= 0. The library
// routine gives up on large arguments, so: ascending series for small y,
// downward recurrence normalized against the elementary j_0/j_1 in the
// middle, upward recurrence (stable once y > n) for large y.
double spherical_bessel_j(int n, double y);

// Composite integration of a scalar-valued f (double or std::complex).
template <class F>
auto integrate(F&& f, double a, double b, int panels = 16, int nodes = 16) {
  using R = std::decay_t<decltype(f(a))>;
  const QuadratureRule& q = gauss_legendre(nodes);
  R acc{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + h * (p + 0.5);
    for (int i = 0; i < nodes; ++i)
      acc += (0.5 * h * q.w[i]) * f(mid + 0.5 * h * q.x[i]);
  }
  return acc;
}

}  // namespace diracab
