#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace diracab {

// Radial quadrature grid for the measure r dr. Nodes are composite
// Gauss-Legendre panels in u = ln r, so the weights already carry the r^2
// Jacobian: sum_i w_i f(r_i) ~ int f(r) r dr. The id is a stable content
// hash used to key transform-matrix caches.
struct RadialGrid {
  Eigen::ArrayXd r;
  Eigen::ArrayXd w;
  double r_min = 0.0;
  double r_max = 0.0;
  std::uint64_t id = 0;

  int count() const { return static_cast<int>(r.size()); }

  // n is truncated to a multiple of the 16-node panel size.
  static RadialGrid log_spaced(double r_min, double r_max, int n);

  // Grid over externally supplied nodes (strictly increasing, positive)
  // with trapezoid weights in r dr. For imported data; transforms on such
  // grids are only as accurate as the sampling.
  static RadialGrid from_nodes(const Eigen::ArrayXd& r);
};

// Desk-scale defaults; tests and the CLI may choose tighter grids.
RadialGrid default_radial_grid();
RadialGrid default_frequency_grid();

inline double l2_norm_sq(const RadialGrid& g, const Eigen::VectorXcd& f) {
  return (f.array().abs2() * g.w).sum();
}

inline double l2_norm(const RadialGrid& g, const Eigen::VectorXcd& f) {
  return std::sqrt(l2_norm_sq(g, f));
}

inline std::complex<double> l2_inner(const RadialGrid& g,
                                     const Eigen::VectorXcd& a,
                                     const Eigen::VectorXcd& b) {
  return (a.conjugate().array() * b.array() * g.w.cast<std::complex<double>>())
      .sum();
}

}  // namespace diracab
