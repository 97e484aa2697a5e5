#include <diracab/grids.hpp>
#include <diracab/quadrature.hpp>

#include <cmath>
#include <stdexcept>

namespace diracab {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t n,
                    std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

RadialGrid RadialGrid::log_spaced(double r_min, double r_max, int n) {
  if (!(r_min > 0.0 && r_max > r_min))
    throw std::domain_error("RadialGrid: need 0 < r_min < r_max");
  if (n < 16) throw std::domain_error("RadialGrid: need at least 16 nodes");
  const int panels = n / 16;
  const QuadratureRule q =
      composite_rule(std::log(r_min), std::log(r_max), panels, 16);
  RadialGrid g;
  g.r = q.x.exp();
  g.w = q.w * g.r.square();
  g.r_min = r_min;
  g.r_max = r_max;
  std::uint64_t h = fnv1a(&r_min, sizeof r_min);
  h = fnv1a(&r_max, sizeof r_max, h);
  h = fnv1a(&panels, sizeof panels, h);
  g.id = h;
  return g;
}

RadialGrid RadialGrid::from_nodes(const Eigen::ArrayXd& r) {
  const int n = static_cast<int>(r.size());
  if (n < 2) throw std::domain_error("RadialGrid: need at least 2 nodes");
  if (!(r[0] > 0.0))
    throw std::domain_error("RadialGrid: nodes must be positive");
  for (int i = 1; i < n; ++i)
    if (!(r[i] > r[i - 1]))
      throw std::domain_error("RadialGrid: nodes must be strictly increasing");
  RadialGrid g;
  g.r = r;
  g.w.resize(n);
  g.w[0] = 0.5 * (r[1] - r[0]);
  for (int i = 1; i + 1 < n; ++i) g.w[i] = 0.5 * (r[i + 1] - r[i - 1]);
  g.w[n - 1] = 0.5 * (r[n - 1] - r[n - 2]);
  g.w *= g.r;
  g.r_min = r[0];
  g.r_max = r[n - 1];
  g.id = fnv1a(r.data(), sizeof(double) * r.size());
  return g;
}

RadialGrid default_radial_grid() {
  static const RadialGrid g = RadialGrid::log_spaced(1e-4, 60.0, 2048);
  return g;
}

RadialGrid default_frequency_grid() {
  static const RadialGrid g = RadialGrid::log_spaced(1e-4, 60.0, 2048);
  return g;
}

}  // namespace diracab
