#include "diracab/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace diracab {

namespace {

std::unique_ptr<QuadratureRule> compute_rule(int n) {
  auto rule = std::make_unique<QuadratureRule>();
  rule->x.resize(n);
  rule->w.resize(n);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      // Legendre P_n and P_n' at x by recurrence.
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    rule->x[n - 1 - i] = (double)x;
    rule->w[n - 1 - i] = (double)(2.0L / ((1.0L - x * x) * dp * dp));
  }
  return rule;
}

std::map<int, std::unique_ptr<QuadratureRule>>& rule_cache() {
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  return cache;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1 || n > 4096)
    throw std::domain_error("gauss_legendre: node count outside [1, 4096]");
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& cache = rule_cache();
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return *it->second;
}

QuadratureRule mapped_rule(int n, double a, double b) {
  const QuadratureRule& q = gauss_legendre(n);
  QuadratureRule out;
  out.x = 0.5 * (a + b) + 0.5 * (b - a) * q.x;
  out.w = 0.5 * (b - a) * q.w;
  return out;
}

QuadratureRule composite_rule(double a, double b, int panels, int nodes) {
  const QuadratureRule& q = gauss_legendre(nodes);
  QuadratureRule out;
  out.x.resize((Eigen::Index)panels * nodes);
  out.w.resize((Eigen::Index)panels * nodes);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + h * (p + 0.5);
    out.x.segment((Eigen::Index)p * nodes, nodes) = mid + 0.5 * h * q.x;
    out.w.segment((Eigen::Index)p * nodes, nodes) = 0.5 * h * q.w;
  }
  return out;
}

double spherical_bessel_j(int n, double y) {
  if (y < 1e-280) return n == 0 ? 1.0 : 0.0;
  if (y < 2.0) {
    double dfact = 1.0;
    for (int m = 1; m <= n; ++m) dfact *= 2.0 * m + 1.0;
    const double y2 = -0.5 * y * y;
    double term = std::pow(y, n) / dfact;
    double sum = term;
    for (int k = 1; k < 40; ++k) {
      term *= y2 / (k * (2.0 * (n + k) + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  if (y >= 20.0) {
    double jm = std::sin(y) / y;
    if (n == 0) return jm;
    double jc = jm / y - std::cos(y) / y;
    for (int m = 1; m < n; ++m) {
      const double jn = (2.0 * m + 1.0) / y * jc - jm;
      jm = jc;
      jc = jn;
    }
    return jc;
  }
  const int top = n + 24;
  std::array<double, 42> v{};
  v[top + 1] = 0.0;
  v[top] = 1e-30;
  for (int m = top; m >= 1; --m)
    v[m - 1] = (2.0 * m + 1.0) / y * v[m] - v[m + 1];
  const double j0 = std::sin(y) / y;
  const double j1 = j0 / y - std::cos(y) / y;
  const double scale =
      std::abs(v[0]) >= std::abs(v[1]) ? j0 / v[0] : j1 / v[1];
  return v[n] * scale;
}

}  // namespace diracab
