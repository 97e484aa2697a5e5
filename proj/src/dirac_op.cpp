#include <diracab/dirac_op.hpp>
#include <diracab/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace diracab {

namespace {

using cd = std::complex<double>;

// Fornberg weights for the first derivative at x0 over nodes a[0..n-1].
void fd1_weights(double x0, const double* a, int n, double* w) {
  constexpr int kMax = 8;
  double c[kMax][2] = {};
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = a[0] - x0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = a[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = a[i] - a[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  for (int j = 0; j < n; ++j) w[j] = c[j][1];
}

void check_fd_spacing(const RadialGrid& g) {
  const int n = g.count();
  if (n < 5)
    throw resolution_error("log-grid derivative: need at least 5 nodes");
  double worst = 0.0;
  for (int i = 1; i < n; ++i)
    worst = std::max(worst, std::log(g.r[i] / g.r[i - 1]));
  if (worst > 0.05)
    throw resolution_error(
        "log-grid derivative: node spacing too coarse for the stencils");
}

}  // namespace

Eigen::VectorXcd log_grid_derivative(const RadialGrid& g,
                                     const Eigen::VectorXcd& f) {
  check_fd_spacing(g);
  const int n = g.count();
  Eigen::VectorXcd out(n);
  double u[5], w[5];
  for (int i = 0; i < n; ++i) {
    const int lo = std::clamp(i - 2, 0, n - 5);
    for (int j = 0; j < 5; ++j) u[j] = std::log(g.r[lo + j]);
    fd1_weights(std::log(g.r[i]), u, 5, w);
    cd acc = 0.0;
    for (int j = 0; j < 5; ++j) acc += w[j] * f[lo + j];
    out[i] = acc / g.r[i];  // d/dr = (1/r) d/du
  }
  return out;
}

ModeSpinor apply_mode_operator(int k, const FluxConfig& cfg,
                               const RadialGrid& g, const ModeSpinor& f,
                               const Eigen::VectorXcd* dphi,
                               const Eigen::VectorXcd* dpsi) {
  const Eigen::VectorXcd dph = dphi ? *dphi : log_grid_derivative(g, f.phi);
  const Eigen::VectorXcd dps = dpsi ? *dpsi : log_grid_derivative(g, f.psi);

  const double sig1 = k + 1 - cfg.alpha;  // on psi
  const double sig2 = cfg.alpha - k;      // on phi
  const cd i(0.0, 1.0);
  ModeSpinor out;
  out.k = k;
  out.alpha = cfg.alpha;
  const Eigen::ArrayXcd inv_r = g.r.inverse().cast<cd>();
  out.phi = i * (dps.array() + sig1 * inv_r * f.psi.array()).matrix();
  out.psi = i * (dph.array() + sig2 * inv_r * f.phi.array()).matrix();
  return out;
}

SpinorValue eigenfunction_value(int k, const FluxConfig& cfg, double rho,
                                double r) {
  if (!(r > 0.0))
    throw std::domain_error("eigenfunction_value: need r > 0");
  if (rho == 0.0)
    throw std::domain_error("eigenfunction_value: need rho != 0");
  const ModeForm form = mode_form(k, cfg.alpha);
  const double x = std::abs(rho) * r;
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  SpinorValue v;
  v.c1 = inv_sqrt2 * bessel_j(form.nu1, x);
  v.c2 = form.c_plus * (inv_sqrt2 * bessel_j(form.nu2, x));
  if (rho < 0.0) v.c2 = -v.c2;
  return v;
}

namespace {

struct ProbeFit {
  cd limit = 0.0;
  double exponent = std::numeric_limits<double>::infinity();
  bool vanishes = true;
};

// Small-r behavior of one boundary pairing b(r): least-squares power fit
// over the lowest decade and a half. A positive exponent means the limit
// is zero; otherwise the limit is read off at the smallest radius.
ProbeFit fit_probe(const RadialGrid& g, const Eigen::VectorXcd& b,
                   int window) {
  ProbeFit out;
  const double global = b.cwiseAbs().maxCoeff();
  double wmax = 0.0;
  for (int i = 0; i < window; ++i) wmax = std::max(wmax, std::abs(b[i]));
  if (global == 0.0 || wmax <= 1e-12 * global) return out;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int i = 0; i < window; ++i) {
    if (std::abs(b[i]) <= 0.0) continue;
    const double x = std::log(g.r[i]);
    const double y = std::log(std::abs(b[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  out.vanishes = false;
  out.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.limit = out.exponent > 0.1 ? cd(0.0) : cd(b[0]);
  return out;
}

}  // namespace

BoundaryReport boundary_diagnostic(const FluxConfig& cfg, const RadialGrid& g,
                                   const ModeSpinor& f) {
  if (g.r_min > 1e-3)
    throw resolution_error(
        "boundary_diagnostic: samples must extend to r <= 1e-3");
  int window = 0;
  while (window < g.count() && g.r[window] <= g.r_min * 31.6) ++window;
  if (window < 8)
    throw resolution_error(
        "boundary_diagnostic: too few nodes in the small-r window");

  const int n = g.count();
  Eigen::VectorXcd b_own(n), b_ref(n), b_img(n);
  const double cg = cfg.cos_gamma();
  const double sg = cfg.sin_gamma();
  const cd i(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    const double r = g.r[j];
    const double ka = bessel_k(cfg.alpha, r);
    const double kb = bessel_k(1.0 - cfg.alpha, r);
    const cd f1c = std::conj(f.phi[j]);
    const cd f2c = std::conj(f.psi[j]);
    b_own[j] = r * (f1c * (i * sg * kb) + f2c * (cg * ka));
    b_ref[j] = r * (f1c * ka + f2c * kb);
  }
  const ModeSpinor image = apply_mode_operator(0, cfg, g, f);
  for (int j = 0; j < n; ++j) {
    b_img[j] = g.r[j] * std::sqrt(std::norm(image.phi[j]) +
                                  std::norm(image.psi[j]));
  }

  const ProbeFit own = fit_probe(g, b_own, window);
  const ProbeFit ref = fit_probe(g, b_ref, window);
  const ProbeFit img = fit_probe(g, b_img, window);
  // r |d_0 f| ~ r^{1+p} with image ~ r^p; square integrability against
  // r dr needs p > -1, so anything visibly below the flat line fails.
  const bool img_ok = img.vanishes || img.exponent > -0.05;
  BoundaryReport rep;
  rep.limit_singular = own.limit;
  rep.limit_reference = ref.limit;
  rep.exponent_singular = own.exponent;
  rep.exponent_reference = ref.exponent;
  rep.image_exponent = img.exponent;
  rep.image_obstruction = img_ok ? 0.0 : std::abs(b_img[0]);
  rep.in_domain =
      (own.limit == cd(0.0)) && (ref.limit == cd(0.0)) && img_ok;
  return rep;
}

}  // namespace diracab
