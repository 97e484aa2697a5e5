#include <diracab/propagator.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <diracab/quadrature.hpp>
#include <diracab/specfun.hpp>

namespace diracab {
namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Node ceiling for one kernel evaluation. Past it the panel counts are
// scaled down and the result is flagged instead of silently stalling.
constexpr double kNodeBudget = 1.0e6;

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

// 1 for x <= 1, quintic descent to 0 across [1, 2].
double band_step(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  return smoothstep(2.0 - x);
}

// e^{ix} evaluated on |x| with the sign restored afterwards: conjugation
// under x -> -x is then exact in floating point, which the kernel
// symmetry checks rely on.
cd unit_phase(double x) {
  const double a = std::abs(x);
  const double s = std::sin(a);
  return cd(std::cos(a), x >= 0.0 ? s : -s);
}

}  // namespace

double BandCutoff::bump0(double x) {
  if (x <= 1.0 || x >= 2.0) return 0.0;
  if (x < 1.25) return smoothstep((x - 1.0) * 4.0);
  if (x > 1.75) return smoothstep((2.0 - x) * 4.0);
  return 1.0;
}

double BandCutoff::wide0(double x) {
  if (x <= 0.5 || x >= 4.0) return 0.0;
  if (x < 1.0) return smoothstep((x - 0.5) * 2.0);
  if (x > 2.0) return smoothstep((4.0 - x) * 0.5);
  return 1.0;
}

double BandCutoff::lp0(double x) {
  if (x <= 0.0) return 0.0;
  return band_step(x) - band_step(2.0 * x);
}

double BandCutoff::scale_down(double lam) const {
  return std::ldexp(lam, -j);
}

ModeSpinor evolve_mode(int k, const FluxConfig& cfg, double t,
                       const ModeSpinor& f, const RadialGrid& space,
                       const RadialGrid& freq) {
  if (f.k != k || f.alpha != cfg.alpha)
    throw std::invalid_argument("evolve_mode: spinor labels disagree");

  SpectralProfile s = rel_hankel_forward(f, space, freq);

  double total = 0.0, tail = 0.0;
  const double edge = 0.5 * freq.r_max;
  for (int i = 0; i < freq.count(); ++i) {
    const double m =
        freq.w[i] * (std::norm(s.plus[i]) + std::norm(s.minus[i]));
    total += m;
    if (freq.r[i] >= edge) tail += m;
  }
  if (total > 0.0 && tail > 1e-6 * total)
    throw band_limit_error(
        "evolve_mode: more than 1e-6 of the spectral mass lies in the top "
        "octave of the frequency grid");

  for (int i = 0; i < freq.count(); ++i) {
    const double rho = freq.r[i];
    s.plus[i] *= unit_phase(-t * rho);
    s.minus[i] *= unit_phase(t * rho);
  }
  return rel_hankel_inverse(s, k, cfg.alpha, freq, space);
}

SpinorField evolve_field(const FluxConfig& cfg, double t,
                         const SpinorField& field, int k_max,
                         const RadialGrid& freq) {
  ModeSet ms = decompose(field, k_max, cfg.alpha);
  const double total = field.norm_sq();
  if (total > 0.0 && ms.truncation_tail_sq > 1e-6 * total)
    throw band_limit_error(
        "evolve_field: more than 1e-6 of the field's mass lies beyond the "
        "angular cutoff");
  for (auto& [k, mode] : ms.modes)
    mode = evolve_mode(k, cfg, t, mode, ms.radial, freq);
  return reconstruct(ms, field.theta_count);
}

namespace detail {

std::complex<double> hankel_asym_amp(double nu, double x, double* err) {
  // P + iQ from the large-argument series, truncated at the smallest
  // term; the series is asymptotic and the terms eventually grow.
  const double mu = 4.0 * nu * nu;
  double P = 1.0, Q = 0.0;
  double am = 1.0;       // a_m as a running product
  double last = 1.0;     // magnitude of the previous kept term
  double omitted = 0.0;
  for (int m = 1; m <= 14; ++m) {
    const double odd = 2.0 * m - 1.0;
    am *= (mu - odd * odd) / (8.0 * m);
    const double v = am / std::pow(x, m);
    const double mag = std::abs(v);
    if (mag >= last) {
      omitted = mag;
      break;
    }
    const int kk = (m % 2 == 0) ? m / 2 : (m - 1) / 2;
    const double signed_v = (kk % 2 == 0) ? v : -v;
    if (m % 2 == 0)
      P += signed_v;
    else
      Q += signed_v;
    last = mag;
    omitted = mag;  // model: first omitted term ~ last kept one
    if (mag < 1e-17) {
      omitted = mag;
      break;
    }
  }
  if (err) *err = omitted;
  const cd rot = unit_phase(-(0.5 * nu * kPi + 0.25 * kPi));
  return std::sqrt(1.0 / (2.0 * kPi)) * rot * cd(P, Q);
}

}  // namespace detail

namespace {

// The bump's polynomial pieces in band units u = 2^{-j} rho. Panels never
// straddle a joint, so every panel sees an analytic integrand and the
// Gauss-Legendre / Legendre-fit error stays spectral.
constexpr std::array<double, 4> kKnots = {1.0, 1.25, 1.75, 2.0};

struct PanelPlan {
  std::vector<double> edges;  // rho values, concatenated panel boundaries
  bool capped = false;
};

// >= 10 nodes per period of the fastest phase: panels sized at <= 0.8
// cycles over 16 nodes. `cycles_per_u` is that phase's cycle count per
// unit of u; `floor_per_region` keeps a minimum for amplitude variation.
PanelPlan plan_panels(double scale, double cycles_per_u,
                      int floor_per_region) {
  std::array<int, 3> counts;
  double total = 0.0;
  for (int s = 0; s < 3; ++s) {
    const double width = kKnots[s + 1] - kKnots[s];
    counts[s] = std::max(
        floor_per_region,
        static_cast<int>(std::ceil(cycles_per_u * width / 0.8)));
    total += counts[s];
  }
  PanelPlan plan;
  if (16.0 * total > kNodeBudget) {
    plan.capped = true;
    const double shrink = kNodeBudget / (16.0 * total);
    for (int s = 0; s < 3; ++s)
      counts[s] = std::max(1, static_cast<int>(counts[s] * shrink));
  }
  for (int s = 0; s < 3; ++s) {
    const double a = kKnots[s] * scale;
    const double b = kKnots[s + 1] * scale;
    for (int p = 0; p < counts[s]; ++p)
      plan.edges.push_back(a + (b - a) * p / counts[s]);
    if (s == 2) plan.edges.push_back(b);
  }
  return plan;
}

KernelValue kernel_direct(double nu, int j, double t, double r1, double r2) {
  const double scale = std::ldexp(1.0, j);
  const double cycles_per_u =
      (std::abs(t) + r1 + r2) * scale / (2.0 * kPi);
  const PanelPlan plan = plan_panels(scale, cycles_per_u, 1);

  const QuadratureRule& gl = gauss_legendre(16);
  cd acc(0.0, 0.0);
  const int panels = static_cast<int>(plan.edges.size()) - 1;
  for (int p = 0; p < panels; ++p) {
    const double c = 0.5 * (plan.edges[p] + plan.edges[p + 1]);
    const double h = 0.5 * (plan.edges[p + 1] - plan.edges[p]);
    cd local(0.0, 0.0);
    for (int i = 0; i < 16; ++i) {
      const double rho = c + h * gl.x[i];
      const double base = BandCutoff::bump0(std::ldexp(rho, -j)) * rho;
      const double jj = bessel_j(nu, r1 * rho) * bessel_j(nu, r2 * rho);
      local += gl.w[i] * ((base * jj) * unit_phase(-t * rho));
    }
    acc += h * local;
  }

  KernelValue out;
  out.value = acc;
  out.budget_warning = plan.capped;
  const double band_scale = std::ldexp(1.0, 2 * j);
  out.err_estimate = band_scale * 1e-14 * std::sqrt(double(panels));
  if (plan.capped) out.err_estimate += band_scale;
  return out;
}

// Asymptotic onset: J_nu(x) splits into carrier waves once
// x >= max(30, 2 nu^2), where the amplitude series has settled.
double split_onset(double nu) { return std::max(30.0, 2.0 * nu * nu); }

KernelValue kernel_phase_split(double nu, int j, double t, double r1,
                               double r2) {
  const double scale = std::ldexp(1.0, j);
  const bool split1 = r1 * scale >= split_onset(nu);
  const bool split2 = r2 * scale >= split_onset(nu);

  // Only unsplit Bessel factors still oscillate inside the amplitude.
  const double resid = (split1 ? 0.0 : r1) + (split2 ? 0.0 : r2);
  const PanelPlan plan = plan_panels(scale, resid * scale / (2.0 * kPi), 2);
  const int panels = static_cast<int>(plan.edges.size()) - 1;

  const QuadratureRule& gl = gauss_legendre(16);
  // Legendre values P_n(x_i), n = 0..15, at the panel nodes.
  static thread_local std::vector<double> leg;
  if (leg.empty()) {
    leg.assign(16 * 16, 0.0);
    for (int i = 0; i < 16; ++i) {
      const double x = gl.x[i];
      leg[0 * 16 + i] = 1.0;
      leg[1 * 16 + i] = x;
      for (int n = 1; n < 15; ++n)
        leg[(n + 1) * 16 + i] =
            ((2.0 * n + 1.0) * x * leg[n * 16 + i] - n * leg[(n - 1) * 16 + i]) /
            (n + 1.0);
    }
  }

  const std::array<int, 2> sign_set = {+1, -1};
  double series_rel = 0.0;

  // Terms ordered (+,+), (+,-), (-,+), (-,-); the symmetric regrouping at
  // the end keeps r1 <-> r2 and t -> -t exact to the bit.
  std::array<cd, 4> term{};
  int n_terms = 0;
  for (int a = 0; a < (split1 ? 2 : 1); ++a) {
    for (int b = 0; b < (split2 ? 2 : 1); ++b) {
      const int s1 = split1 ? sign_set[a] : 0;
      const int s2 = split2 ? sign_set[b] : 0;
      const double omega = (s1 * r1 + s2 * r2) - t;
      cd sum(0.0, 0.0);
      for (int p = 0; p < panels; ++p) {
        const double c = 0.5 * (plan.edges[p] + plan.edges[p + 1]);
        const double h = 0.5 * (plan.edges[p + 1] - plan.edges[p]);
        std::array<cd, 16> amp;
        for (int i = 0; i < 16; ++i) {
          const double rho = c + h * gl.x[i];
          const double base = BandCutoff::bump0(std::ldexp(rho, -j)) * rho;
          cd f1, f2;
          if (split1) {
            double e1 = 0.0;
            const cd ap = detail::hankel_asym_amp(nu, r1 * rho, &e1);
            series_rel = std::max(series_rel, e1);
            f1 = (s1 > 0 ? ap : std::conj(ap)) / std::sqrt(r1 * rho);
          } else {
            f1 = bessel_j(nu, r1 * rho);
          }
          if (split2) {
            double e2 = 0.0;
            const cd ap = detail::hankel_asym_amp(nu, r2 * rho, &e2);
            series_rel = std::max(series_rel, e2);
            f2 = (s2 > 0 ? ap : std::conj(ap)) / std::sqrt(r2 * rho);
          } else {
            f2 = bessel_j(nu, r2 * rho);
          }
          amp[i] = base * (f1 * f2);
        }
        // Filon step: Legendre fit of the amplitude, exact moments of
        // the linear phase. int_{-1}^{1} P_n(x) e^{iyx} dx = 2 i^n j_n(y).
        const double y = omega * h;
        const double ya = std::abs(y);
        const cd ibase = y >= 0.0 ? cd(0.0, 1.0) : cd(0.0, -1.0);
        cd ipow(1.0, 0.0);
        cd fit(0.0, 0.0);
        for (int n = 0; n < 16; ++n) {
          cd cn(0.0, 0.0);
          for (int i = 0; i < 16; ++i)
            cn += gl.w[i] * amp[i] * leg[n * 16 + i];
          cn *= (2.0 * n + 1.0) / 2.0;
          fit += cn * (2.0 * ipow * spherical_bessel_j(n, ya));
          ipow *= ibase;
        }
        sum += (h * unit_phase(omega * c)) * fit;
      }
      term[n_terms++] = sum;
    }
  }

  KernelValue out;
  if (n_terms == 1)
    out.value = term[0];
  else if (n_terms == 2)
    out.value = term[0] + term[1];
  else
    out.value = (term[0] + term[3]) + (term[1] + term[2]);
  out.budget_warning = plan.capped;
  const double band_scale = std::ldexp(1.0, 2 * j);
  out.err_estimate =
      band_scale * (1e-13 * std::sqrt(double(panels)) + series_rel);
  if (plan.capped) out.err_estimate += band_scale;
  return out;
}

}  // namespace

KernelValue localized_kernel(double nu, int j, double t, double r1, double r2,
                             KernelMethod method) {
  if (!(r1 > 0.0) || !(r2 > 0.0))
    throw std::domain_error("localized_kernel: radii must be positive");
  if (method == KernelMethod::Direct) return kernel_direct(nu, j, t, r1, r2);
  if (method == KernelMethod::PhaseSplit)
    return kernel_phase_split(nu, j, t, r1, r2);
  const double scale = std::ldexp(1.0, j);
  const double cycles = (std::abs(t) + r1 + r2) * scale / (2.0 * kPi);
  if (16.0 * std::ceil(cycles / 0.8) + 48.0 > kNodeBudget)
    return kernel_phase_split(nu, j, t, r1, r2);
  return kernel_direct(nu, j, t, r1, r2);
}

std::pair<KernelValue, KernelValue> kernel_F_E(const FluxConfig& cfg, int j,
                                               double t, double r1,
                                               double r2) {
  const double inv = 1.0 / (2.0 * kPi);
  const double nu_f =
      cfg.convention == Convention::CosOnly ? -cfg.alpha : cfg.alpha - 1.0;
  const double nu_e =
      cfg.convention == Convention::CosOnly ? 1.0 - cfg.alpha : cfg.alpha;
  KernelValue F = localized_kernel(nu_f, j, t, r1, r2);
  KernelValue E = localized_kernel(nu_e, j, t, r1, r2);
  F.value *= inv;
  F.err_estimate *= inv;
  E.value *= inv;
  E.err_estimate *= inv;
  return {F, E};
}

}  // namespace diracab
