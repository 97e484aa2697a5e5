#pragma once

// Special-function core: Bessel J of real order, the modified Bessel
// functions K (real argument) and I (complex argument), the Gamma function,
// and the splitting of sqrt(x)*J_nu(x) into e^{+ix}/e^{-ix} amplitudes.
//
// Everything is templated on the scalar type; accumulation always happens in
// long double. Public entry points accept orders in [-2, 60] and throw
// std::domain_error outside; internal routines tolerate the slightly wider
// range needed by derivative and recurrence formulas.
//
// Branch selection is runtime-validated where the asymptotics are delicate:
// each candidate branch tracks a cancellation/truncation estimate and falls
// back instead of returning a value it cannot vouch for.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace diracab {

inline constexpr double bessel_order_min = -2.0;
inline constexpr double bessel_order_max = 60.0;

namespace detail {

inline constexpr long double pi_l = 3.14159265358979323846264338327950288L;

// Lanczos approximation, g = 7, nine coefficients; ~1e-14 relative accuracy.
// Poles at non-positive integers surface as +/-inf through the reflection.
template <class Real>
Real lanczos_gamma(Real x) {
  static constexpr double coef[9] = {
      0.99999999999980993,      676.5203681218851,    -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,  12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < Real(0.5)) {
    if (x == std::nearbyint(x)) return std::numeric_limits<Real>::infinity();
    return Real(pi_l) / (std::sin(Real(pi_l) * x) * lanczos_gamma(Real(1) - x));
  }
  x -= Real(1);
  Real a = Real(coef[0]);
  const Real t = x + Real(7.5);
  for (int i = 1; i < 9; ++i) a += Real(coef[i]) / (x + Real(i));
  return std::sqrt(Real(2) * Real(pi_l)) * std::pow(t, x + Real(0.5)) *
         std::exp(-t) * a;
}

inline void check_order(double nu, const char* who) {
  if (!(nu >= bessel_order_min && nu <= bessel_order_max))
    throw std::domain_error(std::string(who) + ": order outside [-2, 60]");
}

inline bool is_integer(double nu) { return nu == std::nearbyint(nu); }

// Ascending series. Cancellation-safe for x <= ~17 in long double (max term
// over result stays below ~1e7) and for any x once the order dominates.
inline long double bessel_j_series(long double nu, long double x) {
  const long double h = x / 2.0L;
  long double term = std::pow(h, nu) / lanczos_gamma<long double>(nu + 1.0L);
  long double sum = term;
  const long double x2 = h * h;
  for (int m = 1; m < 1000; ++m) {
    term *= -x2 / ((long double)m * (nu + (long double)m));
    sum += term;
    if (std::fabs(term) <= 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

// Hankel asymptotic expansion. Valid once x is a modest multiple of nu^2;
// the caller checks the tracked smallest term before trusting the result.
struct AsymptoticEval {
  long double value;
  long double rel_err;  // size of the smallest retained term
};

inline AsymptoticEval bessel_j_asymptotic(long double nu, long double x) {
  const long double mu = 4.0L * nu * nu;
  long double p = 1.0L, q = 0.0L, a = 1.0L;
  long double smallest = 1.0L;
  for (int k = 1; k <= 20; ++k) {
    a *= (mu - (long double)((2 * k - 1) * (2 * k - 1))) / (8.0L * k * x);
    if (std::fabs(a) > smallest) break;  // divergent tail reached
    smallest = std::fabs(a);
    switch (k % 4) {
      case 1: q += a; break;
      case 2: p -= a; break;
      case 3: q -= a; break;
      case 0: p += a; break;
    }
    if (smallest < 1e-20L) break;
  }
  const long double omega = x - nu * pi_l / 2.0L - pi_l / 4.0L;
  const long double val = std::sqrt(2.0L / (pi_l * x)) *
                          (p * std::cos(omega) - q * std::sin(omega));
  return {val, smallest};
}

// Miller backward recurrence, normalized with the Neumann-type sum
//   sum_m (mu + 2m) Gamma(mu + m)/m! * J_{mu+2m}(x) = (x/2)^mu,  mu = frac(nu).
// Stable for any 0 < x < ~nu^2 window the other branches cannot reach.
inline long double bessel_j_miller(long double nu, long double x) {
  if (nu < 0.0L)
    throw std::logic_error("bessel_j_miller: order must be nonnegative");
  const int n = (int)std::floor((double)nu);
  const long double mu = nu - (long double)n;
  const int big = std::max(n, (int)std::ceil((double)x));
  int m_top = big + (int)(15.0 * std::sqrt((double)big)) + 40;
  if (m_top % 2) ++m_top;

  thread_local std::vector<long double> f;
  f.assign((size_t)m_top + 2, 0.0L);
  f[(size_t)m_top + 1] = 0.0L;
  f[(size_t)m_top] = 1e-300L;
  for (int k = m_top; k >= 1; --k) {
    f[(size_t)k - 1] = 2.0L * (mu + k) / x * f[(size_t)k] - f[(size_t)k + 1];
    if (std::fabs(f[(size_t)k - 1]) > 1e290L) {
      for (int j = k - 1; j <= m_top + 1; ++j) f[(size_t)j] *= 1e-290L;
    }
  }
  long double c = lanczos_gamma<long double>(mu + 1.0L);  // m = 0 coefficient
  long double s = c * f[0];
  for (int m = 1; 2 * m <= m_top; ++m) {
    if (m == 1)
      c *= (mu + 2.0L);
    else
      c *= (mu + 2.0L * m) * (mu + m - 1.0L) / ((mu + 2.0L * m - 2.0L) * m);
    s += c * f[(size_t)(2 * m)];
  }
  return f[(size_t)n] * std::pow(x / 2.0L, mu) / s;
}

inline long double bessel_j_raw(long double nu, long double x) {
  if (x < 0.0L) throw std::domain_error("bessel_j: negative argument");
  if (is_integer((double)nu) && nu < 0.0L) {
    const int n = (int)std::llround((double)-nu);
    const long double v = bessel_j_raw(-nu, x);
    return (n % 2) ? -v : v;
  }
  if (x == 0.0L) {
    if (nu == 0.0L) return 1.0L;
    return nu > 0.0L ? 0.0L : std::numeric_limits<long double>::infinity();
  }
  if (x <= 17.0L) return bessel_j_series(nu, x);
  if (x >= std::max(17.0L, nu * nu / 1.4L)) {
    const AsymptoticEval a = bessel_j_asymptotic(nu, x);
    if (a.rel_err <= 1e-11L) return a.value;
  }
  return bessel_j_miller(nu, x);
}

}  // namespace detail

template <class Real>
Real gamma_fn(Real x) {
  return (Real)detail::lanczos_gamma<long double>((long double)x);
}

template <class Real>
Real bessel_j(Real nu, Real x) {
  detail::check_order((double)nu, "bessel_j");
  return (Real)detail::bessel_j_raw((long double)nu, (long double)x);
}

// d/dx J_nu(x) = J_{nu-1}(x) - (nu/x) J_nu(x). Needs x > 0.
template <class Real>
Real bessel_j_prime(Real nu, Real x) {
  detail::check_order((double)nu, "bessel_j_prime");
  if (!(x > Real(0)))
    throw std::domain_error("bessel_j_prime: argument must be positive");
  const long double nl = (long double)nu, xl = (long double)x;
  return (Real)(detail::bessel_j_raw(nl - 1.0L, xl) -
                nl / xl * detail::bessel_j_raw(nl, xl));
}

// K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt, x > 0. Even in nu by
// construction, so K_{-nu} == K_nu holds exactly. Composite Gauss-Legendre
// on [0, t_max] with the integrand's decay scale resolved; no cancellation.
namespace detail {

struct GaussNodes16 {
  // 16-point Gauss-Legendre nodes/weights on [0, 1].
  static constexpr int n = 16;
  static constexpr double x[n] = {
      0.0052995325041750337, 0.0277124884633837046, 0.0671843988060841224,
      0.1222977958224984868, 0.1910618777986781147, 0.2709916111713863151,
      0.3591982246103705422, 0.4524937450811812866, 0.5475062549188187134,
      0.6408017753896294578, 0.7290083888286136849, 0.8089381222013218853,
      0.8777022041775015132, 0.9328156011939158776, 0.9722875115366162954,
      0.9947004674958249663};
  static constexpr double w[n] = {
      0.0135762297058770482, 0.0311267619693239468, 0.0475792558412463928,
      0.0623144856277669384, 0.0747979944082883680, 0.0845782596975012679,
      0.0913017075224617918, 0.0947253052275342510, 0.0947253052275342510,
      0.0913017075224617918, 0.0845782596975012679, 0.0747979944082883680,
      0.0623144856277669384, 0.0475792558412463928, 0.0311267619693239468,
      0.0135762297058770482};
};

}  // namespace detail

template <class Real>
Real bessel_k(Real nu, Real x) {
  detail::check_order((double)nu, "bessel_k");
  if (!(x > Real(0)))
    throw std::domain_error("bessel_k: argument must be positive");
  const long double anu = std::fabs((long double)nu);
  const long double xl = (long double)x;
  // cutoff: x (cosh t - 1) - anu*t > 46
  long double t_max = std::acosh(1.0L + 46.0L / xl);
  for (int it = 0; it < 3; ++it)
    t_max = std::acosh(1.0L + (46.0L + anu * t_max) / xl);
  // Panel count keeps the end-of-range decay (slope ~ x sinh t_max) under
  // ~16 e-folds per panel, which GL-16 resolves to full precision.
  const long double end_slope = 46.0L + anu * t_max + xl;
  const int panels = std::max(
      {10, (int)std::ceil((double)(t_max * (std::sqrt(xl) + anu + 1.0L)) / 2.0),
       (int)std::ceil((double)(t_max * end_slope) / 16.0)});
  long double acc = 0.0L;
  for (int p = 0; p < panels; ++p) {
    const long double a = t_max * p / panels, b = t_max * (p + 1) / panels;
    for (int i = 0; i < detail::GaussNodes16::n; ++i) {
      const long double t = a + (b - a) * (long double)detail::GaussNodes16::x[i];
      acc += (b - a) * (long double)detail::GaussNodes16::w[i] *
             std::exp(-xl * (std::cosh(t) - 1.0L)) * std::cosh(anu * t);
    }
  }
  return (Real)(std::exp(-xl) * acc);
}

// d/dx K_nu(x) = -int_0^inf e^{-x cosh t} cosh t cosh(nu t) dt.
// Same quadrature as bessel_k.
template <class Real>
Real bessel_k_dx(Real nu, Real x) {
  detail::check_order((double)nu, "bessel_k_dx");
  if (!(x > Real(0)))
    throw std::domain_error("bessel_k_dx: argument must be positive");
  const long double anu = std::fabs((long double)nu);
  const long double xl = (long double)x;
  long double t_max = std::acosh(1.0L + 48.0L / xl);
  for (int it = 0; it < 3; ++it)
    t_max = std::acosh(1.0L + (48.0L + anu * t_max) / xl);
  const long double end_slope = 48.0L + anu * t_max + xl;
  const int panels = std::max(
      {10, (int)std::ceil((double)(t_max * (std::sqrt(xl) + anu + 1.0L)) / 2.0),
       (int)std::ceil((double)(t_max * end_slope) / 16.0)});
  long double acc = 0.0L;
  for (int p = 0; p < panels; ++p) {
    const long double a = t_max * p / panels, b = t_max * (p + 1) / panels;
    for (int i = 0; i < detail::GaussNodes16::n; ++i) {
      const long double t =
          a + (b - a) * (long double)detail::GaussNodes16::x[i];
      acc += (b - a) * (long double)detail::GaussNodes16::w[i] *
             std::exp(-xl * (std::cosh(t) - 1.0L)) * std::cosh(t) *
             std::cosh(anu * t);
    }
  }
  return (Real)(-std::exp(-xl) * acc);
}

// ---------------------------------------------------------------------------
// Modified Bessel I of complex argument, Re z >= 0.
//
// Three candidate branches, each with a tracked accuracy estimate; the
// dispatcher takes the first one that certifies ~1e-9 and otherwise the best:
//   1. forward series (max-term cancellation tracked),
//   2. Miller backward recurrence in the order (cancellation ~e^{Re z}),
//   3. two-integral quadrature
//        I_nu(z) = (1/pi) int_0^pi e^{z cos u} cos(nu u) du
//                - (sin(nu pi)/pi) int_0^inf e^{-z cosh u - nu u} du
//      (loss ~ machine-eps * e^{Re z} / |I|).
// ---------------------------------------------------------------------------

namespace detail {

using cld = std::complex<long double>;

struct IEval {
  std::complex<double> value;
  double err_est;
};

inline IEval bessel_i_series_c(long double nu, cld z) {
  const cld h = z / 2.0L;
  cld term = std::exp(nu * std::log(h)) / lanczos_gamma<long double>(nu + 1.0L);
  cld sum = term;
  long double max_term = std::abs(term);
  const cld z2 = h * h;
  for (int m = 1; m < 1200; ++m) {
    term *= z2 / ((long double)m * (nu + (long double)m));
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (std::abs(term) <= 1e-23L * std::abs(sum)) break;
  }
  const long double denom = std::abs(sum);
  const double loss =
      denom > 0.0L ? (double)(1.1e-19L * max_term / denom) : 1.0;
  return {std::complex<double>((double)sum.real(), (double)sum.imag()), loss};
}

inline IEval bessel_i_miller_c(long double nu, cld z) {
  const int n = (int)std::floor((double)nu);
  const long double mu = nu - (long double)n;
  const long double az = std::abs(z);
  const int big = std::max(n, (int)std::ceil((double)az));
  int m_top = big + (int)(15.0 * std::sqrt((double)big)) + 40;
  if (m_top % 2) ++m_top;

  std::vector<cld> f((size_t)m_top + 2);
  f[(size_t)m_top + 1] = 0.0L;
  f[(size_t)m_top] = 1e-300L;
  for (int k = m_top; k >= 1; --k) {
    f[(size_t)k - 1] = f[(size_t)k + 1] + 2.0L * (mu + k) / z * f[(size_t)k];
    if (std::abs(f[(size_t)k - 1]) > 1e290L) {
      for (int j = k - 1; j <= m_top + 1; ++j) f[(size_t)j] *= 1e-290L;
    }
  }
  long double c = lanczos_gamma<long double>(mu + 1.0L);
  cld s = c * f[0];
  long double max_term = std::abs(s);
  for (int m = 1; 2 * m <= m_top; ++m) {
    if (m == 1)
      c *= (mu + 2.0L);
    else
      c *= (mu + 2.0L * m) * (mu + m - 1.0L) / ((mu + 2.0L * m - 2.0L) * m);
    const cld t = ((m % 2) ? -c : c) * f[(size_t)(2 * m)];
    s += t;
    max_term = std::max(max_term, std::abs(t));
  }
  const cld val = f[(size_t)n] * std::exp(mu * std::log(z / 2.0L)) / s;
  const long double as = std::abs(s);
  const double loss = as > 0.0L ? (double)(1.1e-19L * max_term / as) : 1.0;
  return {std::complex<double>((double)val.real(), (double)val.imag()), loss};
}

inline IEval bessel_i_quadrature_c(long double nu, cld z) {
  const long double re = z.real(), im = std::fabs((long double)z.imag());
  // First integral with e^{-Re z} pulled out so the integrand stays O(1).
  cld s1 = 0.0L;
  {
    const int panels = std::max(12, (int)std::ceil((double)(im / 2.0L)));
    for (int p = 0; p < panels; ++p) {
      const long double a = pi_l * p / panels, b = pi_l * (p + 1) / panels;
      for (int i = 0; i < GaussNodes16::n; ++i) {
        const long double u = a + (b - a) * (long double)GaussNodes16::x[i];
        const long double cu = std::cos(u);
        const cld e = std::exp(cld(re * (cu - 1.0L), z.imag() * cu));
        s1 += (b - a) * (long double)GaussNodes16::w[i] * e * std::cos(nu * u);
      }
    }
    s1 /= pi_l;
  }
  // Tail integral; only present for non-integer order.
  cld s2 = 0.0L;
  const long double snp = std::sin(nu * pi_l);
  if (snp != 0.0L && re > 0.0L) {
    long double u_max = std::acosh(1.0L + 46.0L / re);
    for (int it = 0; it < 3; ++it)
      u_max = std::acosh(1.0L + (46.0L + std::fabs(nu) * u_max) / re);
    long double u0 = 0.0L;
    while (u0 < u_max) {
      const long double dense = 1.0L + im * std::sinh(u0 + 0.25L) + std::fabs(nu);
      const long double h = std::min((long double)0.25L, 10.0L / dense);
      const long double b = std::min(u_max, u0 + h);
      for (int i = 0; i < GaussNodes16::n; ++i) {
        const long double u = u0 + (b - u0) * (long double)GaussNodes16::x[i];
        const cld e = std::exp(cld(-re * (std::cosh(u) - 1.0L) - nu * u,
                                   -z.imag() * std::cosh(u)));
        s2 += (b - u0) * (long double)GaussNodes16::w[i] * e;
      }
      u0 = b;
    }
    s2 *= snp / pi_l;
  }
  // s1 carries e^{-Re z} pulled out; s2 carries e^{+Re z} pulled in.
  const cld val = std::exp(re) * s1 - std::exp(-re) * s2;
  const long double av = std::abs(val);
  const double loss = av > 0.0L ? (double)(2e-17L * std::exp(re) / av) : 1.0;
  return {std::complex<double>((double)val.real(), (double)val.imag()), loss};
}

}  // namespace detail

std::complex<double> bessel_i_complex(double nu, std::complex<double> z);

inline double bessel_i(double nu, double x) {
  const std::complex<double> v = bessel_i_complex(nu, std::complex<double>(x, 0.0));
  return v.real();
}

// Amplitude split of g(x) = sqrt(x) J_nu(x):
//   g = a_plus e^{ix} + a_minus e^{-ix},  g' = i a_plus e^{ix} - i a_minus e^{-ix},
// so a_plus = e^{-ix}(g - i g')/2 and a_minus = conj(a_plus). As x -> inf,
// |a_plus| -> 1/sqrt(2 pi). Requires x >= 1.
struct AmplitudePair {
  std::complex<double> plus;
  std::complex<double> minus;
};

inline AmplitudePair amplitude_pair(double nu, double x) {
  detail::check_order(nu, "amplitude_pair");
  if (!(x >= 1.0))
    throw std::domain_error("amplitude_pair: argument must be >= 1");
  const double j = bessel_j(nu, x);
  const double jp = bessel_j_prime(nu, x);
  const double sx = std::sqrt(x);
  const double g = sx * j;
  const double gp = 0.5 / sx * j + sx * jp;
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> a_plus =
      0.5 * std::exp(-i * x) * (g - i * gp);
  return {a_plus, std::conj(a_plus)};
}

}  // namespace diracab
