#include "diracab/specfun.hpp"

namespace diracab {

// Branch dispatch for I_nu(z), Re z >= 0. The series is always tried first
// (it certifies itself via the tracked max-term/result ratio and wins in the
// evanescent regime); Miller covers strongly complex arguments with moderate
// real part; the two-integral quadrature covers the rest. Negative
// non-integer orders are lifted with I_nu = I_{nu+2} + (2(nu+1)/z) I_{nu+1}.
std::complex<double> bessel_i_complex(double nu, std::complex<double> z) {
  detail::check_order(nu, "bessel_i_complex");
  if (z.real() < 0.0)
    throw std::domain_error("bessel_i_complex: Re z must be >= 0");
  if (std::abs(z) > 700.0)
    throw std::domain_error("bessel_i_complex: |z| too large (limit 700)");
  if (z == std::complex<double>(0.0, 0.0)) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0 || detail::is_integer(nu)) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  if (detail::is_integer(nu) && nu < 0.0) nu = -nu;
  if (nu < 0.0) {
    const std::complex<double> up1 = bessel_i_complex(nu + 1.0, z);
    const std::complex<double> up2 = bessel_i_complex(nu + 2.0, z);
    return up2 + 2.0 * (nu + 1.0) / z * up1;
  }

  const detail::cld zl((long double)z.real(), (long double)z.imag());
  detail::IEval best = detail::bessel_i_series_c((long double)nu, zl);
  if (best.err_est <= 1e-9) return best.value;

  const detail::IEval alt = (z.real() <= 21.0)
                                ? detail::bessel_i_miller_c((long double)nu, zl)
                                : detail::bessel_i_quadrature_c((long double)nu, zl);
  if (alt.err_est < best.err_est) best = alt;
  return best.value;
}

}  // namespace diracab
