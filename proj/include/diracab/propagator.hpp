#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include <diracab/convention.hpp>
#include <diracab/hankel.hpp>
#include <diracab/modes.hpp>

namespace diracab {

// Raised when spectral mass sits where the evolution window cannot carry
// it: the top octave of the frequency grid, or angular orders past the
// decomposition cap.
struct band_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dyadic frequency cutoffs, all C^2 piecewise quintics built from the
// smoothstep 10 t^3 - 15 t^4 + 6 t^5:
//   bump  supported on [1, 2], flat at 1 on [5/4, 7/4];
//   wide  supported on [1/2, 4], flat at 1 on [1, 2], so wide == 1 on
//         supp bump;
//   lp    supported on [1/2, 2], telescoped from a single step so that
//         sum_j lp(2^{-j} x) = 1 exactly for x > 0.
// Members evaluate the profiles scaled to the dyadic block [2^j, 2^{j+1}].
struct BandCutoff {
  int j = 0;

  double bump(double lam) const { return bump0(scale_down(lam)); }
  double wide(double lam) const { return wide0(scale_down(lam)); }
  double lp(double lam) const { return lp0(scale_down(lam)); }

  static double bump0(double x);
  static double wide0(double x);
  static double lp0(double x);

 private:
  double scale_down(double lam) const;
};

// e^{itD} on one angular mode: forward transform, multiply the signed
// spectrum by e^{-it rho}, transform back. Throws band_limit_error when
// more than 1e-6 of the spectral mass sits in the top octave of `freq`.
ModeSpinor evolve_mode(int k, const FluxConfig& cfg, double t,
                       const ModeSpinor& f, const RadialGrid& space,
                       const RadialGrid& freq);

// Mode-wise evolution of a sampled field: decompose to |k| <= k_max,
// evolve every mode, reassemble on the same angular grid. The angular
// tail beyond k_max is held to the same 1e-6 share as the spectral tail.
SpinorField evolve_field(const FluxConfig& cfg, double t,
                         const SpinorField& field, int k_max,
                         const RadialGrid& freq);

// One banded kernel value
//   m^(j)_nu(t, r1, r2) = int_0^inf e^{-it rho} bump(2^{-j} rho)
//                                   J_nu(r1 rho) J_nu(r2 rho) rho d rho
// with the quadrature's own error model attached. err_estimate is an
// absolute-scale model (2^{2j} times panel and series residuals), not a
// proven bound; budget_warning marks values computed with a capped node
// count after the budget was hit.
struct KernelValue {
  std::complex<double> value;
  double err_estimate = 0.0;
  bool budget_warning = false;
};

// Direct: Gauss-Legendre panels aligned with the bump's polynomial
// pieces, resolving the fastest combined phase with >= 10 nodes per
// period. PhaseSplit: Bessel factors deep in their asymptotic regime are
// split into e^{+-i r rho} carrier waves times slowly varying amplitudes,
// and each resulting linear phase is integrated exactly against a
// per-panel Legendre fit of the rest. Auto takes Direct until its node
// count passes the budget.
enum class KernelMethod { Auto, Direct, PhaseSplit };

KernelValue localized_kernel(double nu, int j, double t, double r1,
                             double r2,
                             KernelMethod method = KernelMethod::Auto);

// The two k = 0 field-level kernels, including the 1/(2 pi) angular
// normalization: F at the slot whose Bessel order is negative, E at the
// positive partner. Cosine branch: F = m at -alpha, E at 1 - alpha; sine
// branch: F = m at alpha - 1, E at alpha.
std::pair<KernelValue, KernelValue> kernel_F_E(const FluxConfig& cfg, int j,
                                               double t, double r1,
                                               double r2);

namespace detail {
// a_+ in J_nu(x) = x^{-1/2} (e^{ix} a_+(x) + e^{-ix} conj(a_+(x))),
// from the Hankel asymptotic series truncated at its smallest term. If
// `err` is given it receives the first omitted term's magnitude.
std::complex<double> hankel_asym_amp(double nu, double x,
                                     double* err = nullptr);
}  // namespace detail

}  // namespace diracab
