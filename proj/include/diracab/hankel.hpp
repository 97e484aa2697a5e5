#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <stdexcept>

#include <diracab/grids.hpp>

namespace diracab {

// Raised when a requested energy band oscillates faster than the input grid
// resolves over the region where the input actually lives.
struct resolution_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense discretization of the order-nu Hankel transform
//   (H_nu f)(rho) = int_0^inf J_nu(rho r) f(r) r dr
// as a matrix mapping samples on `in` to samples on `out`. Matrices are
// cached keyed on (nu, in.id, out.id); holders keep the shared_ptr alive
// across evictions.
std::shared_ptr<const Eigen::MatrixXd> hankel_matrix(double nu,
                                                     const RadialGrid& in,
                                                     const RadialGrid& out);

// Cap on the matrix cache footprint (bytes). Eviction is least recently used.
void set_hankel_cache_limit(std::size_t bytes);

// Throws resolution_error when an a-priori risk estimate (share of the
// input's mass sitting in panels that under-sample J_nu at the top of the
// requested band) says the result would be unreliable. Band-limited inputs
// pass untouched and come back accurate to ~1e-6 relative.
Eigen::VectorXcd hankel_forward(double nu, const RadialGrid& in,
                                const Eigen::VectorXcd& f,
                                const RadialGrid& out);

// || H_nu(H_nu f) - f || / ||f|| in L2(r dr). Inversion holds for
// nu >= -1/2 only; smaller orders are a domain error. Runs unguarded:
// the point of the diagnostic is to quantify the residual, including on
// inputs whose spectrum the band does not contain.
double hankel_involution_check(double nu, const RadialGrid& space,
                               const RadialGrid& freq,
                               const Eigen::VectorXcd& f);

// One angular mode of a spinor field: components (e^{ik theta} phi,
// e^{i(k+1) theta} psi) with radial profiles sampled on a shared grid.
struct ModeSpinor {
  int k = 0;
  double alpha = 0.0;
  Eigen::VectorXcd phi;
  Eigen::VectorXcd psi;
};

// Signed-energy spectrum of one mode: values at +rho_i and -rho_i are stored
// independently on the same frequency grid.
struct SpectralProfile {
  Eigen::VectorXcd plus;
  Eigen::VectorXcd minus;
};

// Scalar-transform data for mode k: the spectrum at +/-rho is
//   phi_{+-} = (H_{nu1} f1 + c_{+-} H_{nu2} f2) / sqrt(2),  c_- = -c_+.
// k >= 1 uses nu1 = k - alpha, nu2 = nu1 + 1, c_+ = -i; k <= -1 uses
// nu1 = alpha - k, nu2 = nu1 - 1, c_+ = +i; k = 0 reduces to one of those
// shapes under the boundary convention (nu1 = -alpha on the cosine branch,
// nu1 = alpha on the sine branch).
struct ModeForm {
  double nu1;
  double nu2;
  std::complex<double> c_plus;
};

ModeForm mode_form(int k, double alpha);

SpectralProfile rel_hankel_forward(const ModeSpinor& m, const RadialGrid& space,
                                   const RadialGrid& freq);

ModeSpinor rel_hankel_inverse(const SpectralProfile& s, int k, double alpha,
                              const RadialGrid& freq, const RadialGrid& space);

// General boundary angle at k = 0, evaluated as the cos/sin mixture of the
// two reduced forms. Check-only: this mixture is not invertible unless
// cos(gamma) sin(gamma) = 0.
SpectralProfile rel_hankel_k0_general(const ModeSpinor& m, double cos_gamma,
                                      double sin_gamma, const RadialGrid& space,
                                      const RadialGrid& freq);

}  // namespace diracab
