#pragma once

#include <stdexcept>

namespace diracab {

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("flux alpha must lie in (0,1)");
}

// Boundary condition selecting the self-adjoint realization at the flux
// singularity. Of the one-parameter family only two members admit the
// transform inversion used here; the distinguished choice keeps the more
// singular zero-energy element out of the domain:
//   alpha <= 1/2 : sin gamma = 0 (cosine branch)
//   alpha >  1/2 : cos gamma = 0 (sine branch)
enum class Convention { CosOnly, SinOnly };

// Endpoint exponent for the time-decay estimates: admissible radial
// integrability breaks down at q(alpha), with the symmetric reflection
// around alpha = 1/2.
inline double strichartz_threshold_q(double alpha) {
  check_alpha(alpha);
  return alpha <= 0.5 ? 2.0 / alpha : 2.0 / (1.0 - alpha);
}

struct FluxConfig {
  double alpha;
  Convention convention;
  double q_alpha;

  double cos_gamma() const {
    return convention == Convention::CosOnly ? 1.0 : 0.0;
  }
  double sin_gamma() const {
    return convention == Convention::SinOnly ? 1.0 : 0.0;
  }
};

inline FluxConfig select_extension(double alpha) {
  check_alpha(alpha);
  return {alpha,
          alpha <= 0.5 ? Convention::CosOnly : Convention::SinOnly,
          strichartz_threshold_q(alpha)};
}

}  // namespace diracab
