#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>

#include <diracab/grids.hpp>
#include <diracab/hankel.hpp>

namespace diracab {

// Spinor field on a polar grid: rows index the radial nodes of `radial`,
// columns index theta_j = 2 pi j / theta_count.
struct SpinorField {
  RadialGrid radial;
  int theta_count = 0;
  Eigen::MatrixXcd c1;
  Eigen::MatrixXcd c2;

  static SpinorField zero(const RadialGrid& g, int theta_count);

  // int (|c1|^2 + |c2|^2) r dr dtheta over the grid.
  double norm_sq() const;
};

// Angular decomposition f = sum_k (e^{ik theta} phi_k, e^{i(k+1) theta}
// psi_k). Mode norms carry the 2 pi angular factor, so norm_sq() matches
// the field's; the energy in angular orders beyond k_max is kept in
// truncation_tail_sq rather than silently dropped.
struct ModeSet {
  RadialGrid radial;
  double alpha = 0.0;
  std::map<int, ModeSpinor> modes;
  double truncation_tail_sq = 0.0;

  double norm_sq() const;
};

enum class Projection { P0, Pperp, Pgt, Plt };

// Coefficients by uniform-grid trapezoid pairing: phi_k = (1/M) sum_j
// c1(., j) e^{-ik theta_j}, slot 2 against e^{-i(k+1) theta_j}; exact for
// fields band-limited under the grid's Nyquist order, which is what makes
// reconstruct(decompose(f)) the identity. Requires theta_count >= 4 k_max.
ModeSet decompose(const SpinorField& field, int k_max, double alpha);

SpinorField reconstruct(const ModeSet& modes, int theta_count);

// Keeps k = 0 (P0), k != 0 (Pperp), k > 0 (Pgt), k < 0 (Plt).
ModeSet project(const ModeSet& modes, Projection which);

// Rows "r, theta, re1, im1, re2, im2" forming a complete polar grid with
// uniform theta; '#' lines are metadata. The JSON shape is an array of
// 6-number rows, either top-level or under "rows". Imported radial nodes
// get trapezoid weights in the r dr measure.
SpinorField import_spinor_csv(std::istream& in);
SpinorField import_spinor_json(std::istream& in);

}  // namespace diracab
