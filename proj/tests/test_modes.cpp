#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include <diracab/modes.hpp>
#include <diracab/specfun.hpp>

using namespace diracab;
using cd = std::complex<double>;

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

const RadialGrid& small_grid() {
  static const RadialGrid g = RadialGrid::log_spaced(1e-3, 12.0, 64);
  return g;
}

Eigen::VectorXcd random_profile(const RadialGrid& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd v(g.count());
  for (int i = 0; i < g.count(); ++i) v[i] = cd(u(rng), u(rng));
  return v;
}

ModeSet random_modes(const RadialGrid& g, int k_max, double alpha,
                     std::mt19937& rng) {
  ModeSet s;
  s.radial = g;
  s.alpha = alpha;
  for (int k = -k_max; k <= k_max; ++k) {
    ModeSpinor m;
    m.k = k;
    m.alpha = alpha;
    m.phi = random_profile(g, rng);
    m.psi = random_profile(g, rng);
    s.modes.emplace(k, std::move(m));
  }
  return s;
}

double max_mode_norm_except(const ModeSet& s, int k_keep) {
  double worst = 0.0;
  for (const auto& [k, m] : s.modes) {
    if (k == k_keep) continue;
    worst = std::max(worst, l2_norm(s.radial, m.phi));
    worst = std::max(worst, l2_norm(s.radial, m.psi));
  }
  return worst;
}

}  // namespace

TEST_CASE("a pure k=1 field decomposes onto the single matching mode") {
  const RadialGrid& g = small_grid();
  const int m = 16;
  SpinorField f = SpinorField::zero(g, m);
  const Eigen::VectorXcd prof =
      g.r.unaryExpr([](double r) { return r * std::exp(-r); })
          .cast<cd>()
          .matrix();
  for (int j = 0; j < m; ++j)
    f.c1.col(j) = prof * std::polar(1.0, two_pi * j / m);

  const ModeSet s = decompose(f, 3, 0.5);
  CHECK((s.modes.at(1).phi - prof).norm() <= 1e-14 * prof.norm());
  CHECK(s.modes.at(1).psi.norm() <= 1e-14 * prof.norm());
  CHECK(max_mode_norm_except(s, 1) <= 1e-14 * prof.norm());
  CHECK(s.truncation_tail_sq <= 1e-24 * f.norm_sq());
}

TEST_CASE("the singular boundary element is pure k=0") {
  // (K_alpha, i e^{i theta} K_{1-alpha}) lives entirely in the k = 0 slot:
  // phi_0 = K_alpha, psi_0 = i K_{1-alpha}.
  const double alpha = 0.3;
  const cd c(0.7, -0.2);
  const RadialGrid& g = small_grid();
  const int m = 12;
  SpinorField f = SpinorField::zero(g, m);
  const Eigen::VectorXcd ka =
      g.r.unaryExpr([&](double r) { return bessel_k(alpha, r); })
          .cast<cd>()
          .matrix();
  const Eigen::VectorXcd kb =
      g.r.unaryExpr([&](double r) { return bessel_k(1.0 - alpha, r); })
          .cast<cd>()
          .matrix();
  for (int j = 0; j < m; ++j) {
    f.c1.col(j) = c * ka;
    f.c2.col(j) = cd(0, 1) * c * kb * std::polar(1.0, two_pi * j / m);
  }

  const ModeSet s = decompose(f, 2, alpha);
  CHECK((s.modes.at(0).phi - c * ka).norm() <= 1e-13 * ka.norm());
  CHECK((s.modes.at(0).psi - cd(0, 1) * c * kb).norm() <= 1e-13 * kb.norm());
  CHECK(max_mode_norm_except(s, 0) <= 1e-13 * (ka.norm() + kb.norm()));
}

TEST_CASE("random band-limited fields satisfy Parseval and round-trip") {
  std::mt19937 rng(20260816);
  const RadialGrid& g = small_grid();
  const int k_max = 5;
  const int m = 4 * k_max + 4;
  const ModeSet in = random_modes(g, k_max, 0.25, rng);

  const SpinorField f = reconstruct(in, m);
  CHECK(f.norm_sq() == doctest::Approx(in.norm_sq()).epsilon(1e-12));

  const ModeSet back = decompose(f, k_max, 0.25);
  CHECK(std::abs(back.norm_sq() - f.norm_sq()) <= 1e-10 * f.norm_sq());
  CHECK(back.truncation_tail_sq <= 1e-10 * f.norm_sq());
  for (const auto& [k, mode] : in.modes) {
    CAPTURE(k);
    CHECK((back.modes.at(k).phi - mode.phi).lpNorm<Eigen::Infinity>() <=
          1e-10);
    CHECK((back.modes.at(k).psi - mode.psi).lpNorm<Eigen::Infinity>() <=
          1e-10);
  }
}

TEST_CASE("reconstructing a single mode gives the exact angular phases") {
  std::mt19937 rng(7);
  const RadialGrid& g = small_grid();
  ModeSet s;
  s.radial = g;
  s.alpha = 0.5;
  ModeSpinor mode;
  mode.k = -2;
  mode.alpha = 0.5;
  mode.phi = random_profile(g, rng);
  mode.psi = random_profile(g, rng);
  s.modes.emplace(-2, mode);

  const int m = 16;
  const SpinorField f = reconstruct(s, m);
  for (int j = 0; j < m; ++j) {
    const double th = two_pi * j / m;
    CHECK((f.c1.col(j) - mode.phi * std::polar(1.0, -2.0 * th)).norm() <=
          1e-14 * mode.phi.norm());
    CHECK((f.c2.col(j) - mode.psi * std::polar(1.0, -th)).norm() <=
          1e-14 * mode.psi.norm());
  }
}

TEST_CASE("an empty mode set reconstructs to the zero field") {
  ModeSet s;
  s.radial = small_grid();
  const SpinorField f = reconstruct(s, 8);
  CHECK(f.c1.norm() == 0.0);
  CHECK(f.c2.norm() == 0.0);
}

TEST_CASE("projections split the mode set orthogonally") {
  std::mt19937 rng(99);
  const ModeSet s = random_modes(small_grid(), 4, 0.75, rng);

  const ModeSet p0 = project(s, Projection::P0);
  const ModeSet pp = project(s, Projection::Pperp);
  const ModeSet gt = project(s, Projection::Pgt);
  const ModeSet lt = project(s, Projection::Plt);

  CHECK(p0.modes.size() == 1);
  CHECK(pp.modes.size() == 8);
  CHECK(project(pp, Projection::P0).modes.empty());
  CHECK(project(p0, Projection::P0).norm_sq() ==
        doctest::Approx(p0.norm_sq()).epsilon(1e-15));

  CHECK(gt.modes.size() + lt.modes.size() == pp.modes.size());
  CHECK(gt.norm_sq() + lt.norm_sq() ==
        doctest::Approx(pp.norm_sq()).epsilon(1e-15));
  for (const auto& [k, m] : gt.modes) CHECK(k > 0);
  for (const auto& [k, m] : lt.modes) CHECK(k < 0);

  CHECK(std::abs(p0.norm_sq() + pp.norm_sq() - s.norm_sq()) <=
        1e-12 * s.norm_sq());
}

TEST_CASE("decompose is linear and rotation shifts mode phases") {
  std::mt19937 rng(1234);
  const RadialGrid& g = small_grid();
  const int k_max = 3;
  const int m = 16;
  const SpinorField a = reconstruct(random_modes(g, k_max, 0.5, rng), m);
  const SpinorField b = reconstruct(random_modes(g, k_max, 0.5, rng), m);

  SpinorField lin = SpinorField::zero(g, m);
  const cd w(0.3, 1.1);
  lin.c1 = a.c1 + w * b.c1;
  lin.c2 = a.c2 + w * b.c2;
  const ModeSet sa = decompose(a, k_max, 0.5);
  const ModeSet sb = decompose(b, k_max, 0.5);
  const ModeSet sl = decompose(lin, k_max, 0.5);
  for (int k = -k_max; k <= k_max; ++k) {
    CHECK((sl.modes.at(k).phi - sa.modes.at(k).phi - w * sb.modes.at(k).phi)
              .norm() <= 1e-13 * sl.modes.at(k).phi.norm() + 1e-15);
  }

  // Rotating by s grid steps multiplies mode k by e^{-ik theta_0} (slot 2
  // by e^{-i(k+1) theta_0}).
  const int shift = 3;
  const double th0 = two_pi * shift / m;
  SpinorField rot = SpinorField::zero(g, m);
  for (int j = 0; j < m; ++j) {
    rot.c1.col(j) = a.c1.col((j - shift + m) % m);
    rot.c2.col(j) = a.c2.col((j - shift + m) % m);
  }
  const ModeSet sr = decompose(rot, k_max, 0.5);
  for (int k = -k_max; k <= k_max; ++k) {
    CAPTURE(k);
    const cd ph1 = std::polar(1.0, -k * th0);
    const cd ph2 = std::polar(1.0, -(k + 1) * th0);
    CHECK((sr.modes.at(k).phi - ph1 * sa.modes.at(k).phi).norm() <=
          1e-12 * (1.0 + sa.modes.at(k).phi.norm()));
    CHECK((sr.modes.at(k).psi - ph2 * sa.modes.at(k).psi).norm() <=
          1e-12 * (1.0 + sa.modes.at(k).psi.norm()));
  }
}

TEST_CASE("angular content beyond k_max lands in the truncation tail") {
  const RadialGrid& g = small_grid();
  const int m = 24;
  SpinorField f = SpinorField::zero(g, m);
  const Eigen::VectorXcd prof =
      g.r.unaryExpr([](double r) { return std::exp(-0.5 * r * r); })
          .cast<cd>()
          .matrix();
  for (int j = 0; j < m; ++j)
    f.c1.col(j) = prof * std::polar(1.0, 5.0 * two_pi * j / m);

  const ModeSet s = decompose(f, 2, 0.5);
  CHECK(s.norm_sq() <= 1e-24 * f.norm_sq());
  CHECK(s.truncation_tail_sq ==
        doctest::Approx(f.norm_sq()).epsilon(1e-12));
}

TEST_CASE("decompose refuses a theta grid below the resolution bound") {
  const SpinorField f = SpinorField::zero(small_grid(), 12);
  CHECK_THROWS_AS((void)decompose(f, 4, 0.5), resolution_error);
}

TEST_CASE("CSV and JSON import rebuild the same field") {
  const char* csv =
      "# spinor field export\n"
      "# r, theta, re1, im1, re2, im2\n"
      "1.0, 0.0,              1.0, 0.0,  0.5, -0.5\n"
      "2.0, 0.0,              0.0, 1.0,  0.0,  0.0\n"
      "0.5, 0.0,              2.0, 0.0,  1.0,  0.0\n"
      "0.5, 3.141592653589793, 0.0, 0.0, -1.0,  0.0\n"
      "1.0, 3.141592653589793, 0.25, 0.25, 0.0, 1.0\n"
      "2.0, 3.141592653589793, 1.0, -1.0, 0.0,  0.0\n";
  std::istringstream cs(csv);
  const SpinorField f = import_spinor_csv(cs);

  CHECK(f.theta_count == 2);
  REQUIRE(f.radial.count() == 3);
  CHECK(f.radial.r[0] == 0.5);
  CHECK(f.radial.r[1] == 1.0);
  CHECK(f.radial.r[2] == 2.0);
  CHECK(f.c1(0, 0) == cd(2.0, 0.0));
  CHECK(f.c1(1, 1) == cd(0.25, 0.25));
  CHECK(f.c2(0, 1) == cd(-1.0, 0.0));
  CHECK(f.c2(2, 0) == cd(0.0, 0.0));

  // Trapezoid weights in r dr on the imported nodes.
  CHECK(f.radial.w[1] == doctest::Approx(1.0 * 0.75).epsilon(1e-15));

  const char* json =
      "{\"rows\": ["
      "[1.0, 0.0, 1.0, 0.0, 0.5, -0.5],"
      "[2.0, 0.0, 0.0, 1.0, 0.0, 0.0],"
      "[0.5, 0.0, 2.0, 0.0, 1.0, 0.0],"
      "[0.5, 3.141592653589793, 0.0, 0.0, -1.0, 0.0],"
      "[1.0, 3.141592653589793, 0.25, 0.25, 0.0, 1.0],"
      "[2.0, 3.141592653589793, 1.0, -1.0, 0.0, 0.0]]}";
  std::istringstream js(json);
  const SpinorField g = import_spinor_json(js);
  CHECK(g.radial.id == f.radial.id);
  CHECK((g.c1 - f.c1).norm() == 0.0);
  CHECK((g.c2 - f.c2).norm() == 0.0);
}

TEST_CASE("imports reject incomplete grids and non-uniform angles") {
  {
    std::istringstream cs("1.0, 0.0, 1, 0, 0, 0\n2.0, 0.0, 1, 0, 0, 0\n"
                          "1.0, 3.141592653589793, 1, 0, 0, 0\n");
    CHECK_THROWS_AS((void)import_spinor_csv(cs), std::runtime_error);
  }
  {
    std::istringstream cs("1.0, 0.0, 1, 0, 0, 0\n1.0, 1.0, 1, 0, 0, 0\n");
    CHECK_THROWS_AS((void)import_spinor_csv(cs), std::runtime_error);
  }
  {
    std::istringstream cs("");
    CHECK_THROWS_AS((void)import_spinor_csv(cs), std::runtime_error);
  }
  {
    std::istringstream js("[[1.0, 0.0, 1, 0, 0]]");
    CHECK_THROWS_AS((void)import_spinor_json(js), std::runtime_error);
  }
}
