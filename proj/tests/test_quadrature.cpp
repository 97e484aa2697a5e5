#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <diracab/quadrature.hpp>

using diracab::composite_rule;
using diracab::gauss_legendre;
using diracab::integrate;
using diracab::mapped_rule;

TEST_CASE("gauss_legendre nodes are symmetric and weights sum to 2") {
  for (int n : {1, 2, 7, 16, 48, 128}) {
    const auto& q = gauss_legendre(n);
    REQUIRE(q.x.size() == n);
    REQUIRE(q.w.size() == n);
    CHECK(std::abs(q.w.sum() - 2.0) <= 1e-14);
    for (int i = 0; i < n; ++i) {
      CHECK(q.x[i] > -1.0);
      CHECK(q.x[i] < 1.0);
      if (i) CHECK(q.x[i] > q.x[i - 1]);
      CHECK(std::abs(q.x[i] + q.x[n - 1 - i]) <= 1e-15);
      CHECK(q.w[i] > 0.0);
    }
  }
}

TEST_CASE("gauss_legendre is exact through degree 2n-1") {
  const auto& q = gauss_legendre(5);
  double m8 = 0.0, m9 = 0.0;
  for (int i = 0; i < 5; ++i) {
    m8 += q.w[i] * std::pow(q.x[i], 8);
    m9 += q.w[i] * std::pow(q.x[i], 9);
  }
  CHECK(std::abs(m8 - 2.0 / 9.0) <= 1e-15);  // int_-1^1 x^8 = 2/9
  CHECK(std::abs(m9) <= 1e-15);
}

TEST_CASE("mapped and composite rules preserve total weight") {
  const auto m = mapped_rule(12, -0.5, 3.0);
  CHECK(std::abs(m.w.sum() - 3.5) <= 1e-13);
  CHECK(m.x.minCoeff() > -0.5);
  CHECK(m.x.maxCoeff() < 3.0);

  const auto c = composite_rule(0.0, 10.0, 25, 8);
  REQUIRE(c.x.size() == 200);
  CHECK(std::abs(c.w.sum() - 10.0) <= 1e-12);
  for (int i = 1; i < c.x.size(); ++i) CHECK(c.x[i] > c.x[i - 1]);
}

TEST_CASE("integrate handles smooth and oscillatory integrands") {
  CHECK(std::abs(integrate([](double x) { return std::sin(x); }, 0.0,
                           3.14159265358979323846) -
                 2.0) <= 1e-13);
  CHECK(std::abs(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) -
                 (std::exp(1.0) - 1.0)) <= 1e-14);

  // 10 pi of a pure cosine cancels to zero.
  CHECK(std::abs(integrate([](double x) { return std::cos(x); }, 0.0,
                           10.0 * 3.14159265358979323846, 40)) <= 1e-12);

  const std::complex<double> i(0.0, 1.0);
  const auto z = integrate([&](double x) { return std::exp(i * x); }, 0.0, 1.0);
  CHECK(std::abs(z - (std::exp(i) - 1.0) / i) <= 1e-14);
}

TEST_CASE("gauss_legendre rejects out-of-range node counts") {
  CHECK_THROWS_AS(gauss_legendre(0), std::domain_error);
  CHECK_THROWS_AS(gauss_legendre(5000), std::domain_error);
}
