#include <doctest.h>

#include <cmath>

#include "qibound/quadrature.hpp"

using namespace qibound;

TEST_CASE("adaptive rule reproduces known integrals") {
  auto r = quadrature::integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.converged);

  auto poly = quadrature::integrate([](double x) { return 3.0 * x * x; }, -1.0, 2.0);
  CHECK(poly.value == doctest::Approx(9.0).epsilon(1e-13));
}

TEST_CASE("kinked integrand converges with subdivision") {
  auto r = quadrature::integrate([](double x) { return std::exp(-std::abs(x)); }, -4.0, 4.0);
  CHECK(r.value == doctest::Approx(2.0 * (1.0 - std::exp(-4.0))).epsilon(1e-10));
  CHECK(r.error <= 1e-8 * r.value);
}

TEST_CASE("semi-infinite exponential substitution") {
  // \int_0^inf e^{-2w} dw = 1/2
  auto r = quadrature::integrate_semi_infinite(
      [](double w) { return std::exp(-2.0 * w); }, 0.0, 0.5);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-11));

  // \int_1^inf e^{-(w-1)^2} dw = sqrt(pi)/2
  auto g = quadrature::integrate_semi_infinite(
      [](double w) { return std::exp(-(w - 1.0) * (w - 1.0)); }, 1.0, 1.0);
  CHECK(g.value == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-11));
}

TEST_CASE("rational map handles power-law tails") {
  // \int_1^inf dw / w^4 = 1/3
  auto r = quadrature::integrate_semi_infinite_rational(
      [](double w) { return 1.0 / (w * w * w * w); }, 1.0, 2.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("real-line split") {
  // Lorentzian-squared shape integrates to 1 (power tails).
  auto f = [](double t) {
    const double d = t * t + 1.0;
    return (2.0 / M_PI) / (d * d);
  };
  quadrature::Options opt;
  opt.rel_tol = 1e-12;
  auto r = quadrature::integrate_real_line(f, 1.0, {-8.0, 0.0, 8.0}, opt);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(r.converged);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  std::vector<double> nodes, weights;
  quadrature::gauss_legendre(12, 0.0, 2.0, nodes, weights);
  double s7 = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s7 += weights[i] * std::pow(nodes[i], 7);
  CHECK(s7 == doctest::Approx(std::pow(2.0, 8) / 8.0).epsilon(1e-13));

  double se = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) se += weights[i] * std::exp(-nodes[i]);
  CHECK(se == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
}
