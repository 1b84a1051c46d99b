#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "qibound/errors.hpp"
#include "qibound/weighting.hpp"

using namespace qibound;
using weighting::ProbeFunction;
using weighting::SensitivityFunction;

TEST_CASE("probe peak values") {
  auto lor = ProbeFunction::lorentzian_squared(1.0);
  CHECK(lor.eval(0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));

  auto gau = ProbeFunction::gaussian(1.0);
  CHECK(gau.eval(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));

  auto gau37 = ProbeFunction::gaussian(3.7);
  CHECK(gau37.eval(0.0) == doctest::Approx(1.0 / (3.7 * std::sqrt(2.0 * M_PI))).epsilon(1e-14));
}

TEST_CASE("built-in probes are even and nonnegative") {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> ts(-30.0, 30.0);
  for (auto kind : {0, 1}) {
    auto probe = kind == 0 ? ProbeFunction::lorentzian_squared(0.7)
                           : ProbeFunction::gaussian(0.7);
    for (int i = 0; i < 200; ++i) {
      const double t = ts(rng);
      CHECK(probe.eval(t) >= 0.0);
      CHECK(probe.eval(t) == doctest::Approx(probe.eval(-t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("probe_norm is 1 across scales") {
  for (double t0 : {1e-3, 0.1, 1.0, 42.0, 1e3}) {
    CHECK(ProbeFunction::lorentzian_squared(t0).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ProbeFunction::gaussian(t0).norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("tabulated box probe renormalizes") {
  const double a = 1.5;
  std::vector<double> ts, vs;
  for (int i = 0; i <= 200; ++i) {
    ts.push_back(-a + 2.0 * a * i / 200.0);
    vs.push_back(7.0);  // arbitrary height; construction renormalizes
  }
  auto probe = ProbeFunction::tabulated(ts, vs);
  CHECK(probe.norm() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(probe.eval(0.0) == doctest::Approx(1.0 / (2.0 * a)).epsilon(1e-9));
  CHECK_THROWS_AS((void)probe.eval(2.0 * a), DomainError);
}

TEST_CASE("tabulated probe loads two-column text with comments") {
  const char* path = "probe_table_test.txt";
  {
    std::ofstream out(path);
    out << "# time value\n";
    for (int i = 0; i <= 400; ++i) {
      const double t = -6.0 + 12.0 * i / 400.0;
      out << t << "  " << std::exp(-t * t) << "\n";
    }
  }
  auto probe = ProbeFunction::tabulated_from_file(path);
  CHECK(probe.norm() == doctest::Approx(1.0).epsilon(1e-6));
  // renormalized gaussian: peak 1/sqrt(pi)
  CHECK(probe.eval(0.0) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-4));
  std::remove(path);
}

TEST_CASE("sqrt_ft_sq closed forms") {
  for (double t0 : {0.5, 1.0, 2.0}) {
    auto lor = ProbeFunction::lorentzian_squared(t0);
    auto gau = ProbeFunction::gaussian(t0);
    for (double w : {-3.0, -0.5, 0.0, 1.0, 2.5}) {
      CHECK(lor.sqrt_ft_sq(w) ==
            doctest::Approx(t0 / (2.0 * M_PI) * std::exp(-2.0 * std::abs(w) * t0))
                .epsilon(1e-13));
      CHECK(gau.sqrt_ft_sq(w) ==
            doctest::Approx(t0 / (M_PI * std::sqrt(2.0 * M_PI)) *
                            std::exp(-2.0 * w * w * t0 * t0))
                .epsilon(1e-13));
    }
  }
}

TEST_CASE("sqrt_ft_sq scaling law") {
  // value at scale t0, frequency w equals t0 * (value at scale 1, frequency w*t0)
  for (double t0 : {0.3, 2.0, 7.5}) {
    auto probe_t0_l = ProbeFunction::lorentzian_squared(t0);
    auto probe_1_l = ProbeFunction::lorentzian_squared(1.0);
    auto probe_t0_g = ProbeFunction::gaussian(t0);
    auto probe_1_g = ProbeFunction::gaussian(1.0);
    for (double w : {0.0, 0.4, 1.7}) {
      CHECK(probe_t0_l.sqrt_ft_sq(w) ==
            doctest::Approx(t0 * probe_1_l.sqrt_ft_sq(w * t0)).epsilon(1e-12));
      CHECK(probe_t0_g.sqrt_ft_sq(w) ==
            doctest::Approx(t0 * probe_1_g.sqrt_ft_sq(w * t0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("half-width roots") {
  // root-find in the implementation; frozen analytic values as the oracle
  CHECK(ProbeFunction::lorentzian_squared(1.0).half_width() ==
        doctest::Approx(std::sqrt(std::sqrt(2.0) - 1.0)).epsilon(1e-10));
  CHECK(ProbeFunction::gaussian(1.0).half_width() ==
        doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-10));
  CHECK(ProbeFunction::lorentzian_squared(5.0).half_width() ==
        doctest::Approx(5.0 * ProbeFunction::lorentzian_squared(1.0).half_width())
            .epsilon(1e-10));
  // the paper's quoted 0.6*t0 is an approximation of sqrt(sqrt(2)-1) = 0.6436
  CHECK(ProbeFunction::lorentzian_squared(1.0).half_width() == doctest::Approx(0.64).epsilon(0.01));
}

TEST_CASE("sensitivity evaluation") {
  auto rect = SensitivityFunction::rect_band(1.0, 0.1);
  CHECK(rect.eval(1.0) == 1.0);
  CHECK(rect.eval(2.0) == 0.0);
  CHECK(rect.eval(0.96) == 1.0);
  CHECK(rect.eval(0.94) == 0.0);

  auto gauss = SensitivityFunction::gaussian_band(1.0, 0.1);
  CHECK(gauss.eval(1.0) == 1.0);
  CHECK(gauss.eval(1.1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

  auto sharp = SensitivityFunction::sharp_line(1.0);
  CHECK_THROWS_AS((void)sharp.eval(1.0), UnsupportedError);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS((void)ProbeFunction::gaussian(0.0), ValidationError);
  CHECK_THROWS_AS((void)ProbeFunction::lorentzian_squared(-1.0), ValidationError);
  CHECK_THROWS_AS((void)SensitivityFunction::rect_band(0.0, 0.1), ValidationError);
  CHECK_THROWS_AS((void)SensitivityFunction::rect_band(1.0, -0.1), ValidationError);
  CHECK_THROWS_AS((void)ProbeFunction::tabulated({0.0, 1.0}, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS((void)ProbeFunction::tabulated({0.0, 1.0, 0.5, 2.0}, {1.0, 1.0, 1.0, 1.0}),
                  ValidationError);
}
