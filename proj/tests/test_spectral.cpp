#include <doctest.h>

#include <cmath>

#include "qibound/errors.hpp"
#include "qibound/spectral.hpp"
#include "qibound/weighting.hpp"

using namespace qibound;
using weighting::ProbeFunction;

namespace {

spectral::SampledFunction sample(const ProbeFunction& probe, double span, std::size_t n,
                                 bool take_sqrt) {
  spectral::SampledFunction fn;
  fn.times.resize(n);
  fn.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -span + 2.0 * span * i / (n - 1);
    fn.times[i] = t;
    const double v = probe.eval(t);
    fn.values[i] = take_sqrt ? std::sqrt(v) : v;
  }
  return fn;
}

}  // namespace

TEST_CASE("transform at zero frequency is the norm over 2 pi") {
  auto g = ProbeFunction::gaussian(1.0);
  auto fn = sample(g, 14.0, 8192, false);
  auto val = spectral::fourier_forward(fn, 0.0);
  CHECK(val.real() == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-9));
  CHECK(std::abs(val.imag()) < 1e-12);
}

TEST_CASE("real even input gives real even transform") {
  auto g = ProbeFunction::gaussian(1.0);
  auto fn = sample(g, 14.0, 8192, true);
  for (double w : {0.3, 1.1, 2.0}) {
    auto plus = spectral::fourier_forward(fn, w);
    auto minus = spectral::fourier_forward(fn, -w);
    CHECK(std::abs(plus.imag()) < 1e-12);
    CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-12));
  }
}

TEST_CASE("numerical sqrt-lorentzian transform matches the closed form") {
  auto lor = ProbeFunction::lorentzian_squared(1.0);
  auto fn = sample(lor, 400.0, 32768, true);
  const double got = spectral::fourier_forward(fn, 1.0).real();
  const double want_sq = 1.0 / (2.0 * M_PI) * std::exp(-2.0);
  CHECK(got * got == doctest::Approx(want_sq).epsilon(1e-6));
}

TEST_CASE("gaussian closed form vs numerical transform of sqrt(g)") {
  auto g = ProbeFunction::gaussian(1.0);
  auto fn = sample(g, 14.0, 16384, true);
  for (double w : {0.0, 0.5, 1.0, 2.0}) {
    const double numeric = spectral::fourier_forward(fn, w).real();
    const double closed = std::sqrt(g.sqrt_ft_sq(w));
    CHECK(numeric == doctest::Approx(closed).epsilon(1e-8));
  }
}

TEST_CASE("nyquist and decay guards") {
  auto g = ProbeFunction::gaussian(1.0);
  auto coarse = sample(g, 14.0, 32, false);
  CHECK_THROWS_AS((void)spectral::fourier_forward(coarse, 3.0), AccuracyError);

  spectral::SampledFunction flat;
  for (int i = 0; i < 64; ++i) {
    flat.times.push_back(i * 0.1);
    flat.values.push_back(1.0);  // no decay at grid ends
  }
  CHECK_THROWS_AS((void)spectral::fourier_forward(flat, 0.5), AccuracyError);
}

TEST_CASE("sqrt_probe_transform profile values") {
  auto gau = ProbeFunction::gaussian(1.0);
  auto prof = spectral::sqrt_probe_transform(gau);
  const double g0 = prof.interpolate(0.0).real();
  CHECK(g0 * g0 == doctest::Approx(1.0 / (M_PI * std::sqrt(2.0 * M_PI))).epsilon(1e-8));

  auto lor = ProbeFunction::lorentzian_squared(2.0);
  auto prof_l = spectral::sqrt_probe_transform(lor);
  for (double w = -3.0; w <= 3.0; w += 0.37) {
    const double got = std::norm(prof_l.interpolate(w));
    const double want = 2.0 / (2.0 * M_PI) * std::exp(-4.0 * std::abs(w));
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("profile conjugate symmetry") {
  for (int kind = 0; kind < 2; ++kind) {
    auto probe = kind == 0 ? ProbeFunction::gaussian(1.0)
                           : ProbeFunction::lorentzian_squared(1.0);
    auto prof = spectral::sqrt_probe_transform(probe);
    double worst = 0.0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
      const auto mirrored = prof.interpolate(-prof.grid[i]);
      worst = std::max(worst, std::abs(prof.values[i] - std::conj(mirrored)));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("profile |g|^2 captures its total integral") {
  for (int kind = 0; kind < 2; ++kind) {
    auto probe = kind == 0 ? ProbeFunction::gaussian(1.3)
                           : ProbeFunction::lorentzian_squared(1.3);
    auto prof = spectral::sqrt_probe_transform(probe);
    double on_grid = 0.0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
      const double w = (i == 0 || i + 1 == prof.grid.size()) ? 0.5 : 1.0;
      on_grid += w * std::norm(prof.values[i]);
    }
    on_grid *= prof.spacing();
    // total \int |g|^2 dw = (1/2pi) \int f = 1/(2 pi)  (Parseval)
    CHECK(on_grid == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-6));
  }
}

TEST_CASE("linearity of the transform") {
  auto g1 = ProbeFunction::gaussian(1.0);
  auto g2 = ProbeFunction::gaussian(2.0);
  auto fn1 = sample(g1, 28.0, 8192, false);
  auto fn2 = sample(g2, 28.0, 8192, false);
  spectral::SampledFunction combo = fn1;
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = 2.0 * fn1.values[i] - 0.7 * fn2.values[i];
  for (double w : {0.0, 0.8, 1.9}) {
    const auto lhs = spectral::fourier_forward(combo, w);
    const auto rhs =
        2.0 * spectral::fourier_forward(fn1, w) - 0.7 * spectral::fourier_forward(fn2, w);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("parseval under the 1/2pi-forward convention") {
  // \int |sqrt f|^2 dt = 1 = 2 pi \int |g|^2 dw
  for (int kind = 0; kind < 2; ++kind) {
    auto probe = kind == 0 ? ProbeFunction::gaussian(0.8)
                           : ProbeFunction::lorentzian_squared(0.8);
    auto prof = spectral::sqrt_probe_transform(probe);
    double integral = 0.0;
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
      const double w = (i == 0 || i + 1 == prof.grid.size()) ? 0.5 : 1.0;
      integral += w * std::norm(prof.values[i]);
    }
    integral *= prof.spacing();
    CHECK(2.0 * M_PI * integral == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("convolution identity") {
  auto gau = ProbeFunction::gaussian(1.0);
  CHECK(spectral::convolution_identity_check(gau, 0.0) <= 1e-6);

  auto lor = ProbeFunction::lorentzian_squared(1.0);
  CHECK(spectral::convolution_identity_check(lor, 1.3) <= 1e-6);

  // evenness: identical residuals at +-p
  const double plus = spectral::convolution_identity_check(gau, 0.9);
  const double minus = spectral::convolution_identity_check(gau, -0.9);
  CHECK(plus == doctest::Approx(minus).epsilon(1e-10));
}

TEST_CASE("convolution identity across the band") {
  for (int kind = 0; kind < 2; ++kind) {
    auto probe = kind == 0 ? ProbeFunction::gaussian(1.0)
                           : ProbeFunction::lorentzian_squared(1.0);
    for (double p = -5.0; p <= 5.0; p += 1.25)
      CHECK(spectral::convolution_identity_check(probe, p) <= 1e-6);
  }
}
