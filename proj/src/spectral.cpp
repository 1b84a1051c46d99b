#include "qibound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qibound/errors.hpp"
#include "qibound/weighting.hpp"

namespace qibound::spectral {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

using cd = std::complex<double>;

// Sample sqrt(f) densely enough for the requested transforms. The span is
// picked per kind: gaussian tails vanish by 12 t0; the lorentzian-squared
// square root decays like t^-2, so a wide span plus the endpoint correction
// in fourier_forward carries the remainder.
SampledFunction sample_sqrt_probe(const weighting::ProbeFunction& probe, std::size_t n) {
  const double t0 = probe.t0();
  double span;
  switch (probe.kind()) {
    case weighting::ProbeKind::gaussian:
      span = 14.0 * t0;
      break;
    case weighting::ProbeKind::lorentzian_squared:
      span = 400.0 * t0;
      break;
    default: {
      span = std::max(std::abs(probe.sample_times().front()),
                      std::abs(probe.sample_times().back()));
      break;
    }
  }
  SampledFunction fn;
  fn.times.resize(n);
  fn.values.resize(n);
  const double dt = 2.0 * span / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -span + dt * static_cast<double>(i);
    fn.times[i] = t;
    double v = 0.0;
    if (probe.kind() == weighting::ProbeKind::tabulated) {
      const auto& ts = probe.sample_times();
      if (t >= ts.front() && t <= ts.back()) v = probe.eval(t);
    } else {
      v = probe.eval(t);
    }
    fn.values[i] = std::sqrt(std::max(v, 0.0));
  }
  return fn;
}

}  // namespace

std::complex<double> FrequencyProfile::interpolate(double w) const {
  if (grid.empty()) throw ValidationError("FrequencyProfile: empty grid");
  if (w < grid.front() || w > grid.back()) return {0.0, 0.0};
  const double h = spacing();
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  auto i = static_cast<std::ptrdiff_t>((w - grid.front()) / h);
  i = std::clamp<std::ptrdiff_t>(i, 1, n - 3);
  const double u = (w - grid[i]) / h;
  // Catmull-Rom cubic through the four surrounding nodes.
  const cd p0 = values[i - 1], p1 = values[i], p2 = values[i + 1], p3 = values[i + 2];
  const cd a = 2.0 * p1;
  const cd b = p2 - p0;
  const cd c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
  const cd d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
  return 0.5 * (a + b * u + c * u * u + d * u * u * u);
}

void FrequencyProfile::write_text(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write profile: " + path);
  double max_imag = 0.0;
  for (const auto& v : values) max_imag = std::max(max_imag, std::abs(v.imag()));
  out << "# frequency  value (convention: " << kConvention
      << "; max |imag| = " << max_imag << ")\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << grid[i] << " " << values[i].real();
    if (max_imag > 1e-12) out << " " << values[i].imag();
    out << "\n";
  }
}

std::complex<double> fourier_forward(const SampledFunction& fn, double w, double nyquist_margin) {
  const auto n = fn.times.size();
  if (n < 8 || fn.values.size() != n)
    throw ValidationError("fourier_forward: need >= 8 uniform samples");
  const double dt = fn.times[1] - fn.times[0];
  if (dt <= 0.0) throw ValidationError("fourier_forward: times must increase");

  // Nyquist guard: the grid must resolve the requested frequency with margin.
  const double w_nyquist = M_PI / dt;
  if (std::abs(w) * nyquist_margin > w_nyquist)
    throw AccuracyError("fourier_forward: requested frequency violates the Nyquist margin");

  double max_abs = 0.0;
  for (double v : fn.values) max_abs = std::max(max_abs, std::abs(v));
  const double tail = std::max(std::abs(fn.values.front()), std::abs(fn.values.back()));
  if (max_abs > 0.0 && tail > 0.05 * max_abs)
    throw AccuracyError("fourier_forward: samples do not decay at the grid ends");

  // Phase recurrence: e^{-iw t_i} = e^{-iw t_0} (e^{-iw dt})^i; the
  // accumulated roundoff ~ n * eps stays far below the quadrature targets.
  cd sum{0.0, 0.0};
  cd phase{std::cos(w * fn.times[0]), -std::sin(w * fn.times[0])};
  const cd step{std::cos(w * dt), -std::sin(w * dt)};
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += weight * fn.values[i] * phase;
    phase *= step;
  }
  cd integral = sum * dt;

  // Endpoint correction: one integration by parts of each truncated tail,
  // assuming |f| decreases beyond the span. For w = 0 fit a power tail
  // f ~ A/t^2 (the slowest decay admitted by the decay check above).
  const double tb = fn.times.back(), ta = fn.times.front();
  const double fb = fn.values.back(), fa = fn.values.front();
  if (w != 0.0) {
    const cd iw{0.0, w};
    integral += fb * cd{std::cos(w * tb), -std::sin(w * tb)} / iw;
    integral -= fa * cd{std::cos(w * ta), -std::sin(w * ta)} / iw;
  } else {
    if (tb > 0.0) integral += fb * tb;    // \int_T^inf A/t^2 with A = f(T) T^2
    if (ta < 0.0) integral += fa * (-ta);
  }
  return integral / kTwoPi;
}

FrequencyProfile sqrt_probe_transform(const weighting::ProbeFunction& probe,
                                      const TransformOptions& opt) {
  if (probe.kind() == weighting::ProbeKind::tabulated) {
    // sqrt(f) must itself be integrable over the table span; demand decay.
    const auto& v = probe.sample_values();
    double peak = *std::max_element(v.begin(), v.end());
    if (std::sqrt(std::max(v.front(), v.back())) > 0.2 * std::sqrt(peak))
      throw AccuracyError("sqrt_probe_transform: tabulated probe lacks decay for sqrt(f)");
  }

  SampledFunction fn = sample_sqrt_probe(probe, opt.time_samples);
  const double wmax = opt.span_over_t0 / probe.t0();
  const std::size_t m = opt.grid_points;

  FrequencyProfile prof;
  prof.grid.resize(m);
  prof.values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = -wmax + 2.0 * wmax * static_cast<double>(i) / static_cast<double>(m - 1);
    prof.grid[i] = w;
    prof.values[i] = fourier_forward(fn, w, opt.nyquist_margin);
  }
  return prof;
}

double convolution_identity_check(const weighting::ProbeFunction& probe, double p) {
  const FrequencyProfile& g = probe.sqrt_transform_profile();
  // Left side: \int g(p - w) g(w) dw on the profile grid (trapezoid; the
  // profile vanishes outside its span by construction).
  const double h = g.spacing();
  double conv = 0.0;
  for (std::size_t i = 0; i < g.grid.size(); ++i) {
    const double w = g.grid[i];
    const double weight = (i == 0 || i + 1 == g.grid.size()) ? 0.5 : 1.0;
    conv += weight * (g.interpolate(p - w) * g.values[i]).real();
  }
  conv *= h;

  // Right side: direct transform of f itself.
  SampledFunction fn;
  const std::size_t n = TransformOptions{}.time_samples;
  const double span = (probe.kind() == weighting::ProbeKind::gaussian)
                          ? 14.0 * probe.t0()
                          : 400.0 * probe.t0();
  fn.times.resize(n);
  fn.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -span + 2.0 * span * static_cast<double>(i) / static_cast<double>(n - 1);
    fn.times[i] = t;
    fn.values[i] = probe.eval(t);
  }
  const double fhat = fourier_forward(fn, p).real();
  return std::abs(conv - fhat);
}

}  // namespace qibound::spectral
