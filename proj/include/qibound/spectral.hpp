#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qibound::weighting {
class ProbeFunction;
}

namespace qibound::spectral {

// Fourier convention used everywhere:  fhat(w) = (1/2pi) \int dt e^{-iwt} f(t).
inline constexpr const char* kConvention = "one-over-two-pi-forward";

struct SampledFunction {
  std::vector<double> times;   // uniform, strictly increasing
  std::vector<double> values;
};

// Transform values on a uniform frequency grid, with cubic interpolation
// between nodes. Profiles of real even time functions are real and even.
struct FrequencyProfile {
  std::vector<double> grid;
  std::vector<std::complex<double>> values;

  double spacing() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
  std::complex<double> interpolate(double w) const;
  void write_text(const std::string& path) const;
};

struct TransformOptions {
  double span_over_t0 = 8.0;   // frequency grid span: [-span/t0, span/t0]
  std::size_t grid_points = 4096;
  std::size_t time_samples = 32768;
  double nyquist_margin = 4.0;
};

// (1/2pi) \int e^{-iwt} fn(t) dt by trapezoid quadrature on the sample grid,
// with an integration-by-parts endpoint correction for the truncated tails.
// Throws AccuracyError when the requested frequency violates the Nyquist
// margin or the samples do not decay at the ends.
std::complex<double> fourier_forward(const SampledFunction& fn, double w,
                                     double nyquist_margin = 4.0);

// g = FT(sqrt f) on a symmetric grid wide enough that |g|^2 carries its
// total integral to 1e-6. Conjugate symmetry conj(g(p)) = g(-p) holds by
// construction for real input.
FrequencyProfile sqrt_probe_transform(const weighting::ProbeFunction& probe,
                                      const TransformOptions& opt = {});

// | \int g(p - w) g(w) dw  -  fhat(p) |, both sides by independent
// quadrature (g from the numerical profile, fhat by direct transform of f);
// <= 1e-6 for built-in probes.
double convolution_identity_check(const weighting::ProbeFunction& probe, double p);

}  // namespace qibound::spectral
