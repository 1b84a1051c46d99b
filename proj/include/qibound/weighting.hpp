#pragma once

#include <memory>
#include <string>
#include <vector>

namespace qibound::spectral {
struct FrequencyProfile;
}

namespace qibound::weighting {

// Natural units (hbar = c = 1) throughout: frequencies and inverse times
// share one unit.

enum class ProbeKind { lorentzian_squared, gaussian, tabulated };

// Normalized time-probe function f(t): f >= 0, \int f dt = 1, scale t0.
//
// Built-in kinds:
//   lorentzian_squared  f(t) = (2/pi) t0^3 / (t^2 + t0^2)^2
//   gaussian            g(t) = exp(-t^2/(2 t0^2)) / (t0 sqrt(2 pi))
// Tabulated probes are renormalized on construction (trapezoid rule).
class ProbeFunction {
 public:
  static ProbeFunction lorentzian_squared(double t0);
  static ProbeFunction gaussian(double t0);
  static ProbeFunction tabulated(std::vector<double> times, std::vector<double> values);
  static ProbeFunction tabulated_from_file(const std::string& path);

  ProbeKind kind() const { return kind_; }
  double t0() const { return t0_; }

  // f(t); even in t for built-in kinds. Tabulated: linear interpolation,
  // out-of-range t is a domain error.
  double eval(double t) const;

  // \int f dt by quadrature (1 within 1e-10 for built-in kinds).
  double norm() const;

  // Fourier transform of f under the 1/(2 pi) forward convention,
  // real for the even built-in kinds.
  double ft(double w) const;

  // g(w) = FT(sqrt f)(w); positive square-root convention.
  double sqrt_ft(double w) const;

  // |FT(sqrt f)(w)|^2; closed form for built-in kinds, numerical transform
  // (module spectral) for tabulated ones.
  double sqrt_ft_sq(double w) const;

  // Positive root of f(t) = f(0)/2 (half width at half maximum);
  // built-in kinds only.
  double half_width() const;

  // Decay length of g(w), used to scale semi-infinite quadratures.
  double transform_decay_scale() const;

  // Cached numerical profile of FT(sqrt f) (built on first use).
  const spectral::FrequencyProfile& sqrt_transform_profile() const;

  const std::vector<double>& sample_times() const { return times_; }
  const std::vector<double>& sample_values() const { return values_; }

  std::string describe() const;

 private:
  ProbeFunction(ProbeKind kind, double t0);

  ProbeKind kind_;
  double t0_ = 1.0;
  std::vector<double> times_;   // tabulated only
  std::vector<double> values_;  // tabulated only (renormalized)
  mutable std::shared_ptr<const spectral::FrequencyProfile> sqrt_profile_;
};

enum class SensitivityKind { rect_band, gaussian_band, sharp_line };

// Detector frequency weighting mu(w) restricting observables to a band.
// sharp_line is a symbolic narrow-band marker, resolved analytically in the
// bounds module; sampling it is an unsupported operation.
class SensitivityFunction {
 public:
  static SensitivityFunction rect_band(double omega0, double bandwidth);
  static SensitivityFunction gaussian_band(double omega0, double bandwidth);
  static SensitivityFunction sharp_line(double omega0);

  SensitivityKind kind() const { return kind_; }
  double omega0() const { return omega0_; }
  double bandwidth() const { return bandwidth_; }

  double eval(double w) const;

  // Bandwidth/omega0 <= 0.1 is required wherever a narrow-band reduction is
  // applied; callers of those code paths use this check.
  bool narrow_band() const;

  std::string describe() const;

 private:
  SensitivityFunction(SensitivityKind kind, double omega0, double bandwidth);

  SensitivityKind kind_;
  double omega0_;
  double bandwidth_;
};

}  // namespace qibound::weighting
