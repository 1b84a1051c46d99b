#include "qibound/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qibound/errors.hpp"
#include "qibound/quadrature.hpp"
#include "qibound/spectral.hpp"

namespace qibound::weighting {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

ProbeFunction::ProbeFunction(ProbeKind kind, double t0) : kind_(kind), t0_(t0) {
  if (t0 <= 0.0) throw ValidationError("probe: t0 must be > 0");
}

ProbeFunction ProbeFunction::lorentzian_squared(double t0) {
  return ProbeFunction(ProbeKind::lorentzian_squared, t0);
}

ProbeFunction ProbeFunction::gaussian(double t0) {
  return ProbeFunction(ProbeKind::gaussian, t0);
}

ProbeFunction ProbeFunction::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 4)
    throw ValidationError("tabulated probe: need >= 4 (t, value) pairs");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw ValidationError("tabulated probe: times must be strictly increasing");
  for (double v : values)
    if (v < 0.0 || !std::isfinite(v))
      throw ValidationError("tabulated probe: values must be finite and >= 0");

  // Renormalize by the trapezoid integral rather than rejecting.
  double integral = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    integral += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw AccuracyError("tabulated probe: divergent or zero trapezoid integral");
  for (double& v : values) v /= integral;

  // Effective scale: half width at half maximum of the table.
  double peak = *std::max_element(values.begin(), values.end());
  double hw = times.back();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > 0.0 && values[i] <= 0.5 * peak) {
      hw = times[i];
      break;
    }
  }
  ProbeFunction p(ProbeKind::tabulated, std::max(hw, 1e-12));
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  return p;
}

ProbeFunction ProbeFunction::tabulated_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open probe table: " + path);
  std::vector<double> t, v;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double ti, vi;
    if (ss >> ti >> vi) {
      t.push_back(ti);
      v.push_back(vi);
    }
  }
  return tabulated(std::move(t), std::move(v));
}

double ProbeFunction::eval(double t) const {
  switch (kind_) {
    case ProbeKind::lorentzian_squared: {
      const double d = t * t + t0_ * t0_;
      return (2.0 / M_PI) * t0_ * t0_ * t0_ / (d * d);
    }
    case ProbeKind::gaussian:
      return std::exp(-t * t / (2.0 * t0_ * t0_)) / (t0_ * std::sqrt(kTwoPi));
    case ProbeKind::tabulated: {
      if (t < times_.front() || t > times_.back())
        throw DomainError("tabulated probe: t outside table range");
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      std::size_t i = std::min<std::size_t>(times_.size() - 1,
                                            std::max<std::ptrdiff_t>(1, it - times_.begin()));
      const double u = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
      return values_[i - 1] + u * (values_[i] - values_[i - 1]);
    }
  }
  return 0.0;
}

double ProbeFunction::norm() const {
  if (kind_ == ProbeKind::tabulated) {
    double integral = 0.0;
    for (std::size_t i = 1; i < times_.size(); ++i)
      integral += 0.5 * (values_[i] + values_[i - 1]) * (times_[i] - times_[i - 1]);
    return integral;
  }
  auto f = [this](double t) { return eval(t); };
  // Tails fall off at least as fast as t^-4; the exponential substitution
  // handles them once the bulk [-8 t0, 8 t0] is integrated directly.
  quadrature::Options opt;
  opt.rel_tol = 1e-12;
  auto res = quadrature::integrate_real_line(f, t0_, {-8.0 * t0_, 0.0, 8.0 * t0_}, opt);
  if (!res.converged) throw AccuracyError("probe_norm: quadrature failed to converge");
  return res.value;
}

double ProbeFunction::ft(double w) const {
  switch (kind_) {
    case ProbeKind::lorentzian_squared:
      return (1.0 + std::abs(w) * t0_) * std::exp(-std::abs(w) * t0_) / kTwoPi;
    case ProbeKind::gaussian:
      return std::exp(-0.5 * w * w * t0_ * t0_) / kTwoPi;
    case ProbeKind::tabulated: {
      spectral::SampledFunction fn{times_, values_};
      return spectral::fourier_forward(fn, w).real();
    }
  }
  return 0.0;
}

double ProbeFunction::sqrt_ft(double w) const {
  switch (kind_) {
    case ProbeKind::lorentzian_squared:
      return std::sqrt(t0_ / kTwoPi) * std::exp(-std::abs(w) * t0_);
    case ProbeKind::gaussian:
      return std::sqrt(t0_ / (M_PI * std::sqrt(kTwoPi))) * std::exp(-w * w * t0_ * t0_);
    case ProbeKind::tabulated:
      return sqrt_transform_profile().interpolate(w).real();
  }
  return 0.0;
}

double ProbeFunction::sqrt_ft_sq(double w) const {
  const double g = sqrt_ft(w);
  return g * g;
}

double ProbeFunction::half_width() const {
  if (kind_ == ProbeKind::tabulated)
    throw UnsupportedError("half_width: built-in probe kinds only");
  const double peak = eval(0.0);
  double lo = 0.0, hi = t0_;
  while (eval(hi) > 0.5 * peak) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) > 0.5 * peak)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * t0_) break;
  }
  return 0.5 * (lo + hi);
}

double ProbeFunction::transform_decay_scale() const {
  switch (kind_) {
    case ProbeKind::lorentzian_squared:
      return 1.0 / (2.0 * t0_);
    case ProbeKind::gaussian:
      return 1.0 / t0_;
    case ProbeKind::tabulated:
      return 1.0 / t0_;
  }
  return 1.0;
}

const spectral::FrequencyProfile& ProbeFunction::sqrt_transform_profile() const {
  if (!sqrt_profile_)
    sqrt_profile_ = std::make_shared<const spectral::FrequencyProfile>(
        spectral::sqrt_probe_transform(*this));
  return *sqrt_profile_;
}

std::string ProbeFunction::describe() const {
  std::ostringstream ss;
  switch (kind_) {
    case ProbeKind::lorentzian_squared: ss << "lorentzian_squared"; break;
    case ProbeKind::gaussian: ss << "gaussian"; break;
    case ProbeKind::tabulated: ss << "tabulated[" << times_.size() << "]"; break;
  }
  ss << "(t0=" << t0_ << ")";
  return ss.str();
}

SensitivityFunction::SensitivityFunction(SensitivityKind kind, double omega0, double bandwidth)
    : kind_(kind), omega0_(omega0), bandwidth_(bandwidth) {
  if (omega0 <= 0.0) throw ValidationError("sensitivity: omega0 must be > 0");
  if (bandwidth < 0.0) throw ValidationError("sensitivity: bandwidth must be >= 0");
}

SensitivityFunction SensitivityFunction::rect_band(double omega0, double bandwidth) {
  return SensitivityFunction(SensitivityKind::rect_band, omega0, bandwidth);
}

SensitivityFunction SensitivityFunction::gaussian_band(double omega0, double bandwidth) {
  return SensitivityFunction(SensitivityKind::gaussian_band, omega0, bandwidth);
}

SensitivityFunction SensitivityFunction::sharp_line(double omega0) {
  return SensitivityFunction(SensitivityKind::sharp_line, omega0, 0.0);
}

double SensitivityFunction::eval(double w) const {
  switch (kind_) {
    case SensitivityKind::rect_band:
      return (w >= omega0_ - 0.5 * bandwidth_ && w <= omega0_ + 0.5 * bandwidth_) ? 1.0 : 0.0;
    case SensitivityKind::gaussian_band: {
      const double d = w - omega0_;
      return std::exp(-d * d / (2.0 * bandwidth_ * bandwidth_));
    }
    case SensitivityKind::sharp_line:
      throw UnsupportedError(
          "sharp_line sensitivity cannot be sampled; it is resolved analytically");
  }
  return 0.0;
}

bool SensitivityFunction::narrow_band() const {
  if (kind_ == SensitivityKind::sharp_line) return true;
  return bandwidth_ / omega0_ <= 0.1;
}

std::string SensitivityFunction::describe() const {
  std::ostringstream ss;
  switch (kind_) {
    case SensitivityKind::rect_band: ss << "rect_band"; break;
    case SensitivityKind::gaussian_band: ss << "gaussian_band"; break;
    case SensitivityKind::sharp_line: ss << "sharp_line"; break;
  }
  ss << "(omega0=" << omega0_;
  if (kind_ != SensitivityKind::sharp_line) ss << ", bw=" << bandwidth_;
  ss << ")";
  return ss.str();
}

}  // namespace qibound::weighting
