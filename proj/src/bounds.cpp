#include "qibound/bounds.hpp"

#include <cmath>
#include <limits>

#include "qibound/errors.hpp"

namespace qibound::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Momentum integration window of mu(p)^2 with negligible truncation.
std::pair<double, double> band_window(const weighting::SensitivityFunction& mu) {
  switch (mu.kind()) {
    case weighting::SensitivityKind::rect_band:
      return {std::max(0.0, mu.omega0() - 0.5 * mu.bandwidth()),
              mu.omega0() + 0.5 * mu.bandwidth()};
    case weighting::SensitivityKind::gaussian_band:
      // mu^2 = exp(-(p-w0)^2/bw^2) < 1e-18 beyond 6.5 bandwidths.
      return {std::max(0.0, mu.omega0() - 6.5 * mu.bandwidth()),
              mu.omega0() + 6.5 * mu.bandwidth()};
    case weighting::SensitivityKind::sharp_line:
      break;
  }
  throw UnsupportedError("sharp_line sensitivity has no sampling window");
}

double mu_sq(const weighting::SensitivityFunction& mu, double p) {
  const double m = mu.eval(p);
  return m * m;
}

}  // namespace

double vacuum_fluctuations(const weighting::SensitivityFunction& mu,
                           const quadrature::Options& opt) {
  if (mu.kind() == weighting::SensitivityKind::sharp_line)
    throw UnsupportedError(
        "vacuum_fluctuations: sharp_line is handled analytically inside ratio computations");
  auto [lo, hi] = band_window(mu);
  auto integrand = [&](double p) { return mu_sq(mu, p) * p * p * p; };
  auto res = quadrature::integrate(integrand, lo, hi, opt);
  if (!res.converged)
    throw AccuracyError("vacuum_fluctuations: quadrature did not converge");
  const double value = res.value / (2.0 * M_PI * M_PI);
  if (value <= 0.0)
    throw ValidationError("vacuum_fluctuations: mu vanishes on its band (zero vacuum)");
  return value;
}

BoundResult qi_bound(const BoundQuery& query) {
  const auto& probe = query.probe;
  const auto& mu = query.sensitivity;
  const double polarization_factor = (query.field_kind == FieldKind::electromagnetic) ? 2.0 : 1.0;

  if (std::abs(probe.norm() - 1.0) > 1e-6)
    throw ValidationError("qi_bound: probe is not normalized");

  BoundResult out;

  if (mu.kind() == weighting::SensitivityKind::sharp_line) {
    // Narrow-band factorization: the d^3p integrals cancel between
    // delta_max and vacuum_e2, leaving  1 + delta/vac = 1 - 4 pi J(omega0),
    // J(w0) = \int_0^inf |g(w + w0)|^2 dw.
    const double w0 = mu.omega0();
    auto res = quadrature::integrate_semi_infinite(
        [&](double w) { return probe.sqrt_ft_sq(w + w0); }, 0.0,
        probe.transform_decay_scale(), query.quad);
    if (!res.converged) throw AccuracyError("qi_bound: sharp-line quadrature did not converge");
    const double ratio = 1.0 - 2.0 * M_PI * polarization_factor * res.value;
    out.delta_max = kNaN;
    out.vacuum_e2 = kNaN;
    out.sharp_line_ratio = true;
    out.quadrature_error = 2.0 * M_PI * polarization_factor * res.error;
    out.r_db = (query.field_kind == FieldKind::electromagnetic)
                   ? (ratio > 0.0 ? 10.0 * std::log10(ratio) : -kInf)
                   : kNaN;
    return out;
  }

  auto [plo, phi] = band_window(mu);
  quadrature::Options inner_opt = query.quad;
  inner_opt.rel_tol = 0.1 * query.quad.rel_tol;

  const double decay = probe.transform_decay_scale();
  auto outer = [&](double p) {
    auto inner = quadrature::integrate_semi_infinite(
        [&](double w) { return probe.sqrt_ft_sq(w + p); }, 0.0, decay, inner_opt);
    return mu_sq(mu, p) * p * p * p * inner.value;
  };
  auto res = quadrature::integrate(outer, plo, phi, query.quad);
  if (!res.converged)
    throw AccuracyError("qi_bound: nested quadrature did not converge; error estimate " +
                        std::to_string(res.error));

  // -(C/(2 pi)^2) * 4 pi * \int dp mu^2 p^3 \int dw |g(w+p)|^2  =  -(C/pi) * res
  out.delta_max = -polarization_factor / M_PI * res.value;
  out.quadrature_error = polarization_factor / M_PI * res.error;
  out.vacuum_e2 = vacuum_fluctuations(mu, query.quad);
  out.r_db = (query.field_kind == FieldKind::electromagnetic)
                 ? reduction_db(out.delta_max, out.vacuum_e2)
                 : kNaN;
  return out;
}

double reduction_db(double delta, double vac) {
  if (!(vac > 0.0)) throw ValidationError("reduction_db: vacuum fluctuations must be > 0");
  if (delta < -vac * (1.0 + 1e-12))
    throw InequalityViolationError("reduction_db: delta < -vac violates the sandwich bound");
  const double ratio = (delta + vac) / vac;
  if (ratio <= 0.0) return -kInf;  // total suppression
  return 10.0 * std::log10(ratio);
}

double squeezing_limit_paper(double tau) {
  if (!(tau > 0.0)) throw DomainError("squeezing_limit_paper: tau must be > 0");
  return 10.0 * std::log10(std::erf(2.0 * std::sqrt(2.0) * tau));
}

double squeezing_limit_integral(double tau) {
  if (tau < 0.0) throw DomainError("squeezing_limit_integral: tau must be >= 0");
  quadrature::Options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  auto res = quadrature::integrate_semi_infinite(
      [&](double s) { return std::exp(-2.0 * (s + tau) * (s + tau)); }, 0.0, 0.5, opt);
  const double arg = 1.0 - 4.0 / std::sqrt(2.0 * M_PI) * res.value;
  if (arg <= 0.0) return -kInf;  // only reachable at the tau = 0 boundary
  return 10.0 * std::log10(arg);
}

double gaussian_aux_check(double p, double t0) {
  if (!(t0 > 0.0)) throw DomainError("gaussian_aux_check: t0 must be > 0");
  if (p < 0.0) throw DomainError("gaussian_aux_check: p must be >= 0");
  quadrature::Options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-16;
  auto res = quadrature::integrate_semi_infinite(
      [&](double w) { return std::exp(-2.0 * (p + w) * (p + w) * t0 * t0); }, 0.0,
      0.5 / t0, opt);
  return 4.0 * t0 / std::sqrt(2.0 * M_PI) * res.value;
}

std::vector<LimitRow> sweep_limits(const std::vector<double>& tau_grid, LimitMode mode) {
  if (tau_grid.empty()) throw ValidationError("sweep_limits: empty tau grid");
  std::vector<LimitRow> rows;
  rows.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    LimitRow row;
    row.tau = tau;
    try {
      row.r_db = (mode == LimitMode::paper_erf) ? squeezing_limit_paper(tau)
                                                : squeezing_limit_integral(tau);
    } catch (const Error& e) {
      row.failed = true;  // failed points are marked, never dropped
      row.error = e.what();
      row.r_db = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qibound::bounds
