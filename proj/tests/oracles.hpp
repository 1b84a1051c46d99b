// Test-side oracles, independent of the library code paths they check.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

// erf by the scaled all-positive series
//   erf(x) = (2/sqrt(pi)) e^{-x^2} sum_n (2x^2)^n x / (2n+1)!!,
// long-double accumulation; relative accuracy well below 1e-13 on [0, 6].
inline double erf_series(double x) {
  if (x < 0.0) return -erf_series(-x);
  const long double xl = x;
  const long double x2 = 2.0L * xl * xl;
  long double term = xl;
  long double sum = xl;
  for (int n = 1; n < 400; ++n) {
    term *= x2 / static_cast<long double>(2 * n + 1);
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  const long double pref = 2.0L / std::sqrt(static_cast<long double>(M_PI));
  return static_cast<double>(pref * std::exp(-xl * xl) * sum);
}

// Squeezed-vacuum number-basis coefficients by the closed recursion
//   c_{2n} = (-e^{i theta} tanh r)^n sqrt((2n)!)/(2^n n!) / sqrt(cosh r).
inline std::vector<std::complex<double>> squeezed_coefficients(double r, double theta,
                                                               int nmax) {
  std::vector<std::complex<double>> c(nmax + 1, {0.0, 0.0});
  const std::complex<double> q = -std::polar(std::tanh(r), theta);
  std::complex<double> amp = 1.0 / std::sqrt(std::cosh(r));
  c[0] = amp;
  for (int n = 1; 2 * n <= nmax; ++n) {
    // ratio c_{2n}/c_{2n-2} = q * sqrt((2n)(2n-1))/(2n)
    amp *= q * std::sqrt(double(2 * n) * double(2 * n - 1)) / double(2 * n);
    c[2 * n] = amp;
  }
  return c;
}

// Exact rect-band momentum integral \int p^3 dp = (hi^4 - lo^4)/4.
inline double rect_band_p3_integral(double omega0, double bandwidth) {
  const double lo = omega0 - 0.5 * bandwidth;
  const double hi = omega0 + 0.5 * bandwidth;
  return (hi * hi * hi * hi - lo * lo * lo * lo) / 4.0;
}

// Antiderivative of p^3 e^{-a p}.
inline double p3_exp_antiderivative(double p, double a) {
  return -std::exp(-a * p) *
         (p * p * p / a + 3.0 * p * p / (a * a) + 6.0 * p / (a * a * a) + 6.0 / (a * a * a * a));
}

// Composite Simpson on [a, b].
template <typename F>
double simpson(F f, double a, double b, int n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Least-squares fit of y ~ c1 x + c2 x^2 (through the origin); returns
// {c1, c2, max residual}.
struct QuadraticFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double max_residual = 0.0;
};

inline QuadraticFit fit_linear_quadratic(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  double s2 = 0, s3 = 0, s4 = 0, sxy = 0, sx2y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    s2 += xi * xi;
    s3 += xi * xi * xi;
    s4 += xi * xi * xi * xi;
    sxy += xi * y[i];
    sx2y += xi * xi * y[i];
  }
  const double det = s2 * s4 - s3 * s3;
  QuadraticFit fit;
  fit.c1 = (s4 * sxy - s3 * sx2y) / det;
  fit.c2 = (s2 * sx2y - s3 * sxy) / det;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::abs(y[i] - fit.c1 * x[i] - fit.c2 * x[i] * x[i]);
    fit.max_residual = std::max(fit.max_residual, r);
  }
  return fit;
}

}  // namespace oracles
