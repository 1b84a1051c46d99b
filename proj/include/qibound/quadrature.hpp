#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qibound::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  bool converged = true;
};

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_intervals = 2000;
};

using Fn = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod 7/15 on [a, b].
Result integrate(const Fn& f, double a, double b, const Options& opt = {});

// \int_a^\infty f, via the exponential substitution w = a - scale*log(u),
// u in (0, 1]. `decay_scale` should match the integrand's decay length so
// the transformed integrand stays bounded near u = 0. Requires at least
// exponential decay of f.
Result integrate_semi_infinite(const Fn& f, double a, double decay_scale = 1.0,
                               const Options& opt = {});

// \int_a^\infty f via the rational map w = a + scale*(1-u)/u; also handles
// power-law tails (decay faster than 1/w^2).
Result integrate_semi_infinite_rational(const Fn& f, double a, double scale = 1.0,
                                        const Options& opt = {});

// \int_{-\infty}^{\infty} f: direct quadrature between the breakpoints and
// rational-map tails beyond the outermost ones.
Result integrate_real_line(const Fn& f, double tail_scale,
                           const std::vector<double>& breakpoints, const Options& opt = {});

// Fixed Gauss-Legendre rule of order n mapped to [a, b] (nodes, weights).
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace qibound::quadrature
