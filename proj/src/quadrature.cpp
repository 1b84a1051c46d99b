#include "qibound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "qibound/errors.hpp"

namespace qibound::quadrature {

namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule (QUADPACK).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const Fn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);

  double result_kronrod = kWgk[7] * fv[7];
  double result_gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    result_kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) result_gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  result_kronrod *= h;
  result_gauss *= h;

  // QUADPACK-style scaled error estimate.
  double mean = result_kronrod / (b - a);
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  resasc *= std::abs(h);
  double err = std::abs(result_kronrod - result_gauss);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, result_kronrod, err};
}

}  // namespace

Result integrate(const Fn& f, double a, double b, const Options& opt) {
  Result res;
  if (a == b) return res;
  std::priority_queue<Interval> heap;
  Interval first = gk15(f, a, b);
  res.evaluations = 15;
  double total = first.value;
  double total_err = first.error;
  heap.push(first);

  auto tolerance = [&](double t) { return std::max(opt.abs_tol, opt.rel_tol * std::abs(t)); };

  while (total_err > tolerance(total) && heap.size() < opt.max_intervals) {
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {  // interval exhausted at machine precision
      total_err = std::max(total_err - worst.error, 0.0);
      continue;
    }
    Interval left = gk15(f, worst.a, mid);
    Interval right = gk15(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  res.value = total;
  res.error = total_err;
  res.converged = total_err <= tolerance(total) * 1.001 + 1e-300;
  return res;
}

Result integrate_semi_infinite(const Fn& f, double a, double decay_scale, const Options& opt) {
  if (decay_scale <= 0.0) throw DomainError("integrate_semi_infinite: decay_scale must be > 0");
  const double s = decay_scale;
  auto g = [&](double u) { return f(a - s * std::log(u)) * s / u; };
  return integrate(g, 0.0, 1.0, opt);
}

Result integrate_semi_infinite_rational(const Fn& f, double a, double scale,
                                        const Options& opt) {
  if (scale <= 0.0) throw DomainError("integrate_semi_infinite_rational: scale must be > 0");
  const double s = scale;
  auto g = [&](double u) { return f(a + s * (1.0 - u) / u) * s / (u * u); };
  return integrate(g, 0.0, 1.0, opt);
}

Result integrate_real_line(const Fn& f, double tail_scale,
                           const std::vector<double>& breakpoints, const Options& opt) {
  std::vector<double> pts = breakpoints;
  if (pts.empty()) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());

  Result total;
  Options sub = opt;
  sub.rel_tol = 0.25 * opt.rel_tol;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Result r = integrate(f, pts[i], pts[i + 1], sub);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  Result right = integrate_semi_infinite_rational(f, pts.back(), tail_scale, sub);
  auto reflected = [&](double w) { return f(-w); };
  Result left = integrate_semi_infinite_rational(reflected, -pts.front(), tail_scale, sub);
  total.value += right.value + left.value;
  total.error += right.error + left.error;
  total.evaluations += right.evaluations + left.evaluations;
  total.converged = total.converged && right.converged && left.converged;
  return total;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on Legendre polynomials; standard symmetric construction.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
    nodes[n - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    weights[i] = weights[n - 1 - i] = 0.5 * (b - a) * w;
  }
}

}  // namespace qibound::quadrature
