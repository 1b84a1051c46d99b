#include "qibound/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "qibound/errors.hpp"
#include "qibound/quadrature.hpp"

namespace qibound::verify {

using fock::Complex;
using fock::FieldState;
using fock::FockSpace;
using fock::ModeSet;
using fock::SpMat;
using fock::Vec3;
using fock::Vector;

namespace {

// \int_0^inf |g(w + w0)|^2 dw; closed forms for the built-in probes.
double sqrt_ft_sq_tail(const weighting::ProbeFunction& probe, double w0) {
  const double t0 = probe.t0();
  switch (probe.kind()) {
    case weighting::ProbeKind::lorentzian_squared:
      return std::exp(-2.0 * w0 * t0) / (4.0 * M_PI);
    case weighting::ProbeKind::gaussian:
      return std::erfc(std::sqrt(2.0) * w0 * t0) / (4.0 * M_PI);
    case weighting::ProbeKind::tabulated: {
      quadrature::Options opt;
      opt.rel_tol = 1e-11;
      auto res = quadrature::integrate_semi_infinite(
          [&](double w) { return probe.sqrt_ft_sq(w + w0); }, 0.0,
          probe.transform_decay_scale(), opt);
      return res.value;
    }
  }
  return 0.0;
}

double b_sign(DecompositionKind kind) {
  switch (kind) {
    case DecompositionKind::scalar_A: return 1.0;
    case DecompositionKind::scalar_A_tilde: return -1.0;
    case DecompositionKind::electromagnetic: return -1.0;
  }
  return 1.0;
}

// Effective per-momentum couplings c_i = sqrt(w_i) chi_i.
std::vector<Complex> effective_couplings(const ModeSet& modes,
                                         const std::vector<Complex>& chi) {
  if (static_cast<int>(chi.size()) != modes.momentum_count())
    throw ValidationError("decomposition: chi length must match the momentum count");
  std::vector<Complex> c(chi.size());
  for (int i = 0; i < modes.momentum_count(); ++i)
    c[i] = std::sqrt(modes.weight(i)) * chi[i];
  return c;
}

enum class MonomialType { raise_lower, raise_raise, lower_lower, lower_raise, identity };

struct Term {
  MonomialType type;
  int m = 0;
  int n = 0;
  Complex coeff;
};

using ShiftKey = std::array<int8_t, 8>;

ShiftKey shift_of(const Term& t) {
  ShiftKey key{};
  switch (t.type) {
    case MonomialType::raise_lower: key[t.m] += 1; key[t.n] -= 1; break;
    case MonomialType::raise_raise: key[t.m] += 1; key[t.n] += 1; break;
    case MonomialType::lower_lower: key[t.m] -= 1; key[t.n] -= 1; break;
    case MonomialType::lower_raise: key[t.m] -= 1; key[t.n] += 1; break;
    case MonomialType::identity: break;
  }
  return key;
}

// Amplitude of the exact compression of the monomial at column `occ`.
double amplitude(const Term& t, const std::vector<int>& occ, int nmax) {
  const int m = t.m, n = t.n;
  switch (t.type) {
    case MonomialType::raise_lower:
      if (m == n) return static_cast<double>(occ[m]);
      if (occ[n] < 1 || occ[m] > nmax - 1) return 0.0;
      return std::sqrt(double(occ[n])) * std::sqrt(double(occ[m] + 1));
    case MonomialType::raise_raise:
      if (m == n) {
        if (occ[m] > nmax - 2) return 0.0;
        return std::sqrt(double(occ[m] + 1)) * std::sqrt(double(occ[m] + 2));
      }
      if (occ[m] > nmax - 1 || occ[n] > nmax - 1) return 0.0;
      return std::sqrt(double(occ[m] + 1)) * std::sqrt(double(occ[n] + 1));
    case MonomialType::lower_lower:
      if (m == n) {
        if (occ[m] < 2) return 0.0;
        return std::sqrt(double(occ[m])) * std::sqrt(double(occ[m] - 1));
      }
      if (occ[m] < 1 || occ[n] < 1) return 0.0;
      return std::sqrt(double(occ[m])) * std::sqrt(double(occ[n]));
    case MonomialType::lower_raise:
      // a_m a_n^dag; for m = n this is the exact compression diag(n_m + 1)
      if (m == n) return static_cast<double>(occ[m] + 1);
      if (occ[n] > nmax - 1 || occ[m] < 1) return 0.0;
      return std::sqrt(double(occ[n] + 1)) * std::sqrt(double(occ[m]));
    case MonomialType::identity:
      return 1.0;
  }
  return 0.0;
}

std::vector<Complex> default_chi_with_mu(
    const ModeSet& modes, const std::optional<weighting::SensitivityFunction>& mu) {
  std::vector<Complex> chi = fock::chi_ident(modes);
  if (mu)
    for (int i = 0; i < modes.momentum_count(); ++i) chi[i] *= mu->eval(modes.omega(i));
  return chi;
}

}  // namespace

OmegaGrid make_omega_grid(const ModeSet& modes, const weighting::ProbeFunction& probe,
                          const OmegaGridOptions& opt) {
  double max_freq = 0.0;
  for (int i = 0; i < modes.momentum_count(); ++i) max_freq = std::max(max_freq, modes.omega(i));
  const double required = max_freq + 8.0 / probe.t0();
  const double omega_max = (opt.omega_max > 0.0) ? opt.omega_max : max_freq + 16.0 / probe.t0();
  if (omega_max < required) {
    std::ostringstream ss;
    ss << "omega grid covers [0, " << omega_max << "] but [" << omega_max << ", " << required
       << "] is required (max mode frequency + 8/t0)";
    throw ValidationError(ss.str());
  }

  // Panel boundaries at the mode frequencies (transform kinks), then uniform
  // panels of width <= 1/t0 up to omega_max.
  std::vector<double> cuts{0.0};
  for (int i = 0; i < modes.momentum_count(); ++i)
    if (modes.omega(i) < omega_max) cuts.push_back(modes.omega(i));
  const double width = 1.0 / probe.t0();
  double w = *std::max_element(cuts.begin(), cuts.end());
  while (w < omega_max) {
    w = std::min(w + width, omega_max);
    cuts.push_back(w);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());

  const int per_panel = std::max(4, static_cast<int>(std::lround(
                                        opt.points_per_panel * std::max(opt.density, 0.1))));
  OmegaGrid grid;
  grid.omega_max = omega_max;
  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    quadrature::gauss_legendre(per_panel, cuts[i], cuts[i + 1], nodes, weights);
    grid.nodes.insert(grid.nodes.end(), nodes.begin(), nodes.end());
    grid.weights.insert(grid.weights.end(), weights.begin(), weights.end());
  }
  return grid;
}

double residue_constant_closed(const ModeSet& modes, const weighting::ProbeFunction& probe,
                               const std::vector<Complex>& chi, DecompositionKind kind) {
  const auto c = effective_couplings(modes, chi);
  const double pol_factor =
      (kind == DecompositionKind::electromagnetic) ? modes.polarization_count() : 1.0;
  double sum = 0.0;
  for (int i = 0; i < modes.momentum_count(); ++i)
    sum += pol_factor * std::norm(c[i]) * sqrt_ft_sq_tail(probe, modes.omega(i));
  return sum;
}

DecompositionReport decomposition_check(const FockSpace& space,
                                        const weighting::ProbeFunction& probe,
                                        const std::vector<Complex>& chi,
                                        DecompositionKind kind, const OmegaGridOptions& opt) {
  const ModeSet& modes = space.modes();
  const bool em = (kind == DecompositionKind::electromagnetic);
  if (em != modes.electromagnetic())
    throw ValidationError("decomposition_check: kind does not match the mode set");

  const int L = modes.ladder_count();
  if (L > 8) throw ValidationError("decomposition_check: more than 8 ladder modes");
  const double sign = b_sign(kind);
  const auto c = effective_couplings(modes, chi);

  const OmegaGrid grid = make_omega_grid(modes, probe, opt);
  const std::size_t G = grid.nodes.size();

  // g sampled per momentum at all nodes, for both shifted arguments.
  const int M = modes.momentum_count();
  std::vector<std::vector<double>> g_minus(M), g_plus(M);
  for (int i = 0; i < M; ++i) {
    g_minus[i].resize(G);
    g_plus[i].resize(G);
    for (std::size_t k = 0; k < G; ++k) {
      g_minus[i][k] = probe.sqrt_ft(grid.nodes[k] - modes.omega(i));
      g_plus[i][k] = probe.sqrt_ft(grid.nodes[k] + modes.omega(i));
    }
  }
  auto pair_integral = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < G; ++k) s += grid.weights[k] * a[k] * b[k];
    return s;
  };

  Eigen::MatrixXd I_pp(M, M), I_pu(M, M), I_up(M, M), I_uu(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      I_pp(i, j) = pair_integral(g_minus[i], g_minus[j]);
      I_pu(i, j) = pair_integral(g_minus[i], g_plus[j]);
      I_up(i, j) = pair_integral(g_plus[i], g_minus[j]);
      I_uu(i, j) = pair_integral(g_plus[i], g_plus[j]);
    }

  double c_grid = 0.0;
  for (int m = 0; m < L; ++m) {
    const int i = modes.momentum_of(m);
    c_grid += std::norm(c[i]) * I_uu(i, i);
  }
  const double c_closed = residue_constant_closed(modes, probe, chi, kind);

  // Term list: the omega-accumulated B^dag B minus (Delta + c I).
  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(7 * L * L + 1));
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      const int i = modes.momentum_of(m), j = modes.momentum_of(n);
      double kernel = 1.0;
      if (em)
        kernel = modes.polarization(i, modes.polarization_of(m))
                     .dot(modes.polarization(j, modes.polarization_of(n)));
      if (kernel == 0.0) continue;

      const Complex cm = c[i], cn = c[j];
      // Left side.
      terms.push_back({MonomialType::raise_lower, m, n,
                       kernel * std::conj(cm) * cn * I_pp(i, j)});
      terms.push_back({MonomialType::raise_raise, m, n,
                       kernel * sign * std::conj(cm) * std::conj(cn) * I_pu(i, j)});
      terms.push_back({MonomialType::lower_lower, m, n,
                       kernel * sign * cm * cn * I_up(i, j)});
      terms.push_back({MonomialType::lower_raise, m, n,
                       kernel * cm * std::conj(cn) * I_uu(i, j)});
      // Right side, subtracted: Delta coefficients from the closed-form fhat.
      terms.push_back({MonomialType::raise_lower, m, n,
                       -kernel * std::conj(cm) * cn * probe.ft(modes.omega(j) - modes.omega(i))});
      const Complex pair_coeff =
          sign * 0.5 * kernel * cm * cn * probe.ft(modes.omega(i) + modes.omega(j));
      terms.push_back({MonomialType::lower_lower, m, n, -pair_coeff});
      terms.push_back({MonomialType::raise_raise, m, n, -std::conj(pair_coeff)});
    }
  terms.push_back({MonomialType::identity, 0, 0, Complex(-c_closed, 0.0)});

  // Group terms by their occupation shift; all members of a group address the
  // same matrix entry for a given column.
  std::map<ShiftKey, std::vector<Term>> groups;
  for (const auto& t : terms) groups[shift_of(t)].push_back(t);

  const int nmax = space.nmax();
  std::vector<int> occ(L, 0);
  double residual = 0.0;
  for (Eigen::Index v = 0; v < space.dimension(); ++v) {
    for (const auto& [key, group] : groups) {
      bool row_valid = true;
      for (int l = 0; l < L; ++l) {
        const int o = occ[l] + key[l];
        if (o < 0 || o > nmax) {
          row_valid = false;
          break;
        }
      }
      if (!row_valid) continue;
      Complex entry{0.0, 0.0};
      for (const auto& t : group) entry += t.coeff * amplitude(t, occ, nmax);
      residual = std::max(residual, std::abs(entry));
    }
    // odometer increment
    for (int l = 0; l < L; ++l) {
      if (++occ[l] <= nmax) break;
      occ[l] = 0;
    }
  }

  DecompositionReport report;
  report.operator_residual = residual;
  report.residue_constant = c_grid;
  report.residue_closed_form = c_closed;
  report.residue_relative_gap = std::abs(c_grid - c_closed) / std::max(c_closed, 1e-300);
  report.grid_points = G;
  report.omega_max = grid.omega_max;
  return report;
}

InequalityScanReport inequality_scan(const std::shared_ptr<const FockSpace>& space,
                                     const weighting::ProbeFunction& probe,
                                     const std::optional<weighting::SensitivityFunction>& mu,
                                     const std::vector<FieldState>& states) {
  const ModeSet& modes = space->modes();
  const DecompositionKind kind = modes.electromagnetic() ? DecompositionKind::electromagnetic
                                                         : DecompositionKind::scalar_A_tilde;
  const std::vector<Complex> chi = default_chi_with_mu(modes, mu);
  const double c = residue_constant_closed(modes, probe, chi, kind);
  const SpMat delta = fock::smeared_delta_operator(*space, probe, Vec3::Zero(), mu, 0.0);

  InequalityScanReport report;
  report.bound = -c;
  for (const auto& state : states) {
    ScanRow row;
    row.state = state.label;
    row.delta_expectation = fock::expectation(state, delta);
    row.bound = -c;
    row.margin = row.delta_expectation + c;
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ScanRow& a, const ScanRow& b) { return a.margin < b.margin; });
  report.min_margin = report.rows.empty() ? 0.0 : report.rows.front().margin;
  if (report.min_margin < -1e-9) {
    std::ostringstream ss;
    ss << "inequality violated: state '" << report.rows.front().state << "' has margin "
       << report.min_margin;
    throw InequalityViolationError(ss.str());
  }
  return report;
}

double max_capacity_squeeze(int nmax, double population_limit) {
  // Highest even occupation level <= nmax carries
  //   p = (2k)! / (4^k k!^2) tanh(r)^{2k} / cosh(r),  2k = level.
  const int level = (nmax / 2) * 2;
  if (level == 0) return 0.0;
  const int k = level / 2;
  double log_binom = 0.0;  // log[(2k)!/(4^k k!^2)]
  for (int j = 1; j <= 2 * k; ++j) log_binom += std::log(double(j));
  for (int j = 1; j <= k; ++j) log_binom -= 2.0 * std::log(double(j));
  log_binom -= k * std::log(4.0);

  auto population = [&](double r) {
    return std::exp(log_binom + 2.0 * k * std::log(std::tanh(r))) / std::cosh(r);
  };
  double lo = 1e-6, hi = 3.0;
  if (population(hi) < population_limit) return hi;
  if (population(lo) > population_limit) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (population(mid) < population_limit ? lo : hi) = mid;
  }
  return lo;
}

std::vector<FieldState> random_scan_states(const std::shared_ptr<const FockSpace>& space,
                                           int per_family, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int L = space->modes().ladder_count();
  const int nmax = space->nmax();

  // Coherent capacity: Poisson top-level population below 1e-9.
  double lgf = 0.0;
  for (int j = 1; j <= nmax; ++j) lgf += std::log(double(j));
  const double lambda_max = std::exp((std::log(1e-9) + lgf) / nmax);
  const double alpha_max = 0.8 * std::sqrt(lambda_max);
  const double r_max = std::min(1.0, max_capacity_squeeze(nmax));

  std::vector<FieldState> states;
  states.reserve(static_cast<std::size_t>(4 * per_family));

  for (int s = 0; s < per_family; ++s) {
    std::vector<Complex> alphas(L);
    for (auto& a : alphas) a = std::polar(alpha_max * unit(rng), 2.0 * M_PI * unit(rng));
    auto st = fock::make_coherent(space, alphas);
    st.label = "coherent#" + std::to_string(s);
    states.push_back(std::move(st));
  }
  for (int s = 0; s < per_family; ++s) {
    if (L >= 2 && s % 2 == 1) {
      const int a = static_cast<int>(unit(rng) * L) % L;
      int b = static_cast<int>(unit(rng) * L) % L;
      if (b == a) b = (a + 1) % L;
      auto st = fock::make_two_mode_squeezed(space, a, b, r_max * unit(rng),
                                             2.0 * M_PI * unit(rng));
      st.label = "two_mode_squeezed#" + std::to_string(s);
      states.push_back(std::move(st));
    } else {
      std::vector<fock::SqueezeParameter> params(L);
      const int target = static_cast<int>(unit(rng) * L) % L;
      params[target] = {r_max * unit(rng), 2.0 * M_PI * unit(rng)};
      auto st = fock::make_squeezed(space, params);
      st.label = "squeezed#" + std::to_string(s);
      states.push_back(std::move(st));
    }
  }
  for (int s = 0; s < per_family; ++s) {
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(L, L);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j <= i; ++j) {
        const Complex z{normal(rng), normal(rng)};
        F(i, j) = z;
        F(j, i) = z;
      }
    F /= std::max(1.0, F.norm());
    auto st = fock::make_pair_superposition(space, F, -2.0 + 4.0 * unit(rng));
    st.label = "pair#" + std::to_string(s);
    states.push_back(std::move(st));
  }
  for (int s = 0; s < per_family; ++s) {
    Vector v = Vector::Zero(space->dimension());
    for (Eigen::Index idx = 0; idx < space->dimension(); ++idx) {
      int total = 0;
      for (int m = 0; m < L; ++m) total += space->occupation(idx, m);
      if (total % 2 == 0) v[idx] = Complex(normal(rng), normal(rng));
    }
    states.push_back(fock::make_raw_state(space, std::move(v),
                                          "even_vector#" + std::to_string(s)));
  }
  return states;
}

EpsilonOptimum optimize_epsilon(const std::shared_ptr<const FockSpace>& space,
                                const weighting::ProbeFunction& probe,
                                const std::optional<weighting::SensitivityFunction>& mu,
                                const Eigen::MatrixXcd& pair_coefficients) {
  const SpMat delta = fock::smeared_delta_operator(*space, probe, Vec3::Zero(), mu, 0.0);
  const Vector vac = space->vacuum_vector();
  Vector pair = Vector::Zero(space->dimension());
  const int L = space->modes().ladder_count();
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      if (pair_coefficients(i, j) == Complex(0.0, 0.0)) continue;
      pair += pair_coefficients(i, j) * (space->raising(i) * (space->raising(j) * vac));
    }

  EpsilonOptimum out;
  const double pair_norm_sq = pair.squaredNorm();
  if (pair_norm_sq == 0.0) {
    out.degenerate = true;  // F decoupled: flat objective
    return out;
  }

  const Vector dv = delta * vac;
  const Vector dp = delta * pair;
  const double lin = 2.0 * pair.dot(dv).real();       // linear coefficient
  const double quad = pair.dot(dp).real();            // quadratic coefficient, >= 0
  auto value = [&](double e) {
    return (e * lin + e * e * quad) / (1.0 + e * e * pair_norm_sq);
  };
  if (std::abs(lin) < 1e-12 * std::max(std::abs(quad), 1e-30)) {
    out.degenerate = true;
    return out;
  }

  double e_max = 10.0 / std::max(pair_coefficients.norm(), 1e-12);
  for (int widen = 0; widen < 10; ++widen) {
    // Coarse bracket, then golden-section refinement.
    const int N = 256;
    int best = 0;
    double best_val = value(-e_max);
    for (int i = 1; i <= N; ++i) {
      const double e = -e_max + 2.0 * e_max * i / N;
      const double val = value(e);
      if (val < best_val) {
        best_val = val;
        best = i;
      }
    }
    if (best == 0 || best == N) {
      e_max *= 4.0;
      continue;
    }
    double lo = -e_max + 2.0 * e_max * (best - 1) / N;
    double hi = -e_max + 2.0 * e_max * (best + 1) / N;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = value(x1), f2 = value(x2);
    while (hi - lo > 1e-13 * std::max(1.0, std::abs(hi) + std::abs(lo))) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = value(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = value(x2);
      }
    }
    out.eps_star = 0.5 * (lo + hi);
    out.delta_min = value(out.eps_star);
    return out;
  }
  throw AccuracyError("optimize_epsilon: optimum did not stabilize within the widened range");
}

EnergyScanResult energy_density_scan(const FieldState& state,
                                     const std::vector<Vec3>& x_grid,
                                     const std::vector<double>& t_grid) {
  const auto& space = *state.space;
  if (!space.modes().electromagnetic())
    throw UnsupportedError("energy_density_scan: electromagnetic mode sets only");
  const int L = space.modes().ladder_count();

  // State moment matrices G_mn = <a^dag_m a_n>, A_mn = <a_m a_n>.
  std::vector<Vector> lowered(L), raised(L);
  for (int m = 0; m < L; ++m) {
    lowered[m] = space.lowering(m) * state.vector;
    raised[m] = space.raising(m) * state.vector;
  }
  Eigen::MatrixXcd G(L, L), A(L, L);
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      G(m, n) = lowered[m].dot(lowered[n]);  // (a_m v)^dag (a_n v)
      A(m, n) = raised[m].dot(lowered[n]);   // (a_m^dag v)^dag (a_n v) = <a_m a_n>
    }

  EnergyScanResult result;
  result.total_energy = 0.0;
  for (int m = 0; m < L; ++m)
    result.total_energy +=
        space.modes().omega(space.modes().momentum_of(m)) * G(m, m).real();

  result.min_rho = std::numeric_limits<double>::infinity();
  auto contraction = [&](const Eigen::MatrixXcd& C) {
    const Eigen::MatrixXcd cc = C.transpose() * C;   // sum_i C(i,m) C(i,n)
    const Eigen::MatrixXcd cbc = C.adjoint() * C;    // sum_i conj(C(i,m)) C(i,n)
    const Complex pair_term = (cc.array() * A.array()).sum();
    const Complex number_term = (cbc.array() * G.array()).sum();
    return 2.0 * pair_term.real() + 2.0 * number_term.real();
  };

  for (double t : t_grid)
    for (const auto& x : x_grid) {
      const double e2 = contraction(fock::electric_field_coefficients(space, t, x));
      const double b2 = contraction(fock::magnetic_field_coefficients(space, t, x));
      EnergyScanRow row;
      row.t = t;
      row.x = x;
      row.rho = 0.5 * (e2 + b2);
      result.min_rho = std::min(result.min_rho, row.rho);
      result.rows.push_back(row);
    }
  return result;
}

double paraxial_factor_check(double kx, double q) {
  if (!(q > 0.0) || !(kx > 0.0)) throw ValidationError("paraxial check: q, kx must be > 0");
  if (q >= kx) throw ValidationError("paraxial check: requires q < kx");
  const Vec3 k(q, 0.0, kx);
  const Vec3 p(-q, q, kx);
  const Vec3 ek = fock::polarization_pair(k)[0];
  const Vec3 ep = fock::polarization_pair(p)[0];
  const double wk = k.norm(), wp = p.norm();
  const double magnetic = k.cross(ek).dot(p.cross(ep));
  const double electric = wk * wp * ek.dot(ep);
  return std::abs(magnetic - electric) / (wk * wp);
}

double paraxial_slope(double q, const std::vector<double>& kx_values) {
  if (kx_values.size() < 2) throw ValidationError("paraxial_slope: need >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(kx_values.size());
  for (double kx : kx_values) {
    const double x = std::log(kx);
    const double y = std::log(paraxial_factor_check(kx, q));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::pair<double, double> magnetic_vs_electric(const FieldState& state,
                                               const weighting::ProbeFunction& probe,
                                               const Vec3& x) {
  const auto& space = *state.space;
  const SpMat de = fock::smeared_delta_operator(space, probe, x);
  const SpMat db = fock::smeared_magnetic_delta_operator(space, probe, x);
  return {fock::expectation(state, de), fock::expectation(state, db)};
}

}  // namespace qibound::verify
