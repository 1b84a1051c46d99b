#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qibound/fock.hpp"
#include "qibound/weighting.hpp"

namespace qibound::verify {

enum class DecompositionKind { scalar_A, scalar_A_tilde, electromagnetic };

struct OmegaGridOptions {
  double omega_max = 0.0;   // 0 = auto: max mode frequency + 16/t0
  int points_per_panel = 48;
  double density = 1.0;     // >1 refines panels (convergence checks)
};

// Fixed composite Gauss-Legendre grid on [0, omega_max] with panel
// boundaries at the mode frequencies (kinks of the lorentzian-squared g).
struct OmegaGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double omega_max = 0.0;
};

OmegaGrid make_omega_grid(const fock::ModeSet& modes, const weighting::ProbeFunction& probe,
                          const OmegaGridOptions& opt = {});

struct DecompositionReport {
  double operator_residual = 0.0;   // max-norm of (sum_w w B^dag B - Delta - c I)
  double residue_constant = 0.0;    // c from the grid double sum
  double residue_closed_form = 0.0; // c from the analytic omega integral
  double residue_relative_gap = 0.0;
  std::size_t grid_points = 0;
  double omega_max = 0.0;
};

// Verifies the frequency-decomposition identity sum_w w_w B^dag(w) B(w) =
// Delta + c I on the truncated space, entry by entry, without materializing
// the large-space operators. The left side is accumulated through the
// omega-quadrature of the coefficient functions of B (an exact reassociation
// of the weighted operator sum); the right side uses the closed-form
// transform of f. chi has one entry per momentum.
DecompositionReport decomposition_check(const fock::FockSpace& space,
                                        const weighting::ProbeFunction& probe,
                                        const std::vector<fock::Complex>& chi,
                                        DecompositionKind kind,
                                        const OmegaGridOptions& opt = {});

// The discrete residue c = C_pol sum_p w_p |chi_p|^2 \int_0^inf |g(w+w_p)|^2 dw
// with the omega integral in closed form; its negative is the discrete bound.
double residue_constant_closed(const fock::ModeSet& modes,
                               const weighting::ProbeFunction& probe,
                               const std::vector<fock::Complex>& chi,
                               DecompositionKind kind);

struct ScanRow {
  std::string state;
  double delta_expectation = 0.0;
  double bound = 0.0;    // -c, the discrete bound
  double margin = 0.0;   // delta_expectation - bound
};

struct InequalityScanReport {
  std::vector<ScanRow> rows;  // sorted by margin, smallest first
  double min_margin = 0.0;
  double bound = 0.0;
  std::uint64_t seed = 0;
};

// Margin of every state against the discrete bound -c; margins below -1e-9
// are a build-stopping inequality violation.
InequalityScanReport inequality_scan(const std::shared_ptr<const fock::FockSpace>& space,
                                     const weighting::ProbeFunction& probe,
                                     const std::optional<weighting::SensitivityFunction>& mu,
                                     const std::vector<fock::FieldState>& states);

// Randomized state families for scans: coherent, squeezed (r capped by the
// capacity rule), pair superpositions, and raw even-sector vectors.
std::vector<fock::FieldState> random_scan_states(
    const std::shared_ptr<const fock::FockSpace>& space, int per_family, std::uint64_t seed);

// Largest single-mode squeeze magnitude whose top-level population stays
// below `population_limit` at the given cutoff.
double max_capacity_squeeze(int nmax, double population_limit = 1e-9);

struct EpsilonOptimum {
  double eps_star = 0.0;
  double delta_min = 0.0;
  bool degenerate = false;  // flat objective (pair sector decoupled)
};

// Minimizes the normalized expectation <Delta>(eps) of the pair
// superposition N(|vac> + eps sum F_ij a_i^dag a_j^dag |vac>); the
// dependence is rational (the normalization carries eps), so the search is
// a bracketing scan plus golden-section refinement over [-e_max, e_max],
// e_max = 10/||F|| widened while the optimum sits on the boundary.
EpsilonOptimum optimize_epsilon(const std::shared_ptr<const fock::FockSpace>& space,
                                const weighting::ProbeFunction& probe,
                                const std::optional<weighting::SensitivityFunction>& mu,
                                const Eigen::MatrixXcd& pair_coefficients);

struct EnergyScanRow {
  double t = 0.0;
  fock::Vec3 x = fock::Vec3::Zero();
  double rho = 0.0;
};

struct EnergyScanResult {
  std::vector<EnergyScanRow> rows;
  double min_rho = 0.0;
  double total_energy = 0.0;  // mode-sum sum_i w_i <n_i>, >= 0
};

// Pointwise energy density rho = (<:E^2:> + <:B^2:>)/2 of the discrete
// model over a (t, x) grid, plus the mode-sum total energy.
EnergyScanResult energy_density_scan(const fock::FieldState& state,
                                     const std::vector<fock::Vec3>& x_grid,
                                     const std::vector<double>& t_grid);

// Relative deviation |[k x e(k)].[p x e(p)] - w_k w_p e(k).e(p)| / (w_k w_p)
// for k = (q, 0, kx), p = (-q, q, kx) with matched polarization conventions.
double paraxial_factor_check(double kx, double q);

// Least-squares log-log slope of the deviation against kx (expected -2).
double paraxial_slope(double q, const std::vector<double>& kx_values);

// Smeared <:E^2:> and <:B^2:> for the same probe/state.
std::pair<double, double> magnetic_vs_electric(const fock::FieldState& state,
                                               const weighting::ProbeFunction& probe,
                                               const fock::Vec3& x = fock::Vec3::Zero());

}  // namespace qibound::verify
