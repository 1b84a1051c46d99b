#pragma once

#include <string>
#include <vector>

#include "qibound/quadrature.hpp"
#include "qibound/weighting.hpp"

namespace qibound::bounds {

enum class FieldKind { electromagnetic, scalar_field };

struct BoundQuery {
  weighting::ProbeFunction probe;
  weighting::SensitivityFunction sensitivity;
  FieldKind field_kind = FieldKind::electromagnetic;
  quadrature::Options quad{};
};

// The triple (<Delta>_max, <E^2>_Omega, R) for a probe/sensitivity pair.
// r_db is defined only for the electromagnetic kind (the paper fixes no
// scalar vacuum normalization); it is NaN for scalar queries, and -inf marks
// total suppression. For sharp-line sensitivities only the ratio is defined:
// delta_max and vacuum_e2 are NaN and sharp_line_ratio is set.
struct BoundResult {
  double delta_max = 0.0;        // <= 0, energy-density units
  double vacuum_e2 = 0.0;        // >= 0, same units
  double r_db = 0.0;             // <= 0
  double quadrature_error = 0.0; // estimated absolute error on delta_max
  bool sharp_line_ratio = false;
};

// <E^2>_Omega = (1/(2 pi)^3) \int mu(p)^2 d^3p w_p, computed by isotropy as
// (1/(2 pi^2)) \int mu(p)^2 p^3 dp. Rect or gaussian bands only.
double vacuum_fluctuations(const weighting::SensitivityFunction& mu,
                           const quadrature::Options& opt = {});

// Right-hand side of the fluctuation inequality with the sensitivity
// inserted:  delta_max = -(C/(2 pi)^2) \int_0^inf dw \int d^3p mu(p)^2
// |FT(sqrt f)(w + w_p)|^2 w_p, C = 2 (electromagnetic) or 1 (scalar);
// nested adaptive quadrature.
BoundResult qi_bound(const BoundQuery& query);

// 10 log10((delta + vac)/vac). delta < -vac signals a bug upstream.
double reduction_db(double delta, double vac);

enum class LimitMode { paper_erf, direct_integral };

// Appendix-B limits, tau = omega0 * t0. The two published routes disagree
// and are never reconciled: paper_erf reproduces the paper's numbers
// (10 log10 erf(2 sqrt2 tau)); direct_integral evaluates
// 10 log10(1 - (4/sqrt(2 pi)) \int_0^inf e^{-2(s+tau)^2} ds) by quadrature,
// which is what the gaussian-probe bound reduces to in the narrow-band limit.
double squeezing_limit_paper(double tau);
double squeezing_limit_integral(double tau);

// (4 t0/sqrt(2 pi)) \int_0^inf e^{-2 (p+w)^2 t0^2} dw; in (0, 1], equal to 1
// at p = 0.
double gaussian_aux_check(double p, double t0);

struct LimitRow {
  double tau = 0.0;
  double r_db = 0.0;
  bool failed = false;
  std::string error;
};

std::vector<LimitRow> sweep_limits(const std::vector<double>& tau_grid, LimitMode mode);

}  // namespace qibound::bounds
