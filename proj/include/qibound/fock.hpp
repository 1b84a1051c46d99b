#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qibound/weighting.hpp"

namespace qibound::fock {

using Complex = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

// Discrete momentum modes with quadrature weights approximating \int d^3p.
// Electromagnetic sets carry two real orthonormal polarization vectors per
// momentum, both orthogonal to it; scalar sets carry one trivial polarization.
class ModeSet {
 public:
  // n momenta of magnitude omega0*(1 + k*delta) along `direction`, symmetric
  // k grid, 1-D midpoint weights omega0*delta.
  static ModeSet collinear(int n, double omega0, double delta, int polarization_count,
                           const Vec3& direction = Vec3(0, 0, 1));
  static ModeSet from_momenta(std::vector<Vec3> momenta, std::vector<double> weights,
                              int polarization_count);

  int momentum_count() const { return static_cast<int>(momenta_.size()); }
  int polarization_count() const { return polarization_count_; }
  int ladder_count() const { return momentum_count() * polarization_count_; }

  const Vec3& momentum(int i) const { return momenta_[i]; }
  double weight(int i) const { return weights_[i]; }
  double omega(int i) const { return omegas_[i]; }
  // alpha in [0, polarization_count); scalar sets have no stored vectors.
  const Vec3& polarization(int i, int alpha) const { return polarizations_[i][alpha]; }

  int ladder_index(int momentum, int alpha) const {
    return momentum * polarization_count_ + alpha;
  }
  int momentum_of(int ladder) const { return ladder / polarization_count_; }
  int polarization_of(int ladder) const { return ladder % polarization_count_; }

  bool electromagnetic() const { return polarization_count_ == 2; }

 private:
  ModeSet() = default;
  std::vector<Vec3> momenta_;
  std::vector<double> weights_;
  std::vector<double> omegas_;
  std::vector<std::array<Vec3, 2>> polarizations_;
  int polarization_count_ = 1;
};

// Deterministic polarization pair for a momentum: Gram-Schmidt of the fixed
// reference axes (x-hat, falling back to y-hat when p is nearly parallel to
// x-hat) against p, completed by the cross product.
std::array<Vec3, 2> polarization_pair(const Vec3& p);

// Truncated multimode occupation-number space with cached ladder operators.
// On the truncated space the exact commutator is
//   [a_i, a_j^dag] = delta_ij (I - (nmax+1) P_top,i),
// with P_top,i the projector onto occupation nmax of mode i.
class FockSpace : public std::enable_shared_from_this<FockSpace> {
 public:
  static std::shared_ptr<const FockSpace> create(ModeSet modes, int nmax,
                                                 int max_ladder_modes = 8,
                                                 double max_dimension = 2e5);

  const ModeSet& modes() const { return modes_; }
  int nmax() const { return nmax_; }
  Eigen::Index dimension() const { return dimension_; }
  Eigen::Index stride(int ladder) const { return strides_[ladder]; }

  const SpMat& lowering(int ladder) const { return lowering_[ladder]; }
  const SpMat& raising(int ladder) const { return raising_[ladder]; }
  const SpMat& identity() const { return identity_; }

  // Occupation of mode `ladder` in basis state `index`.
  int occupation(Eigen::Index index, int ladder) const {
    return static_cast<int>((index / strides_[ladder]) % (nmax_ + 1));
  }

  Vector vacuum_vector() const;

 private:
  FockSpace(ModeSet modes, int nmax);
  ModeSet modes_;
  int nmax_;
  Eigen::Index dimension_;
  std::vector<Eigen::Index> strides_;
  std::vector<SpMat> lowering_;
  std::vector<SpMat> raising_;
  SpMat identity_;
};

enum class StateKind { vacuum, coherent, squeezed_vacuum, pair_superposition, raw_vector };

// Normalized state vector in a FockSpace. Pair superpositions and squeezed
// vacua live in the even total-photon-number sector.
struct FieldState {
  StateKind kind = StateKind::vacuum;
  std::shared_ptr<const FockSpace> space;
  Vector vector;
  std::string label;
};

struct SqueezeParameter {
  double r = 0.0;
  double theta = 0.0;
};

FieldState make_vacuum(std::shared_ptr<const FockSpace> space);
FieldState make_coherent(std::shared_ptr<const FockSpace> space,
                         const std::vector<Complex>& alphas);
// One squeeze parameter per ladder mode (r = 0 leaves a mode untouched).
FieldState make_squeezed(std::shared_ptr<const FockSpace> space,
                         const std::vector<SqueezeParameter>& params);
FieldState make_two_mode_squeezed(std::shared_ptr<const FockSpace> space, int mode_a,
                                  int mode_b, double r, double theta);
// N(|vac> + eps * sum_ij F_ij a_i^dag a_j^dag |vac>), F symmetric over
// ladder modes.
FieldState make_pair_superposition(std::shared_ptr<const FockSpace> space,
                                   const Eigen::MatrixXcd& pair_coefficients, double eps);
FieldState make_raw_state(std::shared_ptr<const FockSpace> space, Vector v,
                          const std::string& label);

// exp(G) v by scaling-and-squaring with a truncated series on the vector.
Vector exponential_action(const SpMat& generator, Vector v, double tol = 1e-13);

// Largest top-level occupation probability over all modes; the capacity
// measure used by make_* constructors (threshold 1e-8).
double top_level_population(const FockSpace& space, const Vector& v);

// Probability carried by odd total photon number.
double odd_sector_population(const FockSpace& space, const Vector& v);

// Discretized Eq.-style smeared normal-ordered square of the electric field
// at position x: a^dag a term weighted by fhat(w_p - w_k), aa term by
// fhat(w_k + w_p) plus conjugates, prefactor sqrt(w_k w_p)/(2 (2 pi)^2),
// polarization contraction e(k).e(p), sensitivity inserted as mu(w_k) mu(w_p),
// t_offset shifting the probe center.
SpMat smeared_delta_operator(const FockSpace& space, const weighting::ProbeFunction& probe,
                             const Vec3& x = Vec3::Zero(),
                             const std::optional<weighting::SensitivityFunction>& mu = {},
                             double t_offset = 0.0);

// Same structure with the magnetic kernel [k x e(k)].[p x e(p)] in place of
// w_k w_p e(k).e(p); electromagnetic sets only.
SpMat smeared_magnetic_delta_operator(const FockSpace& space,
                                      const weighting::ProbeFunction& probe,
                                      const Vec3& x = Vec3::Zero(),
                                      const std::optional<weighting::SensitivityFunction>& mu = {},
                                      double t_offset = 0.0);

enum class BVariant { plus, tilde };

// Frequency-decomposition operator B(w):
//   B^i(w) = sum_p w_p sum_alpha e^i_alpha(p) [ g(w - w_p) chi(p) a_alpha(p)
//            + sign * g(w + w_p) conj(chi(p)) a^dag_alpha(p) ]
// with g = FT(sqrt f) (real for built-in probes). Electromagnetic sets use
// sign = -1 for variant=plus (their defining convention) and return three
// vector components; scalar sets use sign = +1 for plus and -1 for tilde and
// return one component. chi has one entry per momentum.
std::vector<SpMat> b_operator(const FockSpace& space, const weighting::ProbeFunction& probe,
                              const std::vector<Complex>& chi, double omega,
                              BVariant variant);

// chi(p) = e^{i p.x} sqrt(w_p) / (2 pi), one entry per momentum.
std::vector<Complex> chi_ident(const ModeSet& modes, const Vec3& x = Vec3::Zero());

// <v|M|v>; requires M Hermitian, asserts the imaginary residue <= 1e-12.
double expectation(const FieldState& state, const SpMat& op);

// Variances of E1(theta) = (a e^{-i theta} + a^dag e^{i theta})/2 and
// E2 = E1(theta + pi/2) for the selected ladder mode; vacuum gives (1/4, 1/4).
std::pair<double, double> quadrature_variances(const FieldState& state, int ladder,
                                               double theta);

// Expectation of the discretized electric field at (t, x).
Vec3 mean_field(const FieldState& state, const Vec3& x, double t);

// Field coefficient matrices: row i in {x,y,z}, column m over ladder modes;
// F_i(t,x) = sum_m [ C(i,m) a_m + conj(C(i,m)) a_m^dag ].
Eigen::MatrixXcd electric_field_coefficients(const FockSpace& space, double t, const Vec3& x);
Eigen::MatrixXcd magnetic_field_coefficients(const FockSpace& space, double t, const Vec3& x);

// Normal-ordered square sum_i :F_i F_i: assembled from coefficient rows.
SpMat normal_ordered_square(const FockSpace& space, const Eigen::MatrixXcd& coefficients);

// sum_m w_m a_m^dag a_m (mode-sum energy, diagonal).
SpMat total_energy_operator(const FockSpace& space);

}  // namespace qibound::fock
