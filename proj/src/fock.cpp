#include "qibound/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qibound/errors.hpp"

namespace qibound::fock {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
const double kCell = std::pow(kTwoPi, 1.5);  // (2 pi)^{3/2} mode normalization

using Triplets = std::vector<Eigen::Triplet<Complex>>;

double mu_eval(const std::optional<weighting::SensitivityFunction>& mu, double w) {
  if (!mu) return 1.0;
  return mu->eval(w);
}

}  // namespace

std::array<Vec3, 2> polarization_pair(const Vec3& p) {
  const Vec3 khat = p.normalized();
  Vec3 ref = Vec3::UnitX();
  if (std::abs(khat.dot(ref)) > 0.9) ref = Vec3::UnitY();
  Vec3 e1 = (ref - ref.dot(khat) * khat).normalized();
  Vec3 e2 = khat.cross(e1);
  return {e1, e2};
}

ModeSet ModeSet::collinear(int n, double omega0, double delta, int polarization_count,
                           const Vec3& direction) {
  if (n < 1) throw ValidationError("collinear layout: need n >= 1 modes");
  if (omega0 <= 0.0 || delta <= 0.0)
    throw ValidationError("collinear layout: omega0 and delta must be > 0");
  std::vector<Vec3> momenta;
  std::vector<double> weights;
  const Vec3 dir = direction.normalized();
  for (int j = 0; j < n; ++j) {
    const double k = static_cast<double>(j) - 0.5 * static_cast<double>(n - 1);
    momenta.push_back(omega0 * (1.0 + k * delta) * dir);
    weights.push_back(omega0 * delta);  // midpoint rule over the band
  }
  return from_momenta(std::move(momenta), std::move(weights), polarization_count);
}

ModeSet ModeSet::from_momenta(std::vector<Vec3> momenta, std::vector<double> weights,
                              int polarization_count) {
  if (momenta.empty() || momenta.size() != weights.size())
    throw ValidationError("ModeSet: momenta/weights size mismatch");
  if (polarization_count != 1 && polarization_count != 2)
    throw ValidationError("ModeSet: polarization_count must be 1 (scalar) or 2 (em)");
  ModeSet set;
  set.polarization_count_ = polarization_count;
  for (std::size_t i = 0; i < momenta.size(); ++i) {
    if (weights[i] <= 0.0) throw ValidationError("ModeSet: weights must be > 0");
    const double w = momenta[i].norm();
    if (w <= 0.0)
      throw ValidationError("ModeSet: zero momentum breaks the 1/sqrt(2 w) normalization");
    for (std::size_t j = 0; j < i; ++j)
      if ((momenta[i] - momenta[j]).norm() < 1e-12 * (w + set.omegas_[j]))
        throw ValidationError("ModeSet: duplicate momenta");
    set.omegas_.push_back(w);
    if (polarization_count == 2)
      set.polarizations_.push_back(polarization_pair(momenta[i]));
    else
      set.polarizations_.push_back({Vec3::Zero(), Vec3::Zero()});
    set.momenta_.push_back(momenta[i]);
    set.weights_.push_back(weights[i]);
  }
  return set;
}

FockSpace::FockSpace(ModeSet modes, int nmax) : modes_(std::move(modes)), nmax_(nmax) {}

std::shared_ptr<const FockSpace> FockSpace::create(ModeSet modes, int nmax,
                                                   int max_ladder_modes, double max_dimension) {
  if (nmax < 1) throw ValidationError("FockSpace: nmax must be >= 1");
  const int L = modes.ladder_count();
  if (L > max_ladder_modes) {
    std::ostringstream ss;
    ss << "FockSpace: " << L << " ladder modes exceed the configured maximum "
       << max_ladder_modes;
    throw ValidationError(ss.str());
  }
  const double dim = std::pow(static_cast<double>(nmax + 1), L);
  if (dim > max_dimension) {
    std::ostringstream ss;
    ss << "FockSpace: dimension " << dim << " exceeds the cap " << max_dimension;
    throw ValidationError(ss.str());
  }

  auto space = std::shared_ptr<FockSpace>(new FockSpace(std::move(modes), nmax));
  space->dimension_ = static_cast<Eigen::Index>(dim);
  space->strides_.resize(L);
  Eigen::Index stride = 1;
  for (int m = 0; m < L; ++m) {
    space->strides_[m] = stride;
    stride *= (nmax + 1);
  }

  const Eigen::Index D = space->dimension_;
  for (int m = 0; m < L; ++m) {
    Triplets trip;
    trip.reserve(D);
    for (Eigen::Index v = 0; v < D; ++v) {
      const int occ = space->occupation(v, m);
      if (occ >= 1)
        trip.emplace_back(v - space->strides_[m], v, Complex(std::sqrt(double(occ)), 0.0));
    }
    SpMat a(D, D);
    a.setFromTriplets(trip.begin(), trip.end());
    space->lowering_.push_back(a);
    space->raising_.push_back(SpMat(a.adjoint()));
  }
  space->identity_ = SpMat(D, D);
  space->identity_.setIdentity();
  return space;
}

Vector FockSpace::vacuum_vector() const {
  Vector v = Vector::Zero(dimension_);
  v[0] = 1.0;
  return v;
}

FieldState make_vacuum(std::shared_ptr<const FockSpace> space) {
  FieldState s;
  s.kind = StateKind::vacuum;
  s.vector = space->vacuum_vector();
  s.space = std::move(space);
  s.label = "vacuum";
  return s;
}

double top_level_population(const FockSpace& space, const Vector& v) {
  const int L = space.modes().ladder_count();
  double worst = 0.0;
  for (int m = 0; m < L; ++m) {
    double pop = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (space.occupation(i, m) == space.nmax()) pop += std::norm(v[i]);
    worst = std::max(worst, pop);
  }
  return worst;
}

double odd_sector_population(const FockSpace& space, const Vector& v) {
  const int L = space.modes().ladder_count();
  double pop = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    int total = 0;
    for (int m = 0; m < L; ++m) total += space.occupation(i, m);
    if (total % 2 == 1) pop += std::norm(v[i]);
  }
  return pop;
}

namespace {

void enforce_capacity(const FockSpace& space, const Vector& v, const char* what) {
  const double pop = top_level_population(space, v);
  if (pop >= 1e-8) {
    std::ostringstream ss;
    ss << what << ": truncation capacity exceeded, top-level population " << pop;
    throw ValidationError(ss.str());
  }
}

}  // namespace

FieldState make_coherent(std::shared_ptr<const FockSpace> space,
                         const std::vector<Complex>& alphas) {
  const int L = space->modes().ladder_count();
  if (static_cast<int>(alphas.size()) != L)
    throw ValidationError("make_coherent: one amplitude per ladder mode required");

  // Tensor product of per-mode coherent columns, then renormalize the
  // truncated tail away.
  Vector v = Vector::Zero(space->dimension());
  for (Eigen::Index idx = 0; idx < space->dimension(); ++idx) {
    Complex amp = 1.0;
    for (int m = 0; m < L; ++m) {
      const int n = space->occupation(idx, m);
      Complex c = std::exp(-0.5 * std::norm(alphas[m]));
      for (int k = 1; k <= n; ++k) c *= alphas[m] / std::sqrt(double(k));
      amp *= c;
    }
    v[idx] = amp;
  }
  v.normalize();

  FieldState s;
  s.kind = StateKind::coherent;
  s.vector = std::move(v);
  s.space = std::move(space);
  s.label = "coherent";
  enforce_capacity(*s.space, s.vector, "make_coherent");
  return s;
}

Vector exponential_action(const SpMat& generator, Vector v, double tol) {
  // 1-norm estimate for the scaling step count.
  double norm1 = 0.0;
  for (int k = 0; k < generator.outerSize(); ++k) {
    double col = 0.0;
    for (SpMat::InnerIterator it(generator, k); it; ++it) col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  int s = 0;
  while (norm1 > 1.0 && s < 40) {
    norm1 *= 0.5;
    ++s;
  }
  const double scale = std::ldexp(1.0, -s);
  const long reps = 1L << s;
  for (long rep = 0; rep < reps; ++rep) {
    Vector term = v;
    Vector sum = v;
    for (int k = 1; k < 400; ++k) {
      term = (generator * term) * (scale / static_cast<double>(k));
      sum += term;
      if (term.norm() <= tol * sum.norm()) break;
    }
    v = std::move(sum);
  }
  return v;
}

FieldState make_squeezed(std::shared_ptr<const FockSpace> space,
                         const std::vector<SqueezeParameter>& params) {
  const int L = space->modes().ladder_count();
  if (static_cast<int>(params.size()) != L)
    throw ValidationError("make_squeezed: one (r, theta) per ladder mode required");
  for (const auto& p : params)
    if (p.r < 0.0) throw ValidationError("make_squeezed: r must be >= 0");

  // Generator sum_m (conj(z_m) a_m^2 - z_m a_m^dag^2)/2, z = r e^{i theta}.
  SpMat G(space->dimension(), space->dimension());
  for (int m = 0; m < L; ++m) {
    if (params[m].r == 0.0) continue;
    const Complex z = std::polar(params[m].r, params[m].theta);
    const SpMat& a = space->lowering(m);
    const SpMat& ad = space->raising(m);
    G += SpMat(0.5 * std::conj(z) * SpMat(a * a) - 0.5 * z * SpMat(ad * ad));
  }
  Vector v = exponential_action(G, space->vacuum_vector());
  v.normalize();

  FieldState s;
  s.kind = StateKind::squeezed_vacuum;
  s.vector = std::move(v);
  s.space = std::move(space);
  s.label = "squeezed_vacuum";
  enforce_capacity(*s.space, s.vector, "make_squeezed");
  return s;
}

FieldState make_two_mode_squeezed(std::shared_ptr<const FockSpace> space, int mode_a,
                                  int mode_b, double r, double theta) {
  const int L = space->modes().ladder_count();
  if (mode_a < 0 || mode_b < 0 || mode_a >= L || mode_b >= L || mode_a == mode_b)
    throw ValidationError("make_two_mode_squeezed: invalid mode pair");
  if (r < 0.0) throw ValidationError("make_two_mode_squeezed: r must be >= 0");
  const Complex z = std::polar(r, theta);
  const SpMat& a = space->lowering(mode_a);
  const SpMat& b = space->lowering(mode_b);
  SpMat G = SpMat(std::conj(z) * SpMat(a * b)) -
            SpMat(z * SpMat(space->raising(mode_a) * space->raising(mode_b)));
  Vector v = exponential_action(G, space->vacuum_vector());
  v.normalize();

  FieldState s;
  s.kind = StateKind::squeezed_vacuum;
  s.vector = std::move(v);
  s.space = std::move(space);
  s.label = "two_mode_squeezed";
  enforce_capacity(*s.space, s.vector, "make_two_mode_squeezed");
  return s;
}

FieldState make_pair_superposition(std::shared_ptr<const FockSpace> space,
                                   const Eigen::MatrixXcd& pair_coefficients, double eps) {
  const int L = space->modes().ladder_count();
  if (pair_coefficients.rows() != L || pair_coefficients.cols() != L)
    throw ValidationError("make_pair_superposition: F must be ladder_count x ladder_count");
  if ((pair_coefficients - pair_coefficients.transpose()).norm() >
      1e-12 * (1.0 + pair_coefficients.norm()))
    throw ValidationError("make_pair_superposition: F must be symmetric");
  if (space->nmax() < 2)
    throw ValidationError("make_pair_superposition: nmax >= 2 required for the pair sector");

  Vector vac = space->vacuum_vector();
  Vector pair = Vector::Zero(space->dimension());
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      if (pair_coefficients(i, j) == Complex(0.0, 0.0)) continue;
      pair += pair_coefficients(i, j) * (space->raising(i) * (space->raising(j) * vac));
    }
  Vector v = vac + eps * pair;
  v.normalize();

  FieldState s;
  s.kind = StateKind::pair_superposition;
  s.vector = std::move(v);
  s.space = std::move(space);
  s.label = "pair_superposition";
  return s;
}

FieldState make_raw_state(std::shared_ptr<const FockSpace> space, Vector v,
                          const std::string& label) {
  if (v.size() != space->dimension())
    throw ValidationError("make_raw_state: dimension mismatch");
  const double n = v.norm();
  if (n <= 0.0) throw ValidationError("make_raw_state: zero vector");
  v /= n;
  FieldState s;
  s.kind = StateKind::raw_vector;
  s.vector = std::move(v);
  s.space = std::move(space);
  s.label = label;
  return s;
}

namespace {

// Quadratic-form assembly. Coefficient matrices over ladder modes:
//   op = sum_mn A(m,n) a^dag_m a_n
//      + sum_mn [ T(m,n) a_m a_n + conj(T(m,n)) a^dag_m a^dag_n ].
// Single triplet pass over the basis; duplicates are summed on insertion.
SpMat assemble_quadratic(const FockSpace& space, const Eigen::MatrixXcd& A,
                         const Eigen::MatrixXcd& T) {
  const int L = space.modes().ladder_count();
  const int nmax = space.nmax();
  const Eigen::Index D = space.dimension();

  Triplets trip;
  std::size_t nonzero_coeffs = 0;
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n)
      nonzero_coeffs += (A(m, n) != Complex(0, 0)) + 2 * (T(m, n) != Complex(0, 0));
  trip.reserve(nonzero_coeffs * static_cast<std::size_t>(D) / 2);

  std::vector<int> occ(L, 0);
  for (Eigen::Index v = 0; v < D; ++v) {
    for (int m = 0; m < L; ++m)
      for (int n = 0; n < L; ++n) {
        const Complex a = A(m, n);
        if (a != Complex(0, 0)) {
          if (m == n) {
            if (occ[m] >= 1) trip.emplace_back(v, v, a * double(occ[m]));
          } else if (occ[n] >= 1 && occ[m] <= nmax - 1) {
            trip.emplace_back(v + space.stride(m) - space.stride(n), v,
                              a * std::sqrt(double(occ[n]) * double(occ[m] + 1)));
          }
        }
        const Complex t = T(m, n);
        if (t != Complex(0, 0)) {
          if (m == n) {
            if (occ[m] >= 2)
              trip.emplace_back(v - 2 * space.stride(m), v,
                                t * std::sqrt(double(occ[m]) * double(occ[m] - 1)));
            if (occ[m] <= nmax - 2)
              trip.emplace_back(v + 2 * space.stride(m), v,
                                std::conj(t) *
                                    std::sqrt(double(occ[m] + 1) * double(occ[m] + 2)));
          } else {
            if (occ[m] >= 1 && occ[n] >= 1)
              trip.emplace_back(v - space.stride(m) - space.stride(n), v,
                                t * std::sqrt(double(occ[m]) * double(occ[n])));
            if (occ[m] <= nmax - 1 && occ[n] <= nmax - 1)
              trip.emplace_back(v + space.stride(m) + space.stride(n), v,
                                std::conj(t) *
                                    std::sqrt(double(occ[m] + 1) * double(occ[n] + 1)));
          }
        }
      }
    for (int l = 0; l < L; ++l) {
      if (++occ[l] <= nmax) break;
      occ[l] = 0;
    }
  }
  SpMat op(D, D);
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

void delta_coefficients(const FockSpace& space, const weighting::ProbeFunction& probe,
                        const Vec3& x, const std::optional<weighting::SensitivityFunction>& mu,
                        double t_offset, bool magnetic, Eigen::MatrixXcd& A,
                        Eigen::MatrixXcd& T) {
  const auto& modes = space.modes();
  if (mu && mu->kind() == weighting::SensitivityKind::sharp_line)
    throw UnsupportedError("smeared operators: sharp_line sensitivity is never sampled");
  if (std::abs(probe.norm() - 1.0) > 1e-6)
    throw ValidationError("smeared operators: probe is not normalized");
  if (magnetic && !modes.electromagnetic())
    throw UnsupportedError("magnetic kernel requires an electromagnetic mode set");

  const int L = modes.ladder_count();
  const int P = modes.polarization_count();
  A = Eigen::MatrixXcd::Zero(L, L);
  T = Eigen::MatrixXcd::Zero(L, L);
  const double kappa = 1.0 / (2.0 * kTwoPi * kTwoPi);

  for (int i = 0; i < modes.momentum_count(); ++i)
    for (int j = 0; j < modes.momentum_count(); ++j) {
      const double wi = modes.omega(i), wj = modes.omega(j);
      const double pre_ij = kappa * std::sqrt(modes.weight(i) * modes.weight(j)) *
                            std::sqrt(wi * wj) * mu_eval(mu, wi) * mu_eval(mu, wj);
      for (int al = 0; al < P; ++al)
        for (int be = 0; be < P; ++be) {
          double kernel;
          if (P == 1) {
            kernel = 1.0;
          } else if (!magnetic) {
            kernel = modes.polarization(i, al).dot(modes.polarization(j, be));
          } else {
            // [k x e(k)].[p x e(p)] / (w_k w_p) replaces e(k).e(p)
            const Vec3 ki = modes.momentum(i).cross(modes.polarization(i, al));
            const Vec3 kj = modes.momentum(j).cross(modes.polarization(j, be));
            kernel = ki.dot(kj) / (wi * wj);
          }
          if (kernel == 0.0) continue;
          const int m = modes.ladder_index(i, al);
          const int n = modes.ladder_index(j, be);
          const double pre = pre_ij * kernel;

          const double dw = wj - wi;
          const Complex phase_diff =
              std::exp(Complex(0.0, (modes.momentum(j) - modes.momentum(i)).dot(x))) *
              std::exp(Complex(0.0, -dw * t_offset));
          A(m, n) += 2.0 * pre * probe.ft(dw) * phase_diff;

          const double sw = wi + wj;
          const Complex phase_sum =
              std::exp(Complex(0.0, (modes.momentum(i) + modes.momentum(j)).dot(x))) *
              std::exp(Complex(0.0, -sw * t_offset));
          T(m, n) += -pre * probe.ft(sw) * phase_sum;
        }
    }
}

}  // namespace

SpMat smeared_delta_operator(const FockSpace& space, const weighting::ProbeFunction& probe,
                             const Vec3& x,
                             const std::optional<weighting::SensitivityFunction>& mu,
                             double t_offset) {
  Eigen::MatrixXcd A, T;
  delta_coefficients(space, probe, x, mu, t_offset, false, A, T);
  return assemble_quadratic(space, A, T);
}

SpMat smeared_magnetic_delta_operator(const FockSpace& space,
                                      const weighting::ProbeFunction& probe, const Vec3& x,
                                      const std::optional<weighting::SensitivityFunction>& mu,
                                      double t_offset) {
  Eigen::MatrixXcd A, T;
  delta_coefficients(space, probe, x, mu, t_offset, true, A, T);
  return assemble_quadratic(space, A, T);
}

std::vector<SpMat> b_operator(const FockSpace& space, const weighting::ProbeFunction& probe,
                              const std::vector<Complex>& chi, double omega,
                              BVariant variant) {
  const auto& modes = space.modes();
  if (static_cast<int>(chi.size()) != modes.momentum_count())
    throw ValidationError("b_operator: chi length must match the momentum count");

  const bool em = modes.electromagnetic();
  const double sign = em ? (variant == BVariant::plus ? -1.0 : 1.0)
                         : (variant == BVariant::plus ? 1.0 : -1.0);
  const int components = em ? 3 : 1;

  std::vector<SpMat> out;
  out.reserve(components);
  for (int comp = 0; comp < components; ++comp) {
    SpMat B(space.dimension(), space.dimension());
    for (int i = 0; i < modes.momentum_count(); ++i) {
      const double wi = modes.omega(i);
      const double sw = std::sqrt(modes.weight(i));
      for (int al = 0; al < modes.polarization_count(); ++al) {
        const double e_comp = em ? modes.polarization(i, al)[comp] : 1.0;
        if (e_comp == 0.0) continue;
        const int m = modes.ladder_index(i, al);
        const Complex xc = sw * e_comp * probe.sqrt_ft(omega - wi) * chi[i];
        const Complex yc = sign * sw * e_comp * probe.sqrt_ft(omega + wi) * std::conj(chi[i]);
        if (xc != Complex(0.0, 0.0)) B += SpMat(xc * space.lowering(m));
        if (yc != Complex(0.0, 0.0)) B += SpMat(yc * space.raising(m));
      }
    }
    out.push_back(std::move(B));
  }
  return out;
}

std::vector<Complex> chi_ident(const ModeSet& modes, const Vec3& x) {
  std::vector<Complex> chi(modes.momentum_count());
  for (int i = 0; i < modes.momentum_count(); ++i)
    chi[i] = std::exp(Complex(0.0, modes.momentum(i).dot(x))) * std::sqrt(modes.omega(i)) /
             kTwoPi;
  return chi;
}

double expectation(const FieldState& state, const SpMat& op) {
  if (op.rows() != state.vector.size() || op.cols() != state.vector.size())
    throw ValidationError("expectation: operator/state dimension mismatch");
  const SpMat diff = SpMat(op - SpMat(op.adjoint()));
  double herm = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SpMat::InnerIterator it(diff, k); it; ++it)
      herm = std::max(herm, std::abs(it.value()));
  double scale = 0.0;
  for (int k = 0; k < op.outerSize(); ++k)
    for (SpMat::InnerIterator it(op, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
  if (herm > 1e-10 * std::max(1.0, scale))
    throw ValidationError("expectation: operator is not Hermitian");

  const Complex val = state.vector.dot(op * state.vector);
  if (std::abs(val.imag()) > 1e-12 * std::max(1.0, std::abs(val.real())))
    throw AccuracyError("expectation: imaginary residue above 1e-12");
  return val.real();
}

std::pair<double, double> quadrature_variances(const FieldState& state, int ladder,
                                               double theta) {
  const auto& space = *state.space;
  if (ladder < 0 || ladder >= space.modes().ladder_count())
    throw ValidationError("quadrature_variances: invalid mode index");

  auto variance_at = [&](double th) {
    const Complex em = std::exp(Complex(0.0, -th));
    const Vector av = space.lowering(ladder) * state.vector;
    const Vector adv = space.raising(ladder) * state.vector;
    const Vector xv = 0.5 * (em * av + std::conj(em) * adv);
    const double mean = (state.vector.dot(xv)).real();
    const double second = xv.squaredNorm();
    return second - mean * mean;
  };
  return {variance_at(theta), variance_at(theta + 0.5 * M_PI)};
}

Eigen::MatrixXcd electric_field_coefficients(const FockSpace& space, double t, const Vec3& x) {
  const auto& modes = space.modes();
  const int L = modes.ladder_count();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(3, L);
  for (int i = 0; i < modes.momentum_count(); ++i) {
    const double w = modes.omega(i);
    const Complex phase =
        Complex(0.0, 1.0) * std::exp(Complex(0.0, -(w * t - modes.momentum(i).dot(x))));
    const double amp = std::sqrt(modes.weight(i) * w / 2.0) / kCell;
    for (int al = 0; al < modes.polarization_count(); ++al) {
      const int m = modes.ladder_index(i, al);
      const Vec3 e = modes.electromagnetic() ? modes.polarization(i, al) : Vec3::UnitX();
      for (int comp = 0; comp < 3; ++comp) C(comp, m) = amp * e[comp] * phase;
    }
  }
  return C;
}

Eigen::MatrixXcd magnetic_field_coefficients(const FockSpace& space, double t, const Vec3& x) {
  const auto& modes = space.modes();
  if (!modes.electromagnetic())
    throw UnsupportedError("magnetic field requires an electromagnetic mode set");
  const int L = modes.ladder_count();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(3, L);
  for (int i = 0; i < modes.momentum_count(); ++i) {
    const double w = modes.omega(i);
    const Complex phase =
        Complex(0.0, 1.0) * std::exp(Complex(0.0, -(w * t - modes.momentum(i).dot(x))));
    const double amp = std::sqrt(modes.weight(i) / (2.0 * w)) / kCell;
    for (int al = 0; al < modes.polarization_count(); ++al) {
      const int m = modes.ladder_index(i, al);
      const Vec3 ke = modes.momentum(i).cross(modes.polarization(i, al));
      for (int comp = 0; comp < 3; ++comp) C(comp, m) = amp * ke[comp] * phase;
    }
  }
  return C;
}

Vec3 mean_field(const FieldState& state, const Vec3& x, double t) {
  const Eigen::MatrixXcd C = electric_field_coefficients(*state.space, t, x);
  const int L = state.space->modes().ladder_count();
  Vec3 out = Vec3::Zero();
  for (int m = 0; m < L; ++m) {
    const Complex am = state.vector.dot(state.space->lowering(m) * state.vector);
    for (int comp = 0; comp < 3; ++comp) out[comp] += 2.0 * (C(comp, m) * am).real();
  }
  return out;
}

SpMat normal_ordered_square(const FockSpace& space, const Eigen::MatrixXcd& coefficients) {
  const int L = space.modes().ladder_count();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(L, L);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(L, L);
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) {
      Complex cc{0.0, 0.0}, cbarc{0.0, 0.0};
      for (int comp = 0; comp < 3; ++comp) {
        cc += coefficients(comp, m) * coefficients(comp, n);
        cbarc += std::conj(coefficients(comp, m)) * coefficients(comp, n);
      }
      A(m, n) = 2.0 * cbarc;
      T(m, n) = cc;
    }
  return assemble_quadratic(space, A, T);
}

SpMat total_energy_operator(const FockSpace& space) {
  const auto& modes = space.modes();
  SpMat H(space.dimension(), space.dimension());
  Triplets trip;
  trip.reserve(space.dimension());
  for (Eigen::Index v = 0; v < space.dimension(); ++v) {
    double e = 0.0;
    for (int m = 0; m < modes.ladder_count(); ++m)
      e += modes.omega(modes.momentum_of(m)) * space.occupation(v, m);
    if (e != 0.0) trip.emplace_back(v, v, Complex(e, 0.0));
  }
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

}  // namespace qibound::fock
