#include "kgx/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace kgx {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_even_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
    throw_validation(std::string(what) + ": need a square matrix of even dimension");
}

}  // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
  int n = n_modes;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return J;
}

Eigen::MatrixXd ordering_permutation(int n_modes) {
  int n = n_modes;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  // qqpp component i <- qpqp component: q_k at 2k, p_k at 2k+1
  for (int k = 0; k < n; ++k) {
    P(k, 2 * k) = 1.0;
    P(n + k, 2 * k + 1) = 1.0;
  }
  return P;
}

BosonCovariance::BosonCovariance(Eigen::MatrixXd v, int modes, Ordering ord)
    : V(std::move(v)), ordering(ord), n_modes(modes) {
  if (V.rows() != 2 * modes || V.cols() != 2 * modes)
    throw_validation("covariance dimension does not match the mode count");
  if (symmetry_defect() > 1e-12 * std::max(1.0, V.cwiseAbs().maxCoeff()))
    throw_validation("bosonic covariance must be symmetric");
}

BosonCovariance BosonCovariance::with_ordering(Ordering target) const {
  if (target == ordering) return *this;
  Eigen::MatrixXd P = ordering_permutation(n_modes);
  BosonCovariance out = *this;
  out.ordering = target;
  // V_qqpp = P V_qpqp P^T
  if (target == Ordering::qqpp)
    out.V = P * V * P.transpose();
  else
    out.V = P.transpose() * V * P;
  return out;
}

double BosonCovariance::symmetry_defect() const {
  return (V - V.transpose()).cwiseAbs().maxCoeff();
}

double BosonCovariance::physicality_margin() const {
  const BosonCovariance& c = ordering == Ordering::qqpp ? *this : this->with_ordering(Ordering::qqpp);
  Eigen::MatrixXcd test = c.V.cast<std::complex<double>>() +
                          std::complex<double>(0, 0.5) * symplectic_form(n_modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(test);
  return es.eigenvalues().minCoeff();
}

double FermionCovariance::antisymmetry_defect() const {
  return (omega + omega.transpose()).cwiseAbs().maxCoeff();
}

double FermionCovariance::purity_defect() const {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(omega.rows(), omega.cols());
  return (omega * omega.transpose() - id).cwiseAbs().maxCoeff();
}

double LinearMap::defect() const {
  if (kind == Kind::symplectic) {
    Eigen::MatrixXd J = symplectic_form(n_modes);
    return (M * J * M.transpose() - J).cwiseAbs().maxCoeff();
  }
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(M.rows(), M.cols());
  return (M * M.transpose() - id).cwiseAbs().maxCoeff();
}

LinearMap single_mode_bogoliubov(double r, double theta, double phi) {
  double ch = std::cosh(r), sh = std::sinh(r);
  LinearMap map;
  map.kind = LinearMap::Kind::symplectic;
  map.n_modes = 1;
  map.M.resize(2, 2);
  map.M << std::cos(phi) * ch + std::cos(theta) * sh,
      std::sin(theta) * sh - std::sin(phi) * ch,
      std::sin(phi) * ch + std::sin(theta) * sh,
      std::cos(phi) * ch - std::cos(theta) * sh;
  return map;
}

BosonCovariance transform_covariance(const LinearMap& map, const BosonCovariance& V) {
  if (map.kind != LinearMap::Kind::symplectic)
    throw_validation("bosonic covariances transform under symplectic maps");
  if (V.ordering != Ordering::qqpp)
    throw_validation("ordering mismatch: convert the covariance to qqpp first");
  if (map.M.rows() != V.V.rows()) throw_validation("dimension mismatch");
  BosonCovariance out(map.M * V.V * map.M.transpose(), V.n_modes, Ordering::qqpp);
  return out;
}

FermionCovariance transform_covariance(const LinearMap& map, const FermionCovariance& om) {
  if (map.kind != LinearMap::Kind::orthogonal)
    throw_validation("fermionic covariances transform under orthogonal maps");
  if (map.M.rows() != om.omega.rows()) throw_validation("dimension mismatch");
  FermionCovariance out;
  out.n_modes = om.n_modes;
  out.omega = map.M * om.omega * map.M.transpose();
  if (out.antisymmetry_defect() > 1e-12 * std::max(1.0, out.omega.cwiseAbs().maxCoeff()))
    throw_numeric("transform destroyed antisymmetry");
  return out;
}

Eigen::MatrixXd relative_covariance(const Eigen::MatrixXd& target, const Eigen::MatrixXd& ref) {
  check_even_square(target, "relative covariance");
  if (ref.rows() != target.rows() || ref.cols() != target.cols())
    throw_validation("relative covariance: dimension mismatch");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ref);
  if (!lu.isInvertible()) throw_validation("reference covariance is singular");
  return target * lu.inverse();
}

Eigen::VectorXcd covariance_spectrum(const Eigen::MatrixXd& delta) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(delta);
  if (es.info() != Eigen::Success) throw_numeric("eigensolver failed on relative covariance");
  return es.eigenvalues();
}

double fock_bound(const Eigen::MatrixXd& delta, Statistics stats) {
  check_even_square(delta, "excitation bound");
  double n = static_cast<double>(delta.rows());
  double tr = delta.trace();
  double bound = (stats == Statistics::boson) ? -0.25 * (n - tr) : 0.25 * (n - tr);
  if (bound < -1e-10)
    throw_numeric("excitation bound came out negative (" + std::to_string(bound) +
                  "); covariance pair is inconsistent");
  return std::max(bound, 0.0);
}

double bound_from_spectrum(const Eigen::VectorXcd& eigs, Statistics stats) {
  double n = static_cast<double>(eigs.size());
  std::complex<double> sum = eigs.sum();
  if (std::abs(sum.imag()) > 1e-10 * std::max(1.0, std::abs(sum.real())))
    throw_numeric("eigenvalue sum of the relative covariance is not real");
  double bound = (stats == Statistics::boson) ? -0.25 * (n - sum.real()) : 0.25 * (n - sum.real());
  if (bound < -1e-10) throw_numeric("excitation bound came out negative");
  return std::max(bound, 0.0);
}

double mean_excitation(const BosonCovariance& V, const Eigen::Vector2d& displacement) {
  const BosonCovariance c = V.with_ordering(Ordering::qqpp);
  double n = static_cast<double>(c.V.rows());
  return 0.25 * (c.V.trace() - n) + 0.5 * displacement.squaredNorm();
}

BosonCovariance covariance_from_wavefunction(double a, double b) {
  if (!(a > 0)) throw_validation("wave-function width parameter must be positive");
  Eigen::MatrixXd V(2, 2);
  V << 1.0 / a, -b / a, -b / a, (a * a + b * b) / a;
  return BosonCovariance(V, 1, Ordering::qqpp);
}

TfdCovariances tfd_covariances(const TfdParams& p) {
  if (!(p.lambda > 0) || !(p.lambda_ref > 0))
    throw_validation("oscillator frequency ratios must be positive");
  auto diag = [](double a, double d) {
    Eigen::MatrixXd V(2, 2);
    V << a, 0, 0, d;
    return BosonCovariance(V, 1, Ordering::qqpp);
  };
  auto entangled = [&](double alpha) {
    double e2a = std::exp(2.0 * alpha);
    return diag(e2a / p.lambda, p.lambda / e2a);
  };
  // the (-) mode is the (+) mode under alpha -> -alpha
  TfdCovariances out{
      diag(1.0 / p.lambda_ref, p.lambda_ref),
      diag(1.0 / p.lambda, p.lambda),
      entangled(p.alpha),
      entangled(-p.alpha),
  };
  return out;
}

BosonCovariance tfd_time_evolved(const TfdParams& p) {
  if (!(p.lambda > 0)) throw_validation("oscillator frequency ratio must be positive");
  double c2 = std::cosh(2.0 * p.alpha), s2 = std::sinh(2.0 * p.alpha);
  double cwt = std::cos(p.omega * p.t), swt = std::sin(p.omega * p.t);
  Eigen::MatrixXd V(2, 2);
  V << (c2 + s2 * cwt) / p.lambda, -s2 * swt, -s2 * swt, p.lambda * (c2 - s2 * cwt);
  return BosonCovariance(V, 1, Ordering::qqpp);
}

namespace {

TfdBounds tfd_bounds_from(const BosonCovariance& plus, const BosonCovariance& minus,
                          const BosonCovariance& ref, const TfdParams& p) {
  double cp = fock_bound(relative_covariance(plus.V, ref.V), Statistics::boson);
  double cm = fock_bound(relative_covariance(minus.V, ref.V), Statistics::boson);

  TfdParams zero = p;
  zero.alpha = 0;
  TfdCovariances base = tfd_covariances(zero);
  double c0 = fock_bound(relative_covariance(base.tfd_plus.V, ref.V), Statistics::boson);

  TfdBounds out;
  out.C_plus = cp;
  out.C_minus = cm;
  out.C_max = std::max(cp, cm);
  out.C_sigma = cp + cm;
  out.dC_plus = cp - c0;
  out.dC_minus = cm - c0;
  out.dC_sigma = out.C_sigma - 2.0 * c0;
  return out;
}

}  // namespace

TfdBounds tfd_bounds(const TfdParams& p) {
  TfdCovariances cov = tfd_covariances(p);
  return tfd_bounds_from(cov.tfd_plus, cov.tfd_minus, cov.reference, p);
}

TfdBounds tfd_bounds_time_evolved(const TfdParams& p) {
  TfdCovariances cov = tfd_covariances(p);
  TfdParams minus = p;
  minus.alpha = -p.alpha;
  return tfd_bounds_from(tfd_time_evolved(p), tfd_time_evolved(minus), cov.reference, p);
}

GeometricComplexity geometric_complexity(double lambda, double alpha) {
  if (!(lambda > 0)) throw_validation("frequency ratio must be positive");
  double half_log = 0.5 * std::log(lambda);
  GeometricComplexity g;
  g.plus = alpha + half_log;
  g.minus = -alpha + half_log;
  g.total = std::abs(g.plus) + std::abs(g.minus);
  return g;
}

double fermion_geodesic(double theta) { return 2.0 * theta; }

FermionPairResult fermion_pair(double theta, double phi) {
  double c = std::cos(theta), s = std::sin(theta);
  double cf = std::cos(phi), sf = std::sin(phi);

  // Basis (q1, q2, p1, p2): rotate (q2, p2) by phi, mix (q1, q2) and
  // (p1, p2) by +-theta, rotate back.
  Eigen::Matrix4d P1 = Eigen::Matrix4d::Identity();
  P1(1, 1) = cf;
  P1(1, 3) = -sf;
  P1(3, 1) = sf;
  P1(3, 3) = cf;

  Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
  R(0, 0) = c;
  R(0, 1) = s;
  R(1, 0) = -s;
  R(1, 1) = c;
  R(2, 2) = c;
  R(2, 3) = -s;
  R(3, 2) = s;
  R(3, 3) = c;

  Eigen::Matrix4d P2 = Eigen::Matrix4d::Identity();
  P2(1, 1) = cf;
  P2(1, 3) = sf;
  P2(3, 1) = -sf;
  P2(3, 3) = cf;

  FermionPairResult out;
  out.map.kind = LinearMap::Kind::orthogonal;
  out.map.n_modes = 2;
  out.map.M = P1 * R * P2;

  FermionCovariance vacuum;
  vacuum.n_modes = 2;
  vacuum.omega = symplectic_form(2);
  out.omega_tilde = transform_covariance(out.map, vacuum);

  out.delta = relative_covariance(out.omega_tilde.omega, vacuum.omega);
  out.spectrum = covariance_spectrum(out.delta);
  out.bound_summed = fock_bound(out.delta, Statistics::fermion);
  out.bound_per_fermion = 0.5 * out.bound_summed;
  return out;
}

double dirac_mode(const DiracModeParams& p, DiracKind kind) {
  if (p.p < 0 || p.m < 0) throw_validation("momentum and mass must be non-negative");
  if (p.p == 0 && p.m == 0)
    throw_validation("massless zero-momentum mode is undefined");

  double theta;
  if (p.m == 0) {
    theta = kPi / 4.0;  // exact limit of arctan(p/m)/2
  } else {
    theta = 0.5 * std::atan(p.p / p.m);
  }
  double s = std::sin(theta), c = std::cos(theta);
  return kind == DiracKind::ground ? s * s : c * c;
}

double dirac_summed(const DiracModeParams& p, DiracKind kind, int n_grid) {
  if (!(p.cutoff > 0)) throw_validation("cutoff must be positive");
  if (n_grid < 16) throw_validation("quadrature grid must have at least 16 intervals");
  if (n_grid % 2 != 0) ++n_grid;

  auto integrand = [&](double q) {
    if (q == 0 && p.m == 0) return 0.0;  // p^2 factor kills the limit point
    DiracModeParams mode = p;
    mode.p = q;
    return q * q * dirac_mode(mode, kind);
  };

  double h = p.cutoff / n_grid;
  double acc = integrand(0.0) + integrand(p.cutoff);
  for (int k = 1; k < n_grid; ++k) acc += (k % 2 ? 4.0 : 2.0) * integrand(k * h);
  double integral = acc * h / 3.0;

  // two spins, measure d^3p/(2pi)^3 = p^2 dp / (2 pi^2) per unit volume
  return 2.0 * integral / (2.0 * kPi * kPi);
}

double family_fock_bound(const StateFamily& family, double t) {
  switch (family.tag) {
    case StateFamily::Tag::coherent: {
      double alpha = family.alpha.convert_to<double>();
      // vacuum covariance, displacement of magnitude |z| = alpha t
      Eigen::Vector2d d(0.0, -std::sqrt(2.0) * alpha * t);
      return mean_excitation(BosonCovariance(Eigen::MatrixXd::Identity(2, 2), 1), d);
    }
    case StateFamily::Tag::squeezed: {
      double eta = family.eta.convert_to<double>();
      LinearMap map = single_mode_bogoliubov(eta * t, 0.0, 0.0);
      BosonCovariance v = transform_covariance(
          map, BosonCovariance(Eigen::MatrixXd::Identity(2, 2), 1));
      return mean_excitation(v, Eigen::Vector2d::Zero());
    }
    case StateFamily::Tag::two_mode: {
      // reduced single-mode covariance of the two-mode squeezed state:
      // cosh(2 r t) * I; the per-mode excitation bounds the complexity
      double r = family.r.convert_to<double>();
      Eigen::MatrixXd V = std::cosh(2.0 * r * t) * Eigen::MatrixXd::Identity(2, 2);
      return mean_excitation(BosonCovariance(V, 1), Eigen::Vector2d::Zero());
    }
    case StateFamily::Tag::displaced_squeezed: {
      double alpha = family.alpha.convert_to<double>();
      double eta = family.eta.convert_to<double>();
      LinearMap map = single_mode_bogoliubov(eta * t, 0.0, 0.0);
      BosonCovariance v = transform_covariance(
          map, BosonCovariance(Eigen::MatrixXd::Identity(2, 2), 1));
      Eigen::Vector2d d(0.0, -std::sqrt(2.0) * alpha * t);
      return mean_excitation(v, d);
    }
    default:
      throw_validation(std::string("no excitation bound for family ") + family.name());
  }
}

}  // namespace kgx
