#include <doctest.h>

#include <cmath>
#include <random>

#include "kgx/gaussian.hpp"

using namespace kgx;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("single-mode Bogoliubov map: limits and symplectic defect") {
  LinearMap rot = single_mode_bogoliubov(0.0, 0.0, 0.7);
  CHECK(rot.M(0, 0) == doctest::Approx(std::cos(0.7)));
  CHECK(rot.M(1, 0) == doctest::Approx(std::sin(0.7)));
  CHECK(rot.defect() <= 1e-12);

  LinearMap hyp = single_mode_bogoliubov(1.0, 0.0, 0.0);
  CHECK(hyp.M(0, 0) == doctest::Approx(std::exp(1.0)));
  CHECK(hyp.M(1, 1) == doctest::Approx(std::exp(-1.0)));
  CHECK(hyp.M(0, 1) == doctest::Approx(0.0));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rd(0.0, 2.0), ang(0.0, 2 * kPi);
  for (int k = 0; k < 20; ++k)
    CHECK(single_mode_bogoliubov(rd(rng), ang(rng), ang(rng)).defect() <= 1e-12);
}

TEST_CASE("transformed vacuum covariance and the sinh^2 trace identity") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> rd(0.1, 2.0), ang(0.0, 2 * kPi);
  for (int k = 0; k < 20; ++k) {
    double r = rd(rng), theta = ang(rng), phi = ang(rng);
    LinearMap map = single_mode_bogoliubov(r, theta, phi);
    BosonCovariance v =
        transform_covariance(map, BosonCovariance(Eigen::MatrixXd::Identity(2, 2), 1));
    CHECK(v.symmetry_defect() <= 1e-12);
    CHECK(v.V.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(v.physicality_margin() >= -1e-10);

    double c2 = std::cosh(2 * r), s2 = std::sinh(2 * r), sum = theta + phi;
    CHECK(v.V(0, 0) == doctest::Approx(c2 + std::cos(sum) * s2).epsilon(1e-12));
    CHECK(v.V(1, 1) == doctest::Approx(c2 - std::cos(sum) * s2).epsilon(1e-12));
    CHECK(v.V(0, 1) == doctest::Approx(std::sin(sum) * s2).epsilon(1e-12));

    Eigen::MatrixXd delta = relative_covariance(v.V, Eigen::MatrixXd::Identity(2, 2));
    double sh = std::sinh(r);
    CHECK(fock_bound(delta, Statistics::boson) == doctest::Approx(sh * sh).epsilon(1e-10));
  }
}

TEST_CASE("transformed covariance depends on the phases only through theta + phi") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> rd(0.1, 2.0), ang(0.0, 2 * kPi);
  for (int k = 0; k < 20; ++k) {
    double r = rd(rng), theta = ang(rng), phi = ang(rng), shift = ang(rng);
    BosonCovariance id(Eigen::MatrixXd::Identity(2, 2), 1);
    BosonCovariance a = transform_covariance(single_mode_bogoliubov(r, theta, phi), id);
    BosonCovariance b =
        transform_covariance(single_mode_bogoliubov(r, theta + shift, phi - shift), id);
    CHECK((a.V - b.V).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("identity map leaves covariances alone; orderings round-trip") {
  LinearMap id{Eigen::MatrixXd::Identity(4, 4), LinearMap::Kind::symplectic, 2};
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(4, 4);
  V(0, 0) = 2.0;
  V(2, 2) = 0.5;
  BosonCovariance cov(V, 2);
  BosonCovariance same = transform_covariance(id, cov);
  CHECK((same.V - V).cwiseAbs().maxCoeff() <= 1e-15);

  BosonCovariance other = cov.with_ordering(Ordering::qpqp);
  CHECK(other.V(1, 1) == doctest::Approx(0.5));  // p_1 right after q_1
  BosonCovariance back = other.with_ordering(Ordering::qqpp);
  CHECK((back.V - cov.V).cwiseAbs().maxCoeff() <= 1e-15);

  CHECK_THROWS_AS(transform_covariance(id, other), Error);
}

TEST_CASE("relative covariance: identical states and singular references") {
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(2, 2) * 1.7;
  Eigen::MatrixXd delta = relative_covariance(V, V);
  CHECK((delta - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(fock_bound(delta, Statistics::boson) == doctest::Approx(0.0));

  CHECK_THROWS_AS(relative_covariance(V, Eigen::MatrixXd::Zero(2, 2)), Error);
}

TEST_CASE("excitation bound rejects inconsistent covariance pairs") {
  Eigen::MatrixXd delta = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(fock_bound(delta, Statistics::boson), Error);
}

TEST_CASE("trace route equals spectrum route") {
  LinearMap map = single_mode_bogoliubov(0.8, 1.1, 0.3);
  BosonCovariance v =
      transform_covariance(map, BosonCovariance(Eigen::MatrixXd::Identity(2, 2), 1));
  Eigen::MatrixXd delta = relative_covariance(v.V, Eigen::MatrixXd::Identity(2, 2));
  Eigen::VectorXcd eigs = covariance_spectrum(delta);
  CHECK(bound_from_spectrum(eigs, Statistics::boson) ==
        doctest::Approx(fock_bound(delta, Statistics::boson)).epsilon(1e-10));
  double hi = std::max(eigs(0).real(), eigs(1).real());
  CHECK(hi == doctest::Approx(std::exp(1.6)).epsilon(1e-10));
}

TEST_CASE("covariance from a Gaussian wave function") {
  BosonCovariance vac = covariance_from_wavefunction(1.0, 0.0);
  CHECK((vac.V - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ad(0.2, 3.0), bd(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    BosonCovariance v = covariance_from_wavefunction(ad(rng), bd(rng));
    CHECK(v.V.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(v.physicality_margin() >= -1e-10);
  }
  CHECK_THROWS_AS(covariance_from_wavefunction(-1.0, 0.0), Error);

  // width lambda e^{-2 alpha} reproduces the entangled-mode covariance
  double lambda = 1.3, alpha = 0.6;
  BosonCovariance tfd = covariance_from_wavefunction(lambda * std::exp(-2 * alpha), 0.0);
  TfdParams p{lambda, 1.0, alpha, 1.0, 0.0};
  CHECK((tfd.V - tfd_covariances(p).tfd_plus.V).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("thermofield-double covariances and bounds") {
  TfdParams p{1.0, 1.0, 1.0, 1.0, 0.0};
  TfdCovariances cov = tfd_covariances(p);
  CHECK(cov.reference.V(0, 0) == doctest::Approx(1.0));
  CHECK(cov.tfd_plus.V(0, 0) == doctest::Approx(std::exp(2.0)));
  CHECK(cov.tfd_plus.V(1, 1) == doctest::Approx(std::exp(-2.0)));

  // disentangled limit
  TfdParams zero{2.0, 1.0, 0.0, 1.0, 0.0};
  TfdCovariances cz = tfd_covariances(zero);
  CHECK((cz.tfd_plus.V - cz.ground.V).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((cz.tfd_minus.V - cz.ground.V).cwiseAbs().maxCoeff() <= 1e-15);

  double sh = std::sinh(1.0);
  CHECK(fock_bound(relative_covariance(cov.tfd_plus.V, cov.reference.V), Statistics::boson) ==
        doctest::Approx(sh * sh).epsilon(1e-12));

  // lambda = 2, lambda_R = 1, alpha = 1/2 against a direct trace evaluation
  TfdParams mixed{2.0, 1.0, 0.5, 1.0, 0.0};
  TfdBounds b = tfd_bounds(mixed);
  double direct =
      -0.25 * (2.0 - (1.0 * std::exp(1.0) + 4.0 * std::exp(-1.0)) / 2.0);
  CHECK(b.C_plus == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("time-evolved covariance: determinant one, static limit, equal-ratio constancy") {
  TfdParams p{1.7, 1.0, 0.8, 2.0, 0.0};
  BosonCovariance at0 = tfd_time_evolved(p);
  CHECK((at0.V - tfd_covariances(p).tfd_plus.V).cwiseAbs().maxCoeff() <= 1e-12);

  for (int j = 0; j <= 40; ++j) {
    p.t = 2 * kPi * j / (40.0 * p.omega);
    CHECK(tfd_time_evolved(p).V.determinant() == doctest::Approx(1.0).epsilon(1e-10));
  }

  TfdParams eq{1.5, 1.5, 1.0, 1.0, 0.0};
  double base = tfd_bounds_time_evolved(eq).C_plus;
  for (int j = 1; j <= 20; ++j) {
    eq.t = 2 * kPi * j / 20.0;
    CHECK(tfd_bounds_time_evolved(eq).C_plus == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("summed and formation bounds at equal frequency ratios") {
  for (double alpha : {0.0, 0.4, 2.0}) {
    TfdParams p{1.0, 1.0, alpha, 1.0, 0.0};
    TfdBounds b = tfd_bounds(p);
    double sh2 = std::sinh(alpha) * std::sinh(alpha);
    CHECK(b.C_max == doctest::Approx(sh2).epsilon(1e-12));
    CHECK(b.C_sigma == doctest::Approx(2 * sh2).epsilon(1e-12));
    CHECK(b.dC_plus == doctest::Approx(sh2).epsilon(1e-12));
    CHECK(b.dC_sigma == doctest::Approx(2 * sh2).epsilon(1e-12));
  }
  // formation formula at unequal ratios
  TfdParams p{2.0, 0.5, 0.7, 1.0, 0.0};
  TfdBounds b = tfd_bounds(p);
  double want = std::sinh(0.7) * std::sinh(0.7) * (4.0 + 0.25) / (2.0 * 0.5);
  CHECK(b.dC_sigma == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("geometric comparison values") {
  GeometricComplexity g1 = geometric_complexity(1.0, 2.0);
  CHECK(g1.total == doctest::Approx(4.0));
  CHECK(geometric_complexity(1.0, 0.0).total == doctest::Approx(0.0));

  // spread formation dominates the geodesic value at large alpha
  double sh3 = std::sinh(3.0) * std::sinh(3.0);
  CHECK(sh3 > geometric_complexity(1.0, 3.0).total);
  CHECK(fermion_geodesic(kPi / 2) == doctest::Approx(kPi));
}

TEST_CASE("fermion pair: covariance pattern, spectrum, bounds") {
  FermionPairResult fp = fermion_pair(0.6, 1.9);
  CHECK(fp.map.defect() <= 1e-12);
  CHECK(fp.omega_tilde.antisymmetry_defect() <= 1e-12);
  CHECK(fp.omega_tilde.purity_defect() <= 1e-10);

  // expected 4x4 pattern in (q1, q2, p1, p2) ordering
  double c = std::cos(1.2), s = std::sin(1.2);  // cos/sin(2 theta)
  double cf = std::cos(1.9), sf = std::sin(1.9);
  Eigen::Matrix4d want;
  want << 0, -s * sf, c, s * cf,
      s * sf, 0, -s * cf, c,
      -c, s * cf, 0, s * sf,
      -s * cf, -c, -s * sf, 0;
  CHECK((fp.omega_tilde.omega - want).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK(fp.bound_per_fermion == doctest::Approx(std::sin(0.6) * std::sin(0.6)).epsilon(1e-12));
  CHECK(fp.bound_summed == doctest::Approx(2 * std::sin(0.6) * std::sin(0.6)).epsilon(1e-12));

  // theta = 0 and pi leave the state alone
  for (double theta : {0.0, kPi}) {
    FermionPairResult id = fermion_pair(theta, 0.4);
    CHECK(id.bound_summed <= 1e-12);
    CHECK((id.omega_tilde.omega - symplectic_form(2)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(fermion_pair(kPi / 2, 0.0).bound_per_fermion == doctest::Approx(1.0));

  // theta = pi/4: bound 1/2, eigenvalues +-i twice
  FermionPairResult quarter = fermion_pair(kPi / 4, 2.2);
  CHECK(quarter.bound_per_fermion == doctest::Approx(0.5).epsilon(1e-12));
  int plus_i = 0, minus_i = 0;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(quarter.spectrum(k) - Cx(0, 1)) <= 1e-10) ++plus_i;
    if (std::abs(quarter.spectrum(k) - Cx(0, -1)) <= 1e-10) ++minus_i;
  }
  CHECK(plus_i == 2);
  CHECK(minus_i == 2);
}

TEST_CASE("dirac modes: limits, complementarity, undefined point") {
  CHECK(dirac_mode({1.0, 0.0, 1.0}, DiracKind::ground) == doctest::Approx(0.5));
  CHECK(dirac_mode({1.0, 0.0, 1.0}, DiracKind::excited) == doctest::Approx(0.5));
  CHECK(dirac_mode({0.0, 2.0, 1.0}, DiracKind::ground) == doctest::Approx(0.0));
  CHECK(dirac_mode({0.0, 2.0, 1.0}, DiracKind::excited) == doctest::Approx(1.0));
  CHECK_THROWS_AS(dirac_mode({0.0, 0.0, 1.0}, DiracKind::ground), Error);
  CHECK_THROWS_AS(dirac_mode({-1.0, 1.0, 1.0}, DiracKind::ground), Error);
}

TEST_CASE("summed dirac complexity: analytic massless value and convergence") {
  DiracModeParams massless{0.0, 0.0, 10.0};
  double got = dirac_summed(massless, DiracKind::ground, 128);
  double want = 1000.0 / (6.0 * kPi * kPi);
  CHECK(got == doctest::Approx(want).epsilon(1e-8));

  DiracModeParams massive{0.0, 1.0, 10.0};
  double coarse = dirac_summed(massive, DiracKind::ground, 64);
  double fine = dirac_summed(massive, DiracKind::ground, 128);
  CHECK(std::abs(fine - coarse) / fine <= 1e-8);

  // heavy fields are barely excited
  DiracModeParams heavy{0.0, 1e8, 10.0};
  CHECK(dirac_summed(heavy, DiracKind::ground, 64) <= 1e-10);

  // monotone in the cutoff
  double prev = 0;
  for (double cut : {1.0, 2.0, 4.0, 8.0}) {
    DiracModeParams p{0.0, 1.0, cut};
    double v = dirac_summed(p, DiracKind::ground, 64);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(dirac_summed(massive, DiracKind::ground, 8), Error);
}

TEST_CASE("family excitation bounds used by the complexity tables") {
  CHECK(family_fock_bound(StateFamily::make_coherent(Rational(2)), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-12));
  double sh = std::sinh(0.9);
  CHECK(family_fock_bound(StateFamily::make_squeezed(Rational(1)), 0.9) ==
        doctest::Approx(sh * sh).epsilon(1e-12));
  CHECK(family_fock_bound(StateFamily::make_two_mode(Rational(1)), 0.9) ==
        doctest::Approx(sh * sh).epsilon(1e-12));
  double a2t2 = 4.0 * 0.25;
  CHECK(family_fock_bound(StateFamily::make_displaced_squeezed(Rational(2), Rational(1)), 0.5) ==
        doctest::Approx(a2t2 + std::sinh(0.5) * std::sinh(0.5)).epsilon(1e-12));
}
