#include <doctest.h>

#include <cmath>

#include "kgx/hilbert.hpp"

using namespace kgx;

TEST_CASE("ladder operators at small truncation") {
  FockSpace space(1, 3);
  auto [a, a_dag] = build_ladder(space, 0);
  Eigen::MatrixXcd A = a.dense();
  CHECK(A(0, 1).real() == doctest::Approx(1.0));
  CHECK(A(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(A(0, 0) == Cx(0, 0));
  CHECK(A(2, 1) == Cx(0, 0));

  // a annihilates the vacuum
  StateVector vac = vacuum(space);
  Eigen::VectorXcd killed = a.entries * vac.amps;
  CHECK(killed.norm() == doctest::Approx(0.0));

  // the truncated creation operator annihilates the top level
  Eigen::VectorXcd top = Eigen::VectorXcd::Zero(3);
  top(2) = 1.0;
  CHECK((a_dag.entries * top).norm() == doctest::Approx(0.0));
}

TEST_CASE("number operator diagonal from a_dag a") {
  FockSpace space(1, 8);
  auto [a, a_dag] = build_ladder(space, 0);
  Eigen::MatrixXcd N = (a_dag.entries * a.entries).toDense();
  for (int n = 0; n < 7; ++n) CHECK(N(n, n).real() == doctest::Approx(double(n)));
}

TEST_CASE("ladder operators act on the addressed mode only") {
  FockSpace space(2, 4);
  auto [a0, a0_dag] = build_ladder(space, 0);
  auto [a1, a1_dag] = build_ladder(space, 1);
  // state |1,2>: index 1 + 2*4 = 9
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v(9) = 1.0;
  Eigen::VectorXcd w0 = a0.entries * v;  // sqrt(1) |0,2>
  CHECK(std::abs(w0(8)) == doctest::Approx(1.0));
  Eigen::VectorXcd w1 = a1.entries * v;  // sqrt(2) |1,1>
  CHECK(std::abs(w1(5)) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(build_ladder(space, 2), Error);
}

TEST_CASE("hamiltonian builders match their matrix elements") {
  FockSpace space(1, 3);
  Eigen::MatrixXcd Hc =
      build_hamiltonian(StateFamily::make_coherent(Rational(1)), space).dense();
  CHECK(Hc(0, 1).real() == doctest::Approx(1.0));
  CHECK(Hc(1, 0).real() == doctest::Approx(1.0));
  CHECK(Hc(1, 2).real() == doctest::Approx(std::sqrt(2.0)));

  FockSpace s5(1, 5);
  Eigen::MatrixXcd Hs = build_hamiltonian(StateFamily::make_squeezed(Rational(2)), s5).dense();
  CHECK(Hs(0, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(Hs(2, 0).real() == doctest::Approx(std::sqrt(2.0)));

  FockSpace s2(2, 6);
  OperatorMatrix Ht = build_hamiltonian(StateFamily::make_two_mode(Rational(1)), s2);
  CHECK(Ht.hermitian_defect() <= 1e-12);
  CHECK(Ht.dense()(0, 0) == Cx(0, 0));

  CHECK_THROWS_AS(
      build_hamiltonian(StateFamily::make_displaced_squeezed(Rational(1), Rational(1)), space),
      Error);
  CHECK_THROWS_AS(build_hamiltonian(StateFamily::make_coherent(Rational(1)), s2), Error);
}

TEST_CASE("oracle evolution: identity at t = 0 and unitarity") {
  FockSpace space(1, 64);
  OperatorMatrix H = build_hamiltonian(StateFamily::make_coherent(Rational(1)), space);
  StateVector psi0 = vacuum(space);
  StateVector same = evolve_oracle(H, psi0, 0.0);
  CHECK((same.amps - psi0.amps).norm() == doctest::Approx(0.0));
  for (double t : {0.3, 1.0, 2.0}) {
    StateVector psi = evolve_oracle(H, psi0, t);
    CHECK(std::abs(psi.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("oracle evolution: coherent survival probability") {
  FockSpace space(1, 128);
  OperatorMatrix H = build_hamiltonian(StateFamily::make_coherent(Rational(1)), space);
  StateVector psi = evolve_oracle(H, vacuum(space), 1.0);
  double p0 = std::norm(psi.amps(0));
  CHECK(p0 == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("oracle evolution: squeezed survival probability") {
  FockSpace space(1, 256);
  OperatorMatrix H = build_hamiltonian(StateFamily::make_squeezed(Rational(1)), space);
  StateVector psi = evolve_oracle(H, vacuum(space), 0.5);
  double p0 = std::norm(psi.amps(0));
  CHECK(p0 == doctest::Approx(1.0 / std::cosh(0.5)).epsilon(1e-8));
}

TEST_CASE("oracle evolution: semigroup property") {
  FockSpace space(1, 96);
  OperatorMatrix H = build_hamiltonian(StateFamily::make_coherent(Rational(1)), space);
  StateVector one_step = evolve_oracle(H, vacuum(space), 1.3);
  StateVector two_step = evolve_oracle(H, evolve_oracle(H, vacuum(space), 0.8), 0.5);
  CHECK((one_step.amps - two_step.amps).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("oracle rejects non-hermitian generators") {
  FockSpace space(1, 4);
  auto [a, a_dag] = build_ladder(space, 0);
  OperatorMatrix bad = a;
  bad.hermitian = true;  // lying about it still fails the defect check
  CHECK_THROWS_AS(evolve_oracle(bad, vacuum(space), 1.0), Error);
}

TEST_CASE("truncation tail accounting") {
  FockSpace space(1, 100);
  StateVector psi = vacuum(space);
  CHECK(truncation_tail(psi) == doctest::Approx(0.0));
  psi.amps(0) = std::sqrt(0.5);
  psi.amps(99) = std::sqrt(0.5);
  CHECK(truncation_tail(psi) == doctest::Approx(0.5));
  CHECK_THROWS_AS(require_truncation_ok(psi), Error);

  // evolve far enough that a tiny truncation overflows the top 5% of levels
  FockSpace tight(1, 12);
  OperatorMatrix H = build_hamiltonian(StateFamily::make_coherent(Rational(2)), tight);
  StateVector late = evolve_oracle(H, vacuum(tight), 1.5);
  CHECK(truncation_tail(late) > 1e-8);
  CHECK_THROWS_AS(require_truncation_ok(late), Error);
}
