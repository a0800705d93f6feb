#include <doctest.h>

#include <random>

#include "kgx/moments.hpp"

using namespace kgx;

namespace {
Rational q(long num, long den = 1) { return Rational(num) / Rational(den); }
}

TEST_CASE("survival series: coherent is the Gaussian") {
  Jet<Rational> jet = survival_jet<Rational>(StateFamily::make_coherent(q(1)), 4);
  CHECK(jet[0] == q(1));
  CHECK(jet[1] == q(0));
  CHECK(jet[2] == q(-1, 2));
  CHECK(jet[3] == q(0));
  CHECK(jet[4] == q(1, 8));
}

TEST_CASE("survival series: two-mode moments are the sech numbers") {
  MomentSequence<Rational> mu =
      moments_from_jet(survival_jet<Rational>(StateFamily::make_two_mode(q(1)), 6));
  CHECK(mu.mu[0].re == q(1));
  CHECK(mu.mu[2].re == q(-1));
  CHECK(mu.mu[4].re == q(5));
  CHECK(mu.mu[6].re == q(-61));
  CHECK(!mu.convention_violation);
}

TEST_CASE("squeezed moments at eta = 2") {
  MomentSequence<Rational> mu =
      moments_from_jet(survival_jet<Rational>(StateFamily::make_squeezed(q(2)), 4));
  CHECK(mu.mu[2].re == q(-2));
  CHECK(mu.mu[4].re == q(28));
}

TEST_CASE("coherent even moments follow the double factorial") {
  // d^n/dt^n e^{-t^2/2} at 0: mu_2 = -1, mu_4 = 3, mu_6 = -15
  MomentSequence<Rational> mu =
      moments_from_jet(survival_jet<Rational>(StateFamily::make_coherent(q(1)), 6));
  CHECK(mu.mu[2].re == q(-1));
  CHECK(mu.mu[4].re == q(3));
  CHECK(mu.mu[6].re == q(-15));
}

TEST_CASE("displaced-squeezed limits reduce exactly") {
  Jet<Rational> at_zero_alpha =
      survival_jet<Rational>(StateFamily::make_displaced_squeezed(q(0), q(1)), 8);
  Jet<Rational> squeezed = survival_jet<Rational>(StateFamily::make_squeezed(q(1)), 8);
  for (int k = 0; k <= 8; ++k) CHECK(at_zero_alpha[k] == squeezed[k]);

  Jet<Rational> at_zero_eta =
      survival_jet<Rational>(StateFamily::make_displaced_squeezed(q(1), q(0)), 8);
  Jet<Rational> coherent = survival_jet<Rational>(StateFamily::make_coherent(q(1)), 8);
  for (int k = 0; k <= 8; ++k) CHECK(at_zero_eta[k] == coherent[k]);
}

TEST_CASE("displaced-squeezed moments match direct differentiation") {
  // mu_2 = -(alpha^2 + eta^2/2), mu_3 = 3 alpha^2 eta,
  // mu_4 = 3 alpha^4 + 3 alpha^2 eta^2 + 7 eta^4 / 4
  Rational a = q(2), e = q(3);
  MomentSequence<Rational> mu =
      moments_from_jet(survival_jet<Rational>(StateFamily::make_displaced_squeezed(a, e), 4));
  CHECK(mu.mu[2].re == -(a * a + e * e / 2));
  CHECK(mu.mu[3].re == 3 * a * a * e);
  CHECK(mu.mu[4].re == 3 * a * a * a * a + 3 * a * a * e * e + 7 * e * e * e * e / 4);
  REQUIRE(mu.convention_violation.has_value());
  CHECK(*mu.convention_violation == 3);  // real odd moment
}

TEST_CASE("tfd survival series at equal ratios matches cosh^{-1/2} in alpha") {
  Jet<Rational> tfd = survival_jet<Rational>(StateFamily::make_tfd(q(1), q(1)), 10);
  Jet<Rational> ref = survival_jet<Rational>(StateFamily::make_squeezed(q(1)), 10);
  for (int k = 0; k <= 10; ++k) CHECK(tfd[k] == ref[k]);

  // unequal ratios: constant term below 1 (states differ already at alpha=0)
  Jet<Tracked<128>> off = survival_jet<Tracked<128>>(StateFamily::make_tfd(q(4), q(1)), 6);
  CHECK(ScalarTraits<Tracked<128>>::to_double(off[0]) ==
        doctest::Approx(2.0 / std::sqrt(5.0)));
}

TEST_CASE("constant survival amplitude has vanishing moments") {
  Jet<Rational> one = Jet<Rational>::constant(q(1), 6);
  MomentSequence<Rational> mu = moments_from_jet(one);
  for (int n = 1; n <= 6; ++n) {
    CHECK(mu.mu[n].re == q(0));
    CHECK(mu.mu[n].im == q(0));
  }
}

TEST_CASE("coefficient recovery: two-mode pattern b_n = n r") {
  MomentSequence<Rational> mu =
      moments_from_jet(survival_jet<Rational>(StateFamily::make_two_mode(q(1)), 8));
  RecoveredChain<Rational> rec = lanczos_from_moments(mu, 4);
  CHECK(rec.b2[1] == q(1));
  CHECK(rec.b2[2] == q(4));
  CHECK(rec.b2[3] == q(9));
  CHECK(rec.b2[4] == q(16));
  for (const Rational& a : rec.a) CHECK(a == q(0));
}

TEST_CASE("coefficient recovery: coherent b_n = alpha sqrt(n)") {
  Rational alpha = q(3, 2);
  MomentSequence<Rational> mu =
      moments_from_jet(survival_jet<Rational>(StateFamily::make_coherent(alpha), 12));
  RecoveredChain<Rational> rec = lanczos_from_moments(mu, 6);
  for (int n = 1; n <= 6; ++n) CHECK(rec.b2[n] == alpha * alpha * n);
  for (const Rational& a : rec.a) CHECK(a == q(0));
}

TEST_CASE("coefficient recovery: squeezed b_n = (eta/2) sqrt(2n(2n-1))") {
  MomentSequence<Rational> mu =
      moments_from_jet(survival_jet<Rational>(StateFamily::make_squeezed(q(1)), 6));
  RecoveredChain<Rational> rec = lanczos_from_moments(mu, 3);
  CHECK(rec.b2[1] == q(2, 4));    // (1/4) * 2*1
  CHECK(rec.b2[2] == q(12, 4));
  CHECK(rec.b2[3] == q(30, 4));
}

TEST_CASE("recovery rejects the displaced-squeezed odd moments") {
  MomentSequence<Rational> mu = moments_from_jet(
      survival_jet<Rational>(StateFamily::make_displaced_squeezed(q(1), q(1)), 8));
  CHECK_THROWS_WITH_AS(lanczos_from_moments(mu, 4).count(),
                       doctest::Contains("Hermitian parity"), Error);
  // depth 1 never touches mu_3 and stays consistent
  RecoveredChain<Rational> rec = lanczos_from_moments(mu, 1);
  CHECK(rec.b2[1] == q(3, 2));  // alpha^2 + eta^2/2
}

TEST_CASE("recovery reports Krylov exhaustion on a two-level system") {
  // moments of T = [[0,1],[1,0]]: m_{2k} = 1
  MomentSequence<Rational> mu = moments_from_chain<Rational>({q(0), q(0)}, {q(0), q(1)}, 8);
  CHECK(mu.mu[2].re == q(-1));
  CHECK(mu.mu[4].re == q(1));
  RecoveredChain<Rational> ok = lanczos_from_moments(mu, 1);
  CHECK(ok.b2[1] == q(1));
  CHECK_THROWS_WITH_AS(lanczos_from_moments(mu, 2).count(), doctest::Contains("exhausted"),
                       Error);
}

TEST_CASE("recovery reports inconsistent amplitudes") {
  // mu_2 > 0 forces a negative b_1^2
  MomentSequence<Rational> mu;
  mu.mu = {{q(1), q(0)}, {q(0), q(0)}, {q(1), q(0)}, {q(0), q(0)}, {q(1), q(0)}};
  CHECK_THROWS_WITH_AS(lanczos_from_moments(mu, 2).count(), doctest::Contains("negative"),
                       Error);
}

TEST_CASE("recovery requires a normalized amplitude") {
  MomentSequence<Rational> mu;
  mu.mu = {{q(2), q(0)}, {q(0), q(0)}, {q(-1), q(0)}};
  CHECK_THROWS_WITH_AS(lanczos_from_moments(mu, 1).count(), doctest::Contains("normalized"),
                       Error);
}

TEST_CASE("moments from a chain: two-level and two-mode spot values") {
  MomentSequence<double> two_level =
      moments_from_chain<double>({0.0, 0.0}, {0.0, 1.0}, 4);
  CHECK(two_level.mu[2].re == doctest::Approx(-1.0));
  CHECK(two_level.mu[4].re == doctest::Approx(1.0));

  double r = 0.75;
  MomentSequence<double> tm = moments_from_chain<double>(
      {0.0, 0.0, 0.0, 0.0}, {0.0, r * r, 4 * r * r, 9 * r * r}, 6);
  CHECK(tm.mu[6].re == doctest::Approx(-61.0 * std::pow(r, 6)).epsilon(1e-12));
}

TEST_CASE("nonzero diagonal produces imaginary odd moments, not a violation") {
  MomentSequence<Rational> mu = moments_from_chain<Rational>({q(2), q(-1)}, {q(0), q(1)}, 3);
  CHECK(mu.mu[1].im == q(2));
  CHECK(mu.mu[1].re == q(0));
  CHECK(mu.mu[3].im == q(-11));  // (T^3)_00 for T = [[2,1],[1,-1]], times i^3
  CHECK(!mu.convention_violation);
  RecoveredChain<Rational> rec = lanczos_from_moments(mu, 1);
  CHECK(rec.a[0] == q(2));
  CHECK(rec.b2[1] == q(1));
}

TEST_CASE("property: chain -> moments -> chain is the identity, exactly") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<long> a_num(-3, 3), b_num(1, 5), den(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    int levels = 2 + static_cast<int>(rng() % 4);
    std::vector<Rational> a, b2{q(0)};
    for (int n = 0; n < levels; ++n) a.push_back(q(a_num(rng), den(rng)));
    for (int n = 1; n <= levels; ++n) b2.push_back(q(b_num(rng), den(rng)));

    MomentSequence<Rational> mu = moments_from_chain<Rational>(a, b2, 2 * levels);
    RecoveredChain<Rational> rec = lanczos_from_moments(mu, levels - 1);
    for (int n = 0; n < levels - 1; ++n) CHECK(rec.a[n] == a[n]);
    for (int n = 1; n <= levels - 1; ++n) CHECK(rec.b2[n] == b2[n]);
    // asking for one more level exhausts the finite chain
    CHECK_THROWS_WITH_AS(lanczos_from_moments(mu, levels).count(),
                         doctest::Contains("exhausted"), Error);
  }
}

TEST_CASE("parity: even survival amplitudes yield zero odd moments and zero a") {
  for (StateFamily fam : {StateFamily::make_coherent(q(2)), StateFamily::make_squeezed(q(1)),
                          StateFamily::make_two_mode(q(1, 2))}) {
    MomentSequence<Rational> mu = moments_from_jet(survival_jet<Rational>(fam, 12));
    for (int n = 1; n <= 12; n += 2) CHECK(mu.mu[n].re == q(0));
    RecoveredChain<Rational> rec = lanczos_from_moments(mu, 6);
    for (const Rational& a : rec.a) CHECK(a == q(0));
  }
}

TEST_CASE("contributing path counts reproduce the Catalan numbers") {
  CHECK(contributing_path_count(8, 16) == 14);
  const std::uint64_t catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (int k = 1; k <= 6; ++k) CHECK(contributing_path_count(2 * k, 16) == catalan[k]);
  // odd orders cannot return to the origin
  CHECK(contributing_path_count(7, 16) == 0);
  // a two-site chain saturates instead of growing
  CHECK(contributing_path_count(8, 2) == 1);
}

TEST_CASE("float-mode recovery raises a precision error once cancellation bites") {
  // a nearly exhausted Krylov space: b_2^2 = 2^-100 survives one subtraction
  // only with more than 100 mantissa bits to spare
  Rational tiny = Rational(1) / Rational(boost::multiprecision::pow(BigInt(2), 100));
  std::vector<Rational> a = {q(0), q(0), q(0)};
  std::vector<Rational> b2 = {q(0), q(1), tiny};
  MomentSequence<Rational> exact_mu = moments_from_chain<Rational>(a, b2, 4);

  MomentSequence<Tracked<128>> lossy;
  lossy.mu.resize(exact_mu.mu.size());
  for (std::size_t n = 0; n < exact_mu.mu.size(); ++n) {
    lossy.mu[n].re = Tracked<128>(exact_mu.mu[n].re);
    lossy.mu[n].im = Tracked<128>(exact_mu.mu[n].im);
  }
  CHECK_THROWS_WITH_AS(lanczos_from_moments(lossy, 2).count(),
                       doctest::Contains("exact precision"), Error);

  // exact mode recovers the same chain without complaint
  RecoveredChain<Rational> rec = lanczos_from_moments(exact_mu, 2);
  CHECK(rec.b2[1] == q(1));
  CHECK(rec.b2[2] == tiny);
}
