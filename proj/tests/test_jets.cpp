#include <doctest.h>

#include <random>

#include "kgx/jets.hpp"

using namespace kgx;

namespace {

Rational q(long num, long den = 1) { return Rational(num) / Rational(den); }

// Independent oracle for 1/f: plain power-series long division.
template <class F>
Jet<F> long_division_reciprocal(const Jet<F>& f) {
  Jet<F> r(f.order());
  Jet<F> remainder = Jet<F>::constant(F(1), f.order());
  for (int k = 0; k <= f.order(); ++k) {
    F c = remainder[k] / f[0];
    r.at(k) = c;
    for (int j = k; j <= f.order(); ++j) remainder.at(j) -= c * f[j - k];
  }
  return r;
}

}  // namespace

TEST_CASE("exp of t matches the exponential series") {
  Jet<Rational> t = Jet<Rational>::variable(Rational(1), 4);
  Jet<Rational> e = t.exp();
  CHECK(e[0] == q(1));
  CHECK(e[1] == q(1));
  CHECK(e[2] == q(1, 2));
  CHECK(e[3] == q(1, 6));
  CHECK(e[4] == q(1, 24));
}

TEST_CASE("reciprocal of cosh t: sech series against long division") {
  Jet<Rational> ch = Jet<Rational>::variable(Rational(1), 6).cosh();
  Jet<Rational> sech = ch.reciprocal();
  CHECK(sech[0] == q(1));
  CHECK(sech[2] == q(-1, 2));
  CHECK(sech[4] == q(5, 24));
  CHECK(sech[6] == q(-61, 720));

  Jet<Rational> oracle = long_division_reciprocal(ch);
  for (int k = 0; k <= 6; ++k) CHECK(sech[k] == oracle[k]);
}

TEST_CASE("sqrt of a perfect square") {
  Jet<Rational> f(6);
  f.at(0) = q(1);
  f.at(1) = q(2);
  f.at(2) = q(1);
  Jet<Rational> s = f.sqrt();
  CHECK(s[0] == q(1));
  CHECK(s[1] == q(1));
  for (int k = 2; k <= 6; ++k) CHECK(s[k] == q(0));
}

TEST_CASE("reciprocal and sqrt reject zero constant terms") {
  Jet<Rational> t = Jet<Rational>::variable(Rational(1), 4);
  CHECK_THROWS_AS(t.reciprocal(), Error);
  CHECK_THROWS_AS(t.sqrt(), Error);
}

TEST_CASE("exact mode rejects transcendentals away from the origin") {
  Jet<Rational> f = Jet<Rational>::constant(Rational(1), 4);
  CHECK_THROWS_AS(f.exp(), Error);
  CHECK_THROWS_AS(f.cosh(), Error);
}

TEST_CASE("float mode computes sqrt of non-square constants") {
  Jet<Tracked<128>> f = Jet<Tracked<128>>::constant(Tracked<128>(2), 3);
  Jet<Tracked<128>> s = f.sqrt();
  CHECK(ScalarTraits<Tracked<128>>::to_double(s[0]) ==
        doctest::Approx(1.4142135623730951).epsilon(1e-15));
}

TEST_CASE("tanh agrees with sinh * sech") {
  Jet<Rational> x = Jet<Rational>::variable(q(3, 2), 9);
  Jet<Rational> th = x.tanh();
  auto [ch, sh] = x.cosh_sinh();
  Jet<Rational> alt = sh * ch.reciprocal();
  for (int k = 0; k <= 9; ++k) CHECK(th[k] == alt[k]);
  // odd function
  for (int k = 0; k <= 9; k += 2) CHECK(th[k] == q(0));
}

TEST_CASE("composition with a polynomial substitutes exactly") {
  // exp(t)|_{t -> 2u + u^2} vs building the series directly
  Jet<Rational> e = Jet<Rational>::variable(Rational(1), 8).exp();
  Jet<Rational> inner(8);
  inner.at(1) = q(2);
  inner.at(2) = q(1);
  Jet<Rational> composed = e.compose_poly(inner);
  Jet<Rational> direct = inner.exp();
  for (int k = 0; k <= 8; ++k) CHECK(composed[k] == direct[k]);

  Jet<Rational> bad = Jet<Rational>::constant(q(1), 8);
  CHECK_THROWS_AS(e.compose_poly(bad), Error);
}

TEST_CASE("property: f * reciprocal(f) = 1 for random rational series") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
  for (int trial = 0; trial < 25; ++trial) {
    Jet<Rational> f(10);
    f.at(0) = q(1 + (trial % 3));  // keep the constant term nonzero
    for (int k = 1; k <= 10; ++k) f.at(k) = q(num(rng), den(rng));
    Jet<Rational> prod = f * f.reciprocal();
    CHECK(prod[0] == q(1));
    for (int k = 1; k <= 10; ++k) CHECK(prod[k] == q(0));
  }
}

TEST_CASE("property: sqrt(f)^2 = f and exp(g) exp(-g) = 1") {
  std::mt19937 rng(8675309);
  std::uniform_int_distribution<long> num(-4, 4), den(1, 4);
  for (int trial = 0; trial < 25; ++trial) {
    Jet<Rational> f(8);
    f.at(0) = q(1);
    for (int k = 1; k <= 8; ++k) f.at(k) = q(num(rng), den(rng));
    Jet<Rational> s = f.sqrt();
    Jet<Rational> back = s * s;
    for (int k = 0; k <= 8; ++k) CHECK(back[k] == f[k]);

    Jet<Rational> g = f;
    g.at(0) = q(0);
    Jet<Rational> unit = g.exp() * (-g).exp();
    CHECK(unit[0] == q(1));
    for (int k = 1; k <= 8; ++k) CHECK(unit[k] == q(0));
  }
}

TEST_CASE("cancellation tracking flags lost mantissa") {
  using F = Tracked<128>;
  F one(1);
  F tiny(boost::multiprecision::ldexp(BinFloat<128>(1), -100));
  F sum = one + tiny;
  CHECK(!sum.degraded);
  F diff = sum - one;  // cancels ~100 of 128 bits
  CHECK(diff.degraded);
  F clean = F(3) - F(1);
  CHECK(!clean.degraded);
  // the flag is sticky through arithmetic
  CHECK((diff * F(2)).degraded);
  CHECK((clean + diff).degraded);
}
