#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kgx/family.hpp"
#include "kgx/jets.hpp"
#include "kgx/tridiagonal.hpp"

namespace kgx {

template <class F>
struct ComplexPair {
  F re{0};
  F im{0};
};

// Moments mu[n] of the generator in the initial state, mu[n] = d^n S/dt^n at
// t = 0 for the survival amplitude S. For a Hermitian generator the sequence
// obeys the parity convention "even moments real, odd moments imaginary";
// `convention_violation` records the first order where a sequence breaks it
// instead of silently reinterpreting the values.
template <class F>
struct MomentSequence {
  std::vector<ComplexPair<F>> mu;  // mu[0] = 1 for a normalized initial state
  std::optional<int> convention_violation;

  int max_order() const { return static_cast<int>(mu.size()) - 1; }
};

// Output of the moment -> Lanczos-coefficient transform. b2 stays in the
// scalar field (rational in exact mode); b is its square root in double.
template <class F>
struct RecoveredChain {
  std::vector<F> a;   // a[0..count-1]
  std::vector<F> b2;  // b2[0] = 0, b2[1..count]
  std::vector<double> b;

  int count() const { return static_cast<int>(a.size()); }

  // Chain usable for propagation: length `count`, dropping the extra b[count].
  TridiagonalData chain() const {
    TridiagonalData t;
    t.a.reserve(a.size());
    t.b.assign(b.begin(), b.begin() + static_cast<long>(a.size()));
    for (const F& x : a) t.a.push_back(ScalarTraits<F>::to_double(x));
    return t;
  }
};

// ---------------------------------------------------------------------------
// Survival-amplitude series per family, expanded around t = 0 (around the
// entangling parameter for the thermofield-double family).
//
//   coherent            exp(-alpha^2 t^2 / 2)
//   squeezed            cosh(eta t)^(-1/2)
//   displaced_squeezed  cosh(eta t)^(-1/2) exp(-alpha^2 t^2 (1 - tanh(eta t)) / 2)
//   two_mode            1 / cosh(r t)
//   tfd                 e^(-s a/2) sqrt(2 sqrt(k) / (1 + k e^(-2 s a))),
//                       k = lambda/lambda_ref, s the mode sign
// ---------------------------------------------------------------------------
template <class F>
Jet<F> survival_jet(const StateFamily& family, int order) {
  using T = ScalarTraits<F>;
  if (order < 2) throw_validation("survival series order must be at least 2");

  switch (family.tag) {
    case StateFamily::Tag::coherent: {
      F a = T::from_rational(family.alpha);
      Jet<F> t = Jet<F>::variable(F(1), order);
      return (t * t).scaled(-a * a / F(2)).exp();
    }
    case StateFamily::Tag::squeezed: {
      F e = T::from_rational(family.eta);
      return Jet<F>::variable(e, order).cosh().sqrt().reciprocal();
    }
    case StateFamily::Tag::displaced_squeezed: {
      F a = T::from_rational(family.alpha);
      F e = T::from_rational(family.eta);
      Jet<F> et = Jet<F>::variable(e, order);
      Jet<F> t = Jet<F>::variable(F(1), order);
      Jet<F> t2 = (t * t).scaled(a * a / F(2));
      Jet<F> expo = t2 * et.tanh() - t2;
      return et.cosh().sqrt().reciprocal() * expo.exp();
    }
    case StateFamily::Tag::two_mode: {
      F r = T::from_rational(family.r);
      return Jet<F>::variable(r, order).cosh().reciprocal();
    }
    case StateFamily::Tag::tfd: {
      F k = T::from_rational(family.lambda / family.lambda_ref);
      F s = T::from_long(family.tfd_sign >= 0 ? 1 : -1);
      Jet<F> half = Jet<F>::variable(-s / F(2), order).exp();       // e^(-s a / 2)
      Jet<F> decay = Jet<F>::variable(F(-2) * s, order).exp();      // e^(-2 s a)
      Jet<F> denom = Jet<F>::constant(F(1), order) + decay.scaled(k);
      F two_sqrt_k = F(2) * T::sqrt(k);
      return half * denom.reciprocal().scaled(two_sqrt_k).sqrt();
    }
    default:
      throw_validation(std::string("no survival amplitude for family ") + family.name());
  }
}

// mu[n] = n! * c[n]
template <class F>
MomentSequence<F> moments_from_jet(const Jet<F>& jet) {
  using T = ScalarTraits<F>;
  MomentSequence<F> m;
  m.mu.resize(static_cast<std::size_t>(jet.order()) + 1);
  F fact(1);
  for (int n = 0; n <= jet.order(); ++n) {
    if (n > 0) fact *= T::from_long(n);
    m.mu[n].re = fact * jet[n];
    m.mu[n].im = F(0);
    if (!m.convention_violation && n % 2 == 1 && !T::is_zero(m.mu[n].re))
      m.convention_violation = n;
  }
  return m;
}

namespace detail {

// Real moment m[k] = (-i)^k mu[k]; the discarded component must vanish.
template <class F>
F real_moment(const MomentSequence<F>& mu, int k) {
  using T = ScalarTraits<F>;
  const ComplexPair<F>& z = mu.mu[static_cast<std::size_t>(k)];
  F keep, drop;
  switch (k % 4) {
    case 0: keep = z.re; drop = z.im; break;
    case 1: keep = z.im; drop = z.re; break;
    case 2: keep = -z.re; drop = z.im; break;
    default: keep = -z.im; drop = z.re; break;
  }
  bool bad;
  if (T::is_exact) {
    bad = !T::is_zero(drop);
  } else {
    F scale = keep < F(0) ? -keep : keep;
    F mag = drop < F(0) ? -drop : drop;
    bad = ScalarTraits<F>::to_double(mag) >
          1e-12 * std::max(1.0, ScalarTraits<F>::to_double(scale));
  }
  if (bad)
    throw_numeric("moment " + std::to_string(k) +
                  " violates the Hermitian parity convention; the recovered "
                  "a coefficients would be complex");
  return keep;
}

}  // namespace detail

// Recovers Lanczos coefficients a[0..count-1], b[1..count] from the moments
// via an LDL^T factorization of the Hankel matrix of the real moments
// m[k] = (-i)^k mu[k]. Operating on b^2 = d[j]/d[j-1] keeps everything in the
// scalar field; a[j] = L[j+1][j] - L[j][j-1] needs no square roots at all.
template <class F>
RecoveredChain<F> lanczos_from_moments(const MomentSequence<F>& mu, int count) {
  using T = ScalarTraits<F>;
  if (count < 1) throw_validation("coefficient count must be at least 1");
  if (2 * count > mu.max_order())
    throw_validation("need moments through order " + std::to_string(2 * count) +
                     " to recover " + std::to_string(count) + " levels");
  if (T::is_exact ? !(mu.mu[0].re == F(1) && T::is_zero(mu.mu[0].im))
                  : std::abs(T::to_double(mu.mu[0].re) - 1.0) > 1e-12)
    throw_numeric("mu[0] != 1: survival amplitude is not normalized");

  const int n = count + 1;  // Hankel dimension
  std::vector<F> m(static_cast<std::size_t>(2 * count) + 1);
  for (int k = 0; k <= 2 * count; ++k) m[k] = detail::real_moment(mu, k);

  // Row-by-row LDL^T of H[i][j] = m[i+j]. L has unit diagonal.
  std::vector<std::vector<F>> L(n, std::vector<F>(n, F(0)));
  std::vector<F> d(n, F(0));
  for (int i = 0; i < n; ++i) {
    L[i][i] = F(1);
    for (int j = 0; j < i; ++j) {
      F acc = m[i + j];
      for (int k = 0; k < j; ++k) acc -= L[i][k] * L[j][k] * d[k];
      L[i][j] = acc / d[j];
    }
    F acc = m[2 * i];
    for (int k = 0; k < i; ++k) acc -= L[i][k] * L[i][k] * d[k];
    d[i] = acc;
    if (!T::is_exact && T::degraded(d[i]))
      throw_numeric("moment matrix minor " + std::to_string(i) +
                    " lost more than half the mantissa to cancellation; "
                    "rerun in exact precision mode");
    if (i > 0 && !(d[i] > F(0))) {
      if (T::is_zero(d[i]))
        throw_numeric("moment matrix minor " + std::to_string(i) +
                      " vanished: Krylov space exhausted at depth " + std::to_string(i));
      throw_numeric("moment matrix minor " + std::to_string(i) +
                    " is negative: inconsistent survival amplitude");
    }
  }

  RecoveredChain<F> out;
  out.a.resize(static_cast<std::size_t>(count));
  out.b2.resize(static_cast<std::size_t>(count) + 1, F(0));
  out.b.resize(static_cast<std::size_t>(count) + 1, 0.0);
  for (int j = 0; j < count; ++j)
    out.a[j] = j == 0 ? L[1][0] : L[j + 1][j] - L[j][j - 1];
  for (int j = 1; j <= count; ++j) {
    out.b2[j] = d[j] / d[j - 1];
    out.b[j] = std::sqrt(T::to_double(out.b2[j]));
  }
  return out;
}

// Inverse direction: mu[n] = i^n (T^n)[0][0] for the tridiagonal matrix built
// from (a, b). The walk recursion is carried in variables normalized by the
// running product of b's, so only b^2 enters and rational inputs stay
// rational.
template <class F>
MomentSequence<F> moments_from_chain(const std::vector<F>& a, const std::vector<F>& b2,
                                     int n_max) {
  using T = ScalarTraits<F>;
  if (a.empty()) throw_validation("empty coefficient chain");
  const int levels = static_cast<int>(a.size());

  std::vector<F> x(static_cast<std::size_t>(levels), F(0)), next(x);
  x[0] = F(1);
  MomentSequence<F> out;
  out.mu.resize(static_cast<std::size_t>(n_max) + 1);
  out.mu[0] = {F(1), F(0)};
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 0; k < levels; ++k) {
      F acc = a[static_cast<std::size_t>(k)] * x[k];
      if (k > 0) acc += x[k - 1];
      if (k + 1 < levels && k + 1 < static_cast<int>(b2.size()))
        acc += b2[static_cast<std::size_t>(k) + 1] * x[k + 1];
      next[k] = acc;
    }
    std::swap(x, next);
    switch (n % 4) {  // i^n
      case 0: out.mu[n] = {x[0], F(0)}; break;
      case 1: out.mu[n] = {F(0), x[0]}; break;
      case 2: out.mu[n] = {-x[0], F(0)}; break;
      default: out.mu[n] = {F(0), -x[0]}; break;
    }
    if (!out.convention_violation && n % 2 == 1 && !T::is_zero(out.mu[n].im) &&
        !T::is_zero(out.mu[n].re))
      out.convention_violation = n;
  }
  return out;
}

MomentSequence<double> moments_from_lanczos(const TridiagonalData& tri, int n_max);

// Number of weighted walks of length n from chain site 0 back to 0 when all
// a[n] vanish; equals the Catalan number C(n/2) once the chain is long enough.
std::uint64_t contributing_path_count(int n, int chain_length);

}  // namespace kgx
