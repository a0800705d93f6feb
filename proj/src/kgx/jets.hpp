#pragma once

#include <utility>
#include <vector>

#include "kgx/errors.hpp"
#include "kgx/scalars.hpp"

namespace kgx {

// Truncated power series around t = 0 with coefficients in F. All operations
// are exact through the shared order: no term of higher order ever feeds back
// into a retained coefficient.
//
// The transcendental maps use the first-order recurrences for series
// satisfying f' = g'·h, so they need no scalar transcendentals beyond the
// value at the constant term. In exact (rational) mode the constant term must
// therefore be 0 for exp/cosh/sinh/tanh and a perfect square for sqrt.
template <class F>
class Jet {
 public:
  using Traits = ScalarTraits<F>;

  explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, F(0)) {
    if (order < 0) throw_validation("jet order must be non-negative");
  }

  static Jet constant(const F& value, int order) {
    Jet j(order);
    j.c_[0] = value;
    return j;
  }

  // scale * t
  static Jet variable(const F& scale, int order) {
    Jet j(order);
    if (order >= 1) j.c_[1] = scale;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const F& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  F& at(int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<F>& coefficients() const { return c_; }

  Jet operator+(const Jet& o) const {
    check_order(o);
    Jet r(order());
    for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
  }

  Jet operator-(const Jet& o) const {
    check_order(o);
    Jet r(order());
    for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
  }

  Jet operator-() const {
    Jet r(order());
    for (int k = 0; k <= order(); ++k) r.c_[k] = -c_[k];
    return r;
  }

  Jet operator*(const Jet& o) const {
    check_order(o);
    Jet r(order());
    for (int n = 0; n <= order(); ++n) {
      F acc(0);
      for (int k = 0; k <= n; ++k) acc += c_[k] * o.c_[n - k];
      r.c_[n] = acc;
    }
    return r;
  }

  Jet scaled(const F& s) const {
    Jet r(order());
    for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] * s;
    return r;
  }

  Jet reciprocal() const {
    if (Traits::is_zero(c_[0]))
      throw_numeric("series reciprocal: zero constant term");
    Jet r(order());
    F inv0 = F(1) / c_[0];
    r.c_[0] = inv0;
    for (int n = 1; n <= order(); ++n) {
      F acc(0);
      for (int k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
      r.c_[n] = -inv0 * acc;
    }
    return r;
  }

  Jet sqrt() const {
    if (Traits::is_zero(c_[0]))
      throw_numeric("series sqrt: zero constant term");
    if (!Traits::is_exact && c_[0] < F(0))
      throw_numeric("series sqrt: negative constant term");
    Jet r(order());
    F s0 = Traits::sqrt(c_[0]);
    r.c_[0] = s0;
    F two_s0 = F(2) * s0;
    for (int n = 1; n <= order(); ++n) {
      F acc = c_[n];
      for (int k = 1; k <= n - 1; ++k) acc -= r.c_[k] * r.c_[n - k];
      r.c_[n] = acc / two_s0;
    }
    return r;
  }

  Jet exp() const {
    Jet r(order());
    r.c_[0] = constant_image("exp");
    for (int n = 1; n <= order(); ++n) {
      F acc(0);
      for (int k = 1; k <= n; ++k) acc += Traits::from_long(k) * c_[k] * r.c_[n - k];
      r.c_[n] = acc / Traits::from_long(n);
    }
    return r;
  }

  std::pair<Jet, Jet> cosh_sinh() const {
    Jet ch(order()), sh(order());
    ch.c_[0] = constant_image("cosh/sinh");  // enforces c0 == 0 in exact mode
    sh.c_[0] = F(0);
    for (int n = 1; n <= order(); ++n) {
      F acc_c(0), acc_s(0);
      for (int k = 1; k <= n; ++k) {
        F kg = Traits::from_long(k) * c_[k];
        acc_c += kg * sh.c_[n - k];
        acc_s += kg * ch.c_[n - k];
      }
      ch.c_[n] = acc_c / Traits::from_long(n);
      sh.c_[n] = acc_s / Traits::from_long(n);
    }
    return {ch, sh};
  }

  Jet cosh() const { return cosh_sinh().first; }
  Jet sinh() const { return cosh_sinh().second; }

  Jet tanh() const {
    auto [ch, sh] = cosh_sinh();
    return sh * ch.reciprocal();
  }

  // Substitutes `inner` (which must have zero constant term) for t.
  Jet compose_poly(const Jet& inner) const {
    check_order(inner);
    if (!Traits::is_zero(inner.c_[0]))
      throw_validation("series composition: inner constant term must vanish");
    Jet r = Jet::constant(c_[order()], order());
    for (int k = order() - 1; k >= 0; --k) {
      r = r * inner;
      r.c_[0] += c_[k];
    }
    return r;
  }

  bool degraded() const {
    for (const F& x : c_)
      if (Traits::degraded(x)) return true;
    return false;
  }

 private:
  void check_order(const Jet& o) const {
    if (o.order() != order()) throw_validation("jet order mismatch");
  }

  // Image of the constant term under exp-like maps; only 0 is admissible in
  // exact mode (exp(0) = 1 keeps coefficients rational).
  F constant_image(const char* op) const {
    if (!Traits::is_zero(c_[0])) {
      if (Traits::is_exact)
        throw_numeric(std::string("series ") + op +
                      ": nonzero constant term is not exact-representable");
      throw_validation(std::string("series ") + op +
                       ": nonzero constant term unsupported; shift the expansion point");
    }
    return F(1);
  }

  std::vector<F> c_;
};

}  // namespace kgx
