#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <optional>
#include <string>

#include "kgx/errors.hpp"

namespace kgx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <unsigned Bits>
using BinFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

// Exact square root of a rational, when one exists.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return Rational(0);
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt rn = boost::multiprecision::sqrt(num);
  BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

// High-precision binary float carrying a sticky flag that is raised when a
// subtraction cancels more than half of the mantissa. The flag propagates
// through every arithmetic operation, so a degraded end result can be
// detected and reported instead of silently returned.
template <unsigned Bits>
struct Tracked {
  using Base = BinFloat<Bits>;

  Base v{};
  bool degraded = false;

  Tracked() = default;
  Tracked(const Base& x) : v(x) {}                      // NOLINT: implicit by design
  Tracked(long n) : v(n) {}                             // NOLINT
  Tracked(int n) : v(n) {}                              // NOLINT
  Tracked(double x) : v(x) {}                           // NOLINT
  explicit Tracked(const Rational& q) : v(Base(q)) {}

  static Base half_mantissa_eps() {
    static const Base eps = boost::multiprecision::ldexp(Base(1), -int(Bits) / 2);
    return eps;
  }

  friend Tracked operator-(const Tracked& a) { return Tracked{-a.v, a.degraded}; }

  friend Tracked operator+(const Tracked& a, const Tracked& b) {
    Tracked r{a.v + b.v, a.degraded || b.degraded};
    r.check_cancellation(a.v, b.v);
    return r;
  }
  friend Tracked operator-(const Tracked& a, const Tracked& b) {
    Tracked r{a.v - b.v, a.degraded || b.degraded};
    r.check_cancellation(a.v, b.v);
    return r;
  }
  friend Tracked operator*(const Tracked& a, const Tracked& b) {
    return Tracked{a.v * b.v, a.degraded || b.degraded};
  }
  friend Tracked operator/(const Tracked& a, const Tracked& b) {
    return Tracked{a.v / b.v, a.degraded || b.degraded};
  }

  Tracked& operator+=(const Tracked& o) { return *this = *this + o; }
  Tracked& operator-=(const Tracked& o) { return *this = *this - o; }
  Tracked& operator*=(const Tracked& o) { return *this = *this * o; }
  Tracked& operator/=(const Tracked& o) { return *this = *this / o; }

  friend bool operator==(const Tracked& a, const Tracked& b) { return a.v == b.v; }
  friend bool operator!=(const Tracked& a, const Tracked& b) { return a.v != b.v; }
  friend bool operator<(const Tracked& a, const Tracked& b) { return a.v < b.v; }
  friend bool operator>(const Tracked& a, const Tracked& b) { return a.v > b.v; }
  friend bool operator<=(const Tracked& a, const Tracked& b) { return a.v <= b.v; }
  friend bool operator>=(const Tracked& a, const Tracked& b) { return a.v >= b.v; }

 private:
  Tracked(const Base& x, bool d) : v(x), degraded(d) {}

  void check_cancellation(const Base& a, const Base& b) {
    using boost::multiprecision::abs;
    if (v == 0) return;  // exact cancellation, nothing was lost
    Base scale = abs(a) > abs(b) ? abs(a) : abs(b);
    if (scale > 0 && abs(v) < scale * half_mantissa_eps()) degraded = true;
  }
};

template <unsigned Bits>
Tracked<Bits> sqrt(const Tracked<Bits>& x) {
  if (x.v < 0) throw_numeric("square root of negative value");
  Tracked<Bits> r(boost::multiprecision::sqrt(x.v));
  r.degraded = x.degraded;
  return r;
}

// Uniform scalar interface used by the series (jet) arithmetic. `is_exact`
// selects between the rational rules (exact square roots, exp(0) only) and
// the floating rules.
template <class F>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static Rational from_long(long n) { return Rational(n); }
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& q) { return q.template convert_to<double>(); }
  static bool is_zero(const Rational& q) { return q == 0; }
  static bool degraded(const Rational&) { return false; }
  static Rational sqrt(const Rational& q) {
    auto r = exact_sqrt(q);
    if (!r) throw_numeric("square root is not rational; use a float precision mode");
    return *r;
  }
};

template <unsigned Bits>
struct ScalarTraits<Tracked<Bits>> {
  static constexpr bool is_exact = false;
  static Tracked<Bits> from_long(long n) { return Tracked<Bits>(n); }
  static Tracked<Bits> from_rational(const Rational& q) { return Tracked<Bits>(q); }
  static double to_double(const Tracked<Bits>& x) { return x.v.template convert_to<double>(); }
  static bool is_zero(const Tracked<Bits>& x) { return x.v == 0; }
  static bool degraded(const Tracked<Bits>& x) { return x.degraded; }
  static Tracked<Bits> sqrt(const Tracked<Bits>& x) { return kgx::sqrt(x); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static double from_long(long n) { return double(n); }
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static bool degraded(double) { return false; }
  static double sqrt(double x) {
    if (x < 0) throw_numeric("square root of negative value");
    return std::sqrt(x);
  }
};

// Parses a decimal literal ("-1.25e-3") or a fraction ("87568/256") into an
// exact rational. Decimal strings are always exactly representable.
Rational rational_from_string(const std::string& text);

}  // namespace kgx
