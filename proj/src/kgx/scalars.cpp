#include "kgx/scalars.hpp"

#include <cctype>

namespace kgx {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw_validation("empty numeric literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
      neg = num[0] == '-';
      num = num.substr(1);
    }
    if (!all_digits(num) || !all_digits(den))
      throw_validation("malformed fraction literal: " + text);
    BigInt n_val(num), d_val(den);
    Rational q(n_val, d_val);
    if (neg) q = Rational(0) - q;
    return q;
  }

  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::string int_part, frac_part;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      ++i;
    }
    std::string edig;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) edig += s[i++];
    if (edig.empty()) throw_validation("malformed exponent in literal: " + text);
    exp10 = std::stol(edig);
    if (eneg) exp10 = -exp10;
  }
  if (i != s.size() || (int_part.empty() && frac_part.empty()))
    throw_validation("malformed numeric literal: " + text);

  BigInt mantissa(int_part.empty() ? "0" : int_part);
  for (char c : frac_part) {
    mantissa *= 10;
    mantissa += c - '0';
  }
  exp10 -= static_cast<long>(frac_part.size());

  Rational q(mantissa);
  if (exp10 > 0) {
    q *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10));
  } else if (exp10 < 0) {
    q /= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-exp10));
  }
  if (neg) q = Rational(0) - q;
  return q;
}

}  // namespace kgx
