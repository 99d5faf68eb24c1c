#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals, Gaussian rationals
// (complex numbers with rational real/imaginary parts), conversions to and
// from IEEE doubles, and string parsing/formatting for the JSON formats.
//
// Every double is a dyadic rational, so the float->exact lift is exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace chir {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
inline double rat_abs(double x) { return std::fabs(x); }

inline int sign_of(const Rat& x) { return x.sign(); }
inline int sign_of(const Int& x) { return x.sign(); }

// Exact lift of a finite double.
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rat r(mant);
  if (exp >= 0) {
    r *= Rat(Int(1) << exp);
  } else {
    r /= Rat(Int(1) << -exp);
  }
  return r;
}

// Decimal integer from string. cpp_int's own parser treats a leading zero
// as octal, so digits are validated and leading zeros stripped here.
inline Int int_from_decimal(std::string s) {
  if (s.empty()) throw std::invalid_argument("int_from_decimal: empty string");
  bool neg = s[0] == '-';
  if (s[0] == '+' || s[0] == '-') s = s.substr(1);
  if (s.empty()) throw std::invalid_argument("int_from_decimal: sign only");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("int_from_decimal: bad digit in '" + s + "'");
  std::size_t nz = s.find_first_not_of('0');
  s = (nz == std::string::npos) ? "0" : s.substr(nz);
  Int v(s);
  return neg ? Int(-v) : v;
}

// Parses "p", "p/q", or a plain decimal like "-1.25". No exponent forms.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num = int_from_decimal(s.substr(0, slash));
    Int den = int_from_decimal(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(int_from_decimal(s));
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
  if (head.empty()) head = "0";
  if (tail.empty()) tail = "0";
  Int num = int_from_decimal(head + tail);
  Int den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  Rat r(num, den);
  return neg ? Rat(-r) : r;
}

inline std::string format_rational(const Rat& x) {
  std::string n = numerator(x).str();
  if (denominator(x) == 1) return n;
  return n + "/" + denominator(x).str();
}

// Complex number over an arbitrary real scalar R (Rat or double).
template <class R>
struct Cplx {
  R re{};
  R im{};

  Cplx() = default;
  Cplx(R r) : re(std::move(r)) {}          // NOLINT: implicit real->complex
  Cplx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    R d = b.re * b.re + b.im * b.im;
    if (is_zero_scalar(d)) throw std::domain_error("Cplx: division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cplx& operator+=(const Cplx& b) { re += b.re; im += b.im; return *this; }
  Cplx& operator-=(const Cplx& b) { re -= b.re; im -= b.im; return *this; }
  Cplx& operator*=(const Cplx& b) { *this = *this * b; return *this; }
  friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }

  static bool is_zero_scalar(const R& x) { return x == R(0); }
};

template <class R>
inline Cplx<R> conj(const Cplx<R>& z) { return {z.re, -z.im}; }

template <class R>
inline R norm1(const Cplx<R>& z) { return rat_abs(z.re) + rat_abs(z.im); }

template <class R>
inline bool is_zero(const Cplx<R>& z) { return z.re == R(0) && z.im == R(0); }
inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(double x) { return x == 0.0; }

using CRat = Cplx<Rat>;
using CDbl = Cplx<double>;

inline CDbl to_cdbl(const CRat& z) { return {to_double(z.re), to_double(z.im)}; }
inline CRat lift(const CDbl& z) { return {rat_from_double(z.re), rat_from_double(z.im)}; }

// Integer power with rational result for rational base (handles negative k).
inline Rat rat_pow(const Rat& base, long k) {
  if (k < 0) {
    if (base == 0) throw std::domain_error("rat_pow: 0^negative");
    return Rat(1) / rat_pow(base, -k);
  }
  Rat acc(1), b = base;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

}  // namespace chir
