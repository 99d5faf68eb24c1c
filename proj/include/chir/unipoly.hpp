#pragma once

// Univariate polynomials with coefficients in an arbitrary commutative ring
// (Rat, double, or Cplx<..> of either). Coefficients ascend by degree; the
// zero polynomial is the empty coefficient list.

#include "chir/scalars.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace chir {

template <class R>
struct UniPoly {
  std::vector<R> c;  // c[k] multiplies x^k

  UniPoly() = default;
  UniPoly(int v) {  // NOLINT: constant polynomial, lets UniPoly act as a ring scalar
    if (v != 0) c = {R(v)};
  }
  explicit UniPoly(std::vector<R> coeffs) : c(std::move(coeffs)) { trim(); }
  static UniPoly constant(R v) {
    UniPoly p;
    if (!is_zero(v)) p.c = {std::move(v)};
    return p;
  }
  static UniPoly x_power(std::size_t k, R scale = R(1)) {
    UniPoly p;
    p.c.assign(k + 1, R(0));
    p.c[k] = std::move(scale);
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  bool zero() const { return c.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const R& leading() const {
    if (c.empty()) throw std::domain_error("UniPoly: zero polynomial has no leading coefficient");
    return c.back();
  }
  R coeff(std::size_t k) const { return k < c.size() ? c[k] : R(0); }

  R eval(const R& x) const {
    R acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    UniPoly d;
    for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * R(static_cast<int>(k)));
    d.trim();
    return d;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), R(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), R(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] -= b.c[k];
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.zero() || b.zero()) return {};
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (is_zero(a.c[i])) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const R& s) {
    UniPoly r = a;
    for (auto& v : r.c) v = v * s;
    r.trim();
    return r;
  }
  UniPoly& operator+=(const UniPoly& b) { *this = *this + b; return *this; }
  UniPoly& operator-=(const UniPoly& b) { *this = *this - b; return *this; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }
};

// k'th derivative
template <class R>
UniPoly<R> derivative_k(UniPoly<R> p, int k) {
  for (int i = 0; i < k; ++i) p = p.derivative();
  return p;
}

// Exact interpolation through (xs[i], ys[i]) via Newton divided differences.
// Requires a field (Rat or double); xs distinct.
template <class R>
UniPoly<R> interpolate(const std::vector<R>& xs, const std::vector<R>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("interpolate: point count mismatch");
  const std::size_t n = xs.size();
  std::vector<R> dd = ys;  // divided differences, computed in place
  for (std::size_t lvl = 1; lvl < n; ++lvl)
    for (std::size_t i = n - 1; i >= lvl; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
  // Horner expansion of the Newton form
  UniPoly<R> acc = UniPoly<R>::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    UniPoly<R> lin(std::vector<R>{-xs[i], R(1)});
    acc = acc * lin + UniPoly<R>::constant(dd[i]);
  }
  return acc;
}

inline UniPoly<double> to_double_poly(const UniPoly<Rat>& p) {
  UniPoly<double> q;
  q.c.reserve(p.c.size());
  for (const auto& v : p.c) q.c.push_back(to_double(v));
  q.trim();
  return q;
}

inline UniPoly<Rat> lift_poly(const UniPoly<double>& p) {
  UniPoly<Rat> q;
  q.c.reserve(p.c.size());
  for (double v : p.c) q.c.push_back(rat_from_double(v));
  q.trim();
  return q;
}

template <class R>
UniPoly<Rat> real_part_exact(const UniPoly<Cplx<R>>& p, bool require_real = true);

// Extracts a real-coefficient polynomial from a complex one; throws if any
// imaginary part is nonzero (exact test).
template <>
inline UniPoly<Rat> real_part_exact(const UniPoly<CRat>& p, bool require_real) {
  UniPoly<Rat> q;
  for (const auto& z : p.c) {
    if (require_real && z.im != 0)
      throw std::domain_error("real_part_exact: nonzero imaginary coefficient");
    q.c.push_back(z.re);
  }
  q.trim();
  return q;
}

}  // namespace chir
