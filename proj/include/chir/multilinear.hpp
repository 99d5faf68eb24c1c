#pragma once

// Polynomials multilinear in z_1..z_n, stored as subset-mask -> coefficient
// maps. Coefficients live in a scalar ring (Rat, double, Cplx<..>) or in
// UniPoly<..> for objects like det[Z-A] expanded around Z = xI.
//
// Two products are exposed:
//   mul_strict     - genuine polynomial product; overlapping variable sets
//                    are an error (used where disjointness is structural).
//   mul_truncated  - product in the quotient ring with z_i^2 = 0; terms that
//                    would repeat a variable are dropped.
// The truncated ring is where the master-theorem coefficient extraction
// happens; truncated_power raises an element with unit constant term to an
// arbitrary rational power by exact log/exp series (the nilpotent part dies
// after n steps, so the series is exact, not approximate).

#include "chir/matrix.hpp"
#include "chir/scalars.hpp"
#include "chir/unipoly.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

namespace chir {

inline Rat scale_rat(const Rat& v, const Rat& r) { return v * r; }
inline double scale_rat(double v, const Rat& r) { return v * to_double(r); }
template <class R>
Cplx<R> scale_rat(const Cplx<R>& v, const Rat& r) {
  return {scale_rat(v.re, r), scale_rat(v.im, r)};
}
template <class R>
UniPoly<R> scale_rat(const UniPoly<R>& v, const Rat& r) {
  UniPoly<R> out = v;
  for (auto& c : out.c) c = scale_rat(c, r);
  out.trim();
  return out;
}

inline bool is_zero(const UniPoly<Rat>& p) { return p.zero(); }
inline bool is_zero(const UniPoly<CRat>& p) { return p.zero(); }
inline bool is_zero(const UniPoly<double>& p) { return p.zero(); }
inline bool is_zero(const UniPoly<CDbl>& p) { return p.zero(); }

template <class C>
struct MultilinearPoly {
  int nvars = 0;
  std::map<uint32_t, C> terms;  // subset mask -> coefficient, zeros dropped

  MultilinearPoly() = default;
  explicit MultilinearPoly(int n) : nvars(n) {
    if (n < 0 || n > 31) throw std::invalid_argument("MultilinearPoly: 0 <= nvars <= 31");
  }
  static MultilinearPoly constant(int n, C v) {
    MultilinearPoly p(n);
    p.set(0u, std::move(v));
    return p;
  }
  static MultilinearPoly variable(int n, int i, C scale = C(1)) {
    MultilinearPoly p(n);
    p.set(1u << i, std::move(scale));
    return p;
  }

  C coeff(uint32_t mask) const {
    auto it = terms.find(mask);
    return it == terms.end() ? C(0) : it->second;
  }
  void set(uint32_t mask, C v) {
    if (is_zero(v))
      terms.erase(mask);
    else
      terms[mask] = std::move(v);
  }
  void add_to(uint32_t mask, const C& v) {
    auto it = terms.find(mask);
    if (it == terms.end()) {
      if (!is_zero(v)) terms.emplace(mask, v);
    } else {
      it->second += v;
      if (is_zero(it->second)) terms.erase(it);
    }
  }

  friend MultilinearPoly operator+(const MultilinearPoly& a, const MultilinearPoly& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("MultilinearPoly+: variable mismatch");
    MultilinearPoly r = a;
    for (auto& [m, c] : b.terms) r.add_to(m, c);
    return r;
  }
  friend MultilinearPoly operator-(const MultilinearPoly& a, const MultilinearPoly& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("MultilinearPoly-: variable mismatch");
    MultilinearPoly r = a;
    for (auto& [m, c] : b.terms) r.add_to(m, C(0) - c);
    return r;
  }

  MultilinearPoly scaled(const Rat& r) const {
    MultilinearPoly out(nvars);
    for (auto& [m, c] : terms) out.set(m, scale_rat(c, r));
    return out;
  }

  // d/dz_i: keeps subsets containing i, removes i from the mask.
  MultilinearPoly derivative(int i) const {
    MultilinearPoly out(nvars);
    for (auto& [m, c] : terms)
      if (m >> i & 1u) out.set(m & ~(1u << i), c);
    return out;
  }

  template <class Pt>
  C eval(const std::vector<Pt>& z) const {
    C acc(0);
    for (auto& [m, c] : terms) {
      C t = c;
      for (int i = 0; i < nvars; ++i)
        if (m >> i & 1u) t = t * C(z[i]);
      acc += t;
    }
    return acc;
  }
};

template <class C>
MultilinearPoly<C> mul_truncated(const MultilinearPoly<C>& a, const MultilinearPoly<C>& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("mul_truncated: variable mismatch");
  MultilinearPoly<C> r(a.nvars);
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      if (ma & mb) continue;  // z_i^2 = 0
      r.add_to(ma | mb, ca * cb);
    }
  return r;
}

template <class C>
MultilinearPoly<C> mul_strict(const MultilinearPoly<C>& a, const MultilinearPoly<C>& b) {
  if (a.nvars != b.nvars) throw std::invalid_argument("mul_strict: variable mismatch");
  MultilinearPoly<C> r(a.nvars);
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      if (ma & mb) throw std::logic_error("mul_strict: repeated variable in product");
      r.add_to(ma | mb, ca * cb);
    }
  return r;
}

// The quotient-ring view; same storage, truncating product semantics.
template <class C>
using TruncatedMultilinear = MultilinearPoly<C>;

namespace mldetail {
inline bool unit_constant(const Rat& c) { return c == 1; }
inline bool unit_constant(const CRat& c) { return c.re == 1 && c.im == 0; }
inline bool unit_constant(double c) { return c == 1.0; }
inline bool unit_constant(const CDbl& c) { return c.re == 1.0 && c.im == 0.0; }
template <class R>
bool unit_constant(const UniPoly<R>& p) {
  return p.degree() == 0 && unit_constant(p.c[0]);
}

template <class C>
void normalize_or_throw(MultilinearPoly<C>& f) {
  if (!unit_constant(f.coeff(0u)))
    throw std::domain_error("truncated_power: constant term must be 1");
}
// Floats may normalize a near-1 constant term away.
inline void normalize_or_throw(MultilinearPoly<double>& f) {
  double c0 = f.coeff(0u);
  if (c0 == 1.0) return;
  if (std::fabs(c0 - 1.0) > 1e-12)
    throw std::domain_error("truncated_power: constant term must be 1");
  for (auto& [m, c] : f.terms) c /= c0;
}
inline void normalize_or_throw(MultilinearPoly<CDbl>& f) {
  CDbl c0 = f.coeff(0u);
  if (norm1(c0 - CDbl(1.0)) > 1e-12)
    throw std::domain_error("truncated_power: constant term must be 1");
  if (!(c0 == CDbl(1.0)))
    for (auto& [m, c] : f.terms) c = c / c0;
}
}  // namespace mldetail

// f^r in the z_i^2 = 0 ring for arbitrary rational r, via exp(r log f).
// f - 1 is nilpotent of order nvars+1, so both series terminate exactly.
template <class C>
MultilinearPoly<C> truncated_power(MultilinearPoly<C> f, const Rat& r) {
  mldetail::normalize_or_throw(f);
  const int n = f.nvars;
  MultilinearPoly<C> g = f;
  g.add_to(0u, C(0) - C(1));  // g = f - 1
  MultilinearPoly<C> logf(n), gp = MultilinearPoly<C>::constant(n, C(1));
  for (int k = 1; k <= n; ++k) {
    gp = mul_truncated(gp, g);
    if (gp.terms.empty()) break;
    logf = logf + gp.scaled(Rat((k % 2 == 1) ? 1 : -1, k));
  }
  MultilinearPoly<C> h = logf.scaled(r);
  MultilinearPoly<C> out = MultilinearPoly<C>::constant(n, C(1));
  MultilinearPoly<C> hp = MultilinearPoly<C>::constant(n, C(1));
  Rat inv_fact(1);
  for (int k = 1; k <= n; ++k) {
    hp = mul_truncated(hp, h);
    if (hp.terms.empty()) break;
    inv_fact /= k;
    out = out + hp.scaled(inv_fact);
  }
  return out;
}

// Expansion of det[Z - A] around Z = xI for hermitian A: the coefficient of
// z^S is chi[A_S](x), the characteristic polynomial with rows/columns S
// removed. Coefficient of the empty set is chi[A]; of the full set, 1.
inline MultilinearPoly<UniPoly<Rat>> multilinear_det(const MatQ& a) {
  if (a.n > 14) throw std::invalid_argument("multilinear_det: n <= 14");
  MultilinearPoly<UniPoly<Rat>> f(a.n);
  const uint32_t full = (a.n == 0) ? 0u : ((1u << a.n) - 1);
  for (uint32_t mask = 0;; ++mask) {
    f.set(mask, char_poly(submatrix_removed_mask(a, mask)));
    if (mask == full) break;
  }
  return f;
}

// P(d_1,..,d_n) applied to the det[Z-A] expansion, all variables then set to
// x: picks out sum_S P_S * f_S. For a probability generating polynomial P
// this is the expected characteristic polynomial.
inline UniPoly<Rat> apply_diff_operator(const MultilinearPoly<Rat>& p,
                                        const MultilinearPoly<UniPoly<Rat>>& f) {
  if (p.nvars != f.nvars) throw std::invalid_argument("apply_diff_operator: variable mismatch");
  UniPoly<Rat> acc;
  for (auto& [mask, w] : p.terms) acc += f.coeff(mask) * w;
  return acc;
}

}  // namespace chir
