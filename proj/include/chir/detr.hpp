#pragma once

// The r-determinant det_r(A) = sum_sigma sgn(sigma) r^{c(sigma)} prod a_{i,sigma(i)}
// (c = cycle count; det_1 = det) by three independent algorithms, the
// r-characteristic polynomial chi_r[A] = det_r[xI - A], mixed determinants,
// and the structural identities built on them: the derivative (Thompson-type)
// formula and its defect-k extension, multilinearization, the PD-determinant
// differentiation identity, Vere-Jones vanishing, and the Koteljanskii-type
// inequality residual.

#include "chir/matrix.hpp"
#include "chir/multilinear.hpp"
#include "chir/roots.hpp"
#include "chir/scalars.hpp"
#include "chir/unipoly.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace chir {

// Size/budget violations map to their own exit code at the CLI.
struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace permdetail {

// sign and cycle count of a permutation given as images 0..n-1
inline std::pair<int, int> sign_and_cycles(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  int cycles = 0, sign = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = perm[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return {sign, cycles};
}

}  // namespace permdetail

// ---------------- route 1: cycle-weighted permutation sum ----------------

// Exact det_r over Gaussian rationals for rational r = p/q. Entries are
// scaled to Gaussian integers over a common denominator so the n! inner
// loop runs gcd-free; the permutation weight r^c is carried as p^c q^{n-c}.
inline CRat det_r_perm(const MatQ& a, const Rat& r, int size_limit = 10) {
  const int n = a.n;
  if (n > size_limit) throw resource_limit_error("det_r_perm: n! enumeration limit exceeded");
  if (n == 0) return CRat(Rat(1));
  Int den = 1;
  for (const auto& z : a.a) {
    den = boost::multiprecision::lcm(den, denominator(z.re));
    den = boost::multiprecision::lcm(den, denominator(z.im));
  }
  std::vector<Cplx<Int>> b;
  b.reserve(a.a.size());
  for (const auto& z : a.a)
    b.emplace_back(numerator(z.re) * (den / denominator(z.re)),
                   numerator(z.im) * (den / denominator(z.im)));
  const Int p = numerator(r), q = denominator(r);
  std::vector<Int> weight(n + 1);  // weight[c] = p^c q^{n-c}
  for (int c = 0; c <= n; ++c) {
    Int w = 1;
    for (int k = 0; k < c; ++k) w *= p;
    for (int k = c; k < n; ++k) w *= q;
    weight[c] = w;
  }
  Cplx<Int> acc(Int(0), Int(0));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Cplx<Int> prod(Int(1), Int(0));
    bool zero = false;
    for (int i = 0; i < n; ++i) {
      const Cplx<Int>& e = b[static_cast<std::size_t>(i) * n + perm[i]];
      if (e.re == 0 && e.im == 0) {
        zero = true;
        break;
      }
      prod = prod * e;
    }
    if (zero) continue;
    auto [sgn, cyc] = permdetail::sign_and_cycles(perm);
    Int w = sgn > 0 ? weight[cyc] : -weight[cyc];
    acc.re += prod.re * w;
    acc.im += prod.im * w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  Rat scale = Rat(1) / (rat_pow(Rat(den), n) * rat_pow(Rat(q), n));
  return {Rat(acc.re) * scale, Rat(acc.im) * scale};
}

inline CDbl det_r_perm(const MatD& a, double r, int size_limit = 10) {
  const int n = a.n;
  if (n > size_limit) throw resource_limit_error("det_r_perm: n! enumeration limit exceeded");
  if (n == 0) return CDbl(1.0);
  std::vector<double> rpow(n + 1, 1.0);
  for (int c = 1; c <= n; ++c) rpow[c] = rpow[c - 1] * r;
  CDbl acc(0.0);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    CDbl prod(1.0);
    for (int i = 0; i < n; ++i) prod = prod * a.at(i, perm[i]);
    auto [sgn, cyc] = permdetail::sign_and_cycles(perm);
    acc += prod * CDbl(sgn * rpow[cyc]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// det_r with entries in an arbitrary commutative ring (used with multilinear
// polynomial entries for the multilinearization identity). Products along a
// permutation touch pairwise distinct diagonal variables, so strict products
// are safe.
template <class Ring>
Ring det_r_perm_ring(const std::vector<Ring>& entries, int n, const Rat& r,
                     const Ring& one, const Ring& zero) {
  if (n == 0) return one;
  Ring acc = zero;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Ring prod = one;
    for (int i = 0; i < n; ++i) prod = mul_strict(prod, entries[static_cast<std::size_t>(i) * n + perm[i]]);
    auto [sgn, cyc] = permdetail::sign_and_cycles(perm);
    acc = acc + prod.scaled(rat_pow(r, cyc) * sgn);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// ---------------- route 2: iterated-derivative extraction ----------------

namespace zcap {

// Sparse polynomial in z_1..z_n with per-variable exponent cap; monomials
// keyed by 4-bit packed exponent vectors. Products drop any term whose
// exponent would exceed the cap (those cannot contribute to the target
// coefficient, whose exponents equal the cap everywhere).
using Key = uint64_t;

inline int exponent(Key k, int i) { return static_cast<int>(k >> (4 * i) & 0xF); }

template <class C>
using Poly = std::map<Key, C>;

template <class C>
Poly<C> mul(const Poly<C>& a, const Poly<C>& b, int n, int cap) {
  Poly<C> r;
  for (auto& [ka, ca] : a)
    for (auto& [kb, cb] : b) {
      Key k = 0;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        int e = exponent(ka, i) + exponent(kb, i);
        if (e > cap) {
          ok = false;
          break;
        }
        k |= static_cast<Key>(e) << (4 * i);
      }
      if (!ok) continue;
      auto it = r.find(k);
      if (it == r.end())
        r.emplace(k, ca * cb);
      else
        it->second += cb * ca;
    }
  return r;
}

template <class C>
Poly<C> derivative(const Poly<C>& a, int i) {
  Poly<C> r;
  for (auto& [k, c] : a) {
    int e = exponent(k, i);
    if (e == 0) continue;
    Key kd = k - (static_cast<Key>(1) << (4 * i));
    auto it = r.find(kd);
    C v = c * C(e);
    if (it == r.end())
      r.emplace(kd, std::move(v));
    else
      it->second += v;
  }
  return r;
}

template <class C, class Pt>
C eval(const Poly<C>& a, const std::vector<Pt>& z, int n) {
  C acc(0);
  for (auto& [k, c] : a) {
    C t = c;
    for (int i = 0; i < n; ++i)
      for (int e = exponent(k, i); e > 0; --e) t = t * C(z[i]);
    acc += t;
  }
  return acc;
}

}  // namespace zcap

// det_r[A] as the coefficient of (z_1...z_n)^{r-1} in det[A+Z]^r (the
// (1/(r-1)!)^n-normalized mixed derivative at 0). Integer r only.
inline CRat det_r_derivative(const MatQ& a, int r) {
  const int n = a.n;
  if (n > 8 || r > 4) throw resource_limit_error("det_r_derivative: n <= 8, r <= 4");
  if (r < 1) throw std::invalid_argument("det_r_derivative: r >= 1");
  if (n == 0) return CRat(Rat(1));
  const int cap = r - 1;
  // det[A+Z] = sum_S z^S det[A_S] (S removed)
  zcap::Poly<CRat> base;
  const uint32_t full = (1u << n) - 1;
  for (uint32_t mask = 0;; ++mask) {
    CRat minor = determinant(submatrix_removed_mask(a, mask));
    if (!(minor.re == 0 && minor.im == 0)) {
      zcap::Key k = 0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) k |= static_cast<zcap::Key>(1) << (4 * i);
      base.emplace(k, minor);
    }
    if (mask == full) break;
  }
  zcap::Poly<CRat> acc{{0, CRat(Rat(1))}};
  for (int k = 0; k < r; ++k) acc = zcap::mul(acc, base, n, cap);
  zcap::Key target = 0;
  for (int i = 0; i < n; ++i) target |= static_cast<zcap::Key>(cap) << (4 * i);
  auto it = acc.find(target);
  return it == acc.end() ? CRat(Rat(0)) : it->second;
}

// ---------------- route 3: master-theorem extraction ----------------

// det_r[A] = (-1)^n [z_1...z_n] det[I - ZA]^r, valid for any rational r.
// det[I - ZA] = sum_S z^S det[(-A)(S)] (S kept) lives in the z_i^2 = 0 ring
// and the r'th power is taken there with truncated_power.
inline CRat det_r_macmahon(const MatQ& a, const Rat& r, int size_limit = 12) {
  const int n = a.n;
  if (n > size_limit) throw resource_limit_error("det_r_macmahon: n <= 12");
  if (n == 0) return CRat(Rat(1));
  MultilinearPoly<CRat> f(n);
  const uint32_t full = (1u << n) - 1;
  for (uint32_t mask = 0;; ++mask) {
    CRat minor = determinant(submatrix_kept_mask(a, mask));
    int sz = __builtin_popcount(mask);
    if (sz % 2 == 1) minor = -minor;
    f.add_to(mask, minor);
    if (mask == full) break;
  }
  MultilinearPoly<CRat> fr = truncated_power(f, r);
  CRat c = fr.coeff(full);
  return (n % 2 == 1) ? -c : c;
}

inline CDbl det_r_macmahon(const MatD& a, double r, int size_limit = 12) {
  return to_cdbl(det_r_macmahon(lift(a), rat_from_double(r), size_limit));
}

// ---------------- chi_r ----------------

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// chi_r[A] = det_r[xI - A] with complex coefficients (real for hermitian or
// real-entried inputs). Integer r goes through exact interpolation of the
// permutation route at x = 0..n; non-integer rational r goes through the
// master-theorem route with polynomial coefficients.
inline UniPoly<CRat> chi_r_complex(const MatQ& a, const Rat& r) {
  const int n = a.n;
  if (n == 0) return UniPoly<CRat>::constant(CRat(Rat(1)));
  if (is_integer(r) && r >= 1 && n <= 10) {
    std::vector<CRat> xs, ys;
    for (int k = 0; k <= n; ++k) {
      MatQ m = Matrix<CRat>::identity(n) * CRat(Rat(k)) - a;
      xs.emplace_back(Rat(k));
      ys.push_back(det_r_perm(m, r));
    }
    return interpolate(xs, ys);
  }
  if (n > 12) throw resource_limit_error("chi_r: n <= 12 for the master-theorem route");
  // det[I - xZ + ZA] = det[I + Z(A - xI)]: coefficient of z^S is the
  // char-poly-in-x of the kept submatrix A(S), times (-1)^{|S|}.
  MultilinearPoly<UniPoly<CRat>> f(n);
  const uint32_t full = (1u << n) - 1;
  for (uint32_t mask = 0;; ++mask) {
    MatQ sub = submatrix_kept_mask(a, mask);
    UniPoly<CRat> cp = char_poly_complex(sub);
    if (__builtin_popcount(mask) % 2 == 1) cp = -cp;
    f.set(mask, cp);
    if (mask == full) break;
  }
  MultilinearPoly<UniPoly<CRat>> fr = truncated_power(f, r);
  UniPoly<CRat> c = fr.coeff(full);
  return (n % 2 == 1) ? -c : c;
}

inline UniPoly<Rat> chi_r(const MatQ& a, const Rat& r) {
  return real_part_exact(chi_r_complex(a, r));
}

inline UniPoly<double> chi_r(const MatD& a, double r) {
  return to_double_poly(chi_r(lift(a), rat_from_double(r)));
}

// ---------------- mixed determinant ----------------

// D(A_1,..,A_k) = sum over ordered partitions S_1 + .. + S_k = [n] of
// det[A_1(S_1)] ... det[A_k(S_k)], kept-submatrix convention per factor.
inline CRat mixed_determinant(const std::vector<MatQ>& mats) {
  if (mats.empty()) throw std::invalid_argument("mixed_determinant: empty tuple");
  const int n = mats[0].n;
  const int k = static_cast<int>(mats.size());
  for (const auto& m : mats)
    if (m.n != n) throw std::invalid_argument("mixed_determinant: size mismatch");
  double budget = std::pow(static_cast<double>(k), n);
  if (budget > 1e6) throw resource_limit_error("mixed_determinant: k^n <= 1e6");
  if (n == 0) return CRat(Rat(1));
  // kept principal minors of every matrix
  std::vector<std::vector<CRat>> minor(k);
  const uint32_t full = (1u << n) - 1;
  for (int m = 0; m < k; ++m) {
    minor[m].resize(full + 1u);
    for (uint32_t mask = 0;; ++mask) {
      minor[m][mask] = determinant(submatrix_kept_mask(mats[m], mask));
      if (mask == full) break;
    }
  }
  CRat acc(Rat(0));
  std::vector<int> assign(n, 0);
  for (;;) {
    std::vector<uint32_t> masks(k, 0);
    for (int i = 0; i < n; ++i) masks[assign[i]] |= 1u << i;
    CRat prod(Rat(1));
    for (int m = 0; m < k; ++m) prod = prod * minor[m][masks[m]];
    acc += prod;
    int pos = n - 1;
    while (pos >= 0 && assign[pos] == k - 1) assign[pos--] = 0;
    if (pos < 0) break;
    ++assign[pos];
  }
  return acc;
}

// ---------------- identity residuals ----------------

// r * sum_i chi_r[A_i] - chi_r'[A]; identically zero for every square matrix.
inline UniPoly<CRat> thompson_residual(const MatQ& a, int r) {
  UniPoly<CRat> sum;
  for (int i = 0; i < a.n; ++i)
    sum += chi_r_complex(submatrix_removed(a, std::vector<int>{i}), Rat(r));
  return sum * CRat(Rat(r)) - chi_r_complex(a, Rat(r)).derivative();
}

// r^k k! sum_{|S|=k} chi_r[A_S] - chi_r^{(k)}[A]; identically zero.
inline UniPoly<CRat> defect_k_residual(const MatQ& a, int r, int k) {
  if (k < 0 || k > a.n) throw std::invalid_argument("defect_k_residual: 0 <= k <= n");
  UniPoly<CRat> sum;
  const uint32_t full = a.n == 0 ? 0u : (1u << a.n) - 1;
  for (uint32_t mask = 0;; ++mask) {
    if (__builtin_popcount(mask) == k) sum += chi_r_complex(submatrix_removed_mask(a, mask), Rat(r));
    if (mask == full) break;
  }
  Rat fact(1);
  for (int j = 2; j <= k; ++j) fact *= j;
  UniPoly<CRat> lhs = sum * CRat(rat_pow(Rat(r), k) * fact);
  return lhs - derivative_k(chi_r_complex(a, Rat(r)), k);
}

// Largest coefficient discrepancy between det_r[Z+A] and
// sum_S z^S r^{|S|} det_r[A_S]; identically zero.
inline Rat multilinearization_residual(const MatQ& a, int r) {
  const int n = a.n;
  if (n > 6) throw resource_limit_error("multilinearization_residual: n <= 6");
  using Ring = MultilinearPoly<CRat>;
  std::vector<Ring> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Ring e = Ring::constant(n, a.at(i, j));
      if (i == j) e.add_to(1u << i, CRat(Rat(1)));
      entries.push_back(std::move(e));
    }
  Ring lhs = det_r_perm_ring(entries, n, Rat(r), Ring::constant(n, CRat(Rat(1))), Ring(n));
  Ring rhs(n);
  const uint32_t full = n == 0 ? 0u : (1u << n) - 1;
  for (uint32_t mask = 0;; ++mask) {
    CRat d = det_r_perm(submatrix_removed_mask(a, mask), Rat(r));
    rhs.add_to(mask, scale_rat(d, rat_pow(Rat(r), __builtin_popcount(mask))));
    if (mask == full) break;
  }
  Ring diff = lhs - rhs;
  Rat worst(0);
  for (auto& [m, c] : diff.terms) worst = std::max(worst, norm1(c));
  return worst;
}

// dS/dz^S det[Z-A]^2 evaluated at a real diagonal point, minus
// det[Z-A]^2 * det_2[(Z-A)^{-1}(S)]; zero for multiplicities <= 2.
inline Rat pd_det_residual(const MatQ& a, const std::vector<Rat>& z, const IndexMultiset& s) {
  const int n = a.n;
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("pd_det_residual: point size");
  if (s.max_multiplicity() > 2)
    throw std::invalid_argument("pd_det_residual: multiplicities must be <= 2");
  for (int i : s.idx)
    if (i < 0 || i >= n) throw std::out_of_range("pd_det_residual: index");
  MatQ zma(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) zma.at(i, j) = (i == j ? CRat(z[i]) : CRat(Rat(0))) - a.at(i, j);
  CRat dz = determinant(zma);
  if (dz.re == 0 && dz.im == 0) throw std::domain_error("pd_det_residual: singular Z-A");

  // touched variables and their derivative orders
  std::vector<int> touched;
  std::map<int, int> order;
  for (int i : s.idx) ++order[i];
  for (auto& [i, o] : order) touched.push_back(i);
  const int t = static_cast<int>(touched.size());

  // det[Z-A] restricted to the touched variables: coefficient of z^V equals
  // sum over removed supersets with the untouched values substituted.
  zcap::Poly<CRat> base;
  std::vector<int> untouched;
  for (int i = 0; i < n; ++i)
    if (!order.count(i)) untouched.push_back(i);
  const uint32_t tful = t == 0 ? 0u : (1u << t) - 1;
  const uint32_t uful = untouched.empty() ? 0u : (1u << untouched.size()) - 1;
  for (uint32_t vm = 0;; ++vm) {
    CRat coeff(Rat(0));
    for (uint32_t wm = 0;; ++wm) {
      std::vector<int> removed;
      CRat weight(Rat(1));
      for (int b = 0; b < t; ++b)
        if (vm >> b & 1u) removed.push_back(touched[b]);
      for (std::size_t b = 0; b < untouched.size(); ++b)
        if (wm >> b & 1u) {
          removed.push_back(untouched[b]);
          weight = weight * CRat(z[untouched[b]]);
        }
      MatQ sub = submatrix_removed(a, removed);
      // det[(Z-A)_removed-complement] with -A entries: det((-A)_removed)
      CRat minor = determinant(sub * CRat(Rat(-1)));
      coeff += weight * minor;
      if (wm == uful) break;
    }
    zcap::Key key = 0;
    for (int b = 0; b < t; ++b)
      if (vm >> b & 1u) key |= static_cast<zcap::Key>(1) << (4 * b);
    if (!(coeff.re == 0 && coeff.im == 0)) base.emplace(key, coeff);
    if (vm == tful) break;
  }
  zcap::Poly<CRat> sq = zcap::mul(base, base, t, 2);
  // apply the mixed derivative d^S and evaluate at the touched values
  CRat lhs(Rat(0));
  for (auto& [key, c] : sq) {
    CRat term = c;
    bool dead = false;
    for (int b = 0; b < t; ++b) {
      int e = zcap::exponent(key, b);
      int o = order[touched[b]];
      if (e < o) {
        dead = true;
        break;
      }
      // falling factorial from differentiation, then evaluation
      for (int d = 0; d < o; ++d) term = term * CRat(Rat(e - d));
      for (int d = 0; d < e - o; ++d) term = term * CRat(z[touched[b]]);
    }
    if (!dead) lhs += term;
  }
  MatQ inv = inverse(zma);
  CRat rhs = dz * dz * det_r_perm(submatrix_kept(inv, s), Rat(2));
  CRat diff = lhs - rhs;
  return norm1(diff);
}

inline double pd_det_residual_float(const MatD& a, const std::vector<double>& z,
                                    const IndexMultiset& s) {
  // same computation in plain double arithmetic (the float cross-check)
  const int n = a.n;
  if (s.max_multiplicity() > 2)
    throw std::invalid_argument("pd_det_residual: multiplicities must be <= 2");
  MatD zma(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) zma.at(i, j) = (i == j ? CDbl(z[i]) : CDbl(0.0)) - a.at(i, j);
  CDbl dz = determinant(zma);
  if (norm1(dz) == 0.0) throw std::domain_error("pd_det_residual: singular Z-A");
  std::map<int, int> order;
  for (int i : s.idx) ++order[i];
  std::vector<int> touched;
  for (auto& [i, o] : order) touched.push_back(i);
  const int t = static_cast<int>(touched.size());
  std::vector<int> untouched;
  for (int i = 0; i < n; ++i)
    if (!order.count(i)) untouched.push_back(i);
  zcap::Poly<CDbl> base;
  const uint32_t tful = t == 0 ? 0u : (1u << t) - 1;
  const uint32_t uful = untouched.empty() ? 0u : (1u << untouched.size()) - 1;
  for (uint32_t vm = 0;; ++vm) {
    CDbl coeff(0.0);
    for (uint32_t wm = 0;; ++wm) {
      std::vector<int> removed;
      CDbl weight(1.0);
      for (int b = 0; b < t; ++b)
        if (vm >> b & 1u) removed.push_back(touched[b]);
      for (std::size_t b = 0; b < untouched.size(); ++b)
        if (wm >> b & 1u) {
          removed.push_back(untouched[b]);
          weight = weight * CDbl(z[untouched[b]]);
        }
      CDbl minor = determinant(submatrix_removed(a, removed) * CDbl(-1.0));
      coeff += weight * minor;
      if (wm == uful) break;
    }
    zcap::Key key = 0;
    for (int b = 0; b < t; ++b)
      if (vm >> b & 1u) key |= static_cast<zcap::Key>(1) << (4 * b);
    base.emplace(key, coeff);
    if (vm == tful) break;
  }
  auto sq = zcap::mul(base, base, t, 2);
  CDbl lhs(0.0);
  for (auto& [key, c] : sq) {
    CDbl term = c;
    bool dead = false;
    for (int b = 0; b < t; ++b) {
      int e = zcap::exponent(key, b);
      int o = order[touched[b]];
      if (e < o) {
        dead = true;
        break;
      }
      for (int d = 0; d < o; ++d) term = term * CDbl(static_cast<double>(e - d));
      for (int d = 0; d < e - o; ++d) term = term * CDbl(z[touched[b]]);
    }
    if (!dead) lhs += term;
  }
  MatD inv = inverse(zma);
  CDbl rhs = dz * dz * det_r_perm(submatrix_kept(inv, s), 2.0);
  return norm1(lhs - rhs);
}

// det_2 of the kept multiset submatrix; vanishes whenever some index appears
// more than twice in S.
inline CRat vere_jones_vanishing(const MatQ& b, const IndexMultiset& s) {
  return det_r_perm(submatrix_kept(b, s), Rat(2));
}

// det_r[A_S] det_r[A_T] - det_r[A_{S int T}] det_r[A_{S un T}] (removed
// convention); nonnegative for PSD A.
inline Rat koteljanskii_residual(const MatQ& a, int r, const std::vector<int>& s,
                                 const std::vector<int>& t) {
  RootInterval lam = real_roots(char_poly(a)).front();
  if (lam.approx() < -1e-10) throw std::invalid_argument("koteljanskii_residual: input not PSD");
  auto mask_of = [&](const std::vector<int>& v) {
    uint32_t m = 0;
    for (int i : v) {
      if (i < 0 || i >= a.n) throw std::out_of_range("koteljanskii_residual: index");
      m |= 1u << i;
    }
    return m;
  };
  uint32_t ms = mask_of(s), mt = mask_of(t);
  auto dr = [&](uint32_t m) {
    CRat v = det_r_perm(submatrix_removed_mask(a, m), Rat(r));
    if (v.im != 0) throw std::logic_error("koteljanskii_residual: nonreal det_r");
    return v.re;
  };
  return dr(ms) * dr(mt) - dr(ms & mt) * dr(ms | mt);
}

}  // namespace chir
