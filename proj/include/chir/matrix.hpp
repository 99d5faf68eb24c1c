#pragma once

// Dense square matrices over Cplx<R>, principal submatrices under both index
// conventions, pavings and pinchings, exact determinants and characteristic
// polynomials, and the harmonic-frame projection generator.
//
// Index conventions follow the two uses in the source material:
//   submatrix_removed(A, S): rows/columns listed in S are deleted (A_S).
//   submatrix_kept(A, S):    rows/columns listed in S are kept, with multiset
//                            repeats allowed (A(S)).
// Indices are 0-based throughout the library; the JSON layer is 1-based.

#include "chir/scalars.hpp"
#include "chir/unipoly.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace chir {

// Ordered partition of {0,..,n-1} into r labeled blocks.
struct Paving {
  int n = 0;
  int r = 1;
  std::vector<int> assign;  // assign[i] in [0, r)

  Paving() = default;
  Paving(int n_, int r_, std::vector<int> a) : n(n_), r(r_), assign(std::move(a)) {
    if (static_cast<int>(assign.size()) != n) throw std::invalid_argument("Paving: size mismatch");
    for (int b : assign)
      if (b < 0 || b >= r) throw std::invalid_argument("Paving: block out of range");
  }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> bs(r);
    for (int i = 0; i < n; ++i) bs[assign[i]].push_back(i);
    return bs;
  }
};

// Multiset of indices, kept sorted; repeats adjacent. Total multiplicity is
// the caller's concern (ops that care enforce their own caps).
struct IndexMultiset {
  std::vector<int> idx;

  IndexMultiset() = default;
  IndexMultiset(std::initializer_list<int> l) : idx(l) { std::sort(idx.begin(), idx.end()); }
  explicit IndexMultiset(std::vector<int> l) : idx(std::move(l)) {
    std::sort(idx.begin(), idx.end());
  }
  static IndexMultiset from_counts(const std::map<int, int>& counts) {
    IndexMultiset m;
    for (auto [i, c] : counts)
      for (int k = 0; k < c; ++k) m.idx.push_back(i);
    return m;
  }
  int size() const { return static_cast<int>(idx.size()); }
  int max_multiplicity() const {
    int best = 0, run = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      run = (k > 0 && idx[k] == idx[k - 1]) ? run + 1 : 1;
      best = std::max(best, run);
    }
    return best;
  }
  bool is_set() const { return max_multiplicity() <= 1; }
};

template <class C>
struct Matrix {
  int n = 0;
  std::vector<C> a;  // row-major n*n

  Matrix() = default;
  explicit Matrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, C(0)) {
    if (n_ < 0) throw std::invalid_argument("Matrix: negative size");
  }
  C& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const C& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = C(1);
    return m;
  }
  static Matrix zero(int n) { return Matrix(n); }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.n != y.n) throw std::invalid_argument("Matrix+: size mismatch");
    Matrix r(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.n != y.n) throw std::invalid_argument("Matrix-: size mismatch");
    Matrix r(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
  }
  friend Matrix operator*(const Matrix& x, const C& s) {
    Matrix r = x;
    for (auto& v : r.a) v = v * s;
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.n != y.n) throw std::invalid_argument("Matrix*: size mismatch");
    Matrix r(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        if (is_zero(x.at(i, k))) continue;
        for (int j = 0; j < x.n; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return r;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.n == y.n && x.a == y.a; }
};

using MatQ = Matrix<CRat>;
using MatD = Matrix<CDbl>;

template <class C>
Matrix<C> conj_transpose(const Matrix<C>& m) {
  Matrix<C> r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r.at(i, j) = conj(m.at(j, i));
  return r;
}

inline bool is_hermitian(const MatQ& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j <= i; ++j)
      if (!(m.at(i, j) == conj(m.at(j, i)))) return false;
  return true;
}

inline bool is_hermitian(const MatD& m, double tol = 1e-12) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j <= i; ++j) {
      CDbl d = m.at(i, j) - conj(m.at(j, i));
      if (norm1(d) > tol) return false;
    }
  return true;
}

inline MatD to_float(const MatQ& m) {
  MatD r(m.n);
  for (std::size_t k = 0; k < m.a.size(); ++k) r.a[k] = to_cdbl(m.a[k]);
  return r;
}

inline MatQ lift(const MatD& m) {
  MatQ r(m.n);
  for (std::size_t k = 0; k < m.a.size(); ++k) r.a[k] = lift(m.a[k]);
  return r;
}

namespace detail {
inline std::vector<int> sorted_unique(std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}
}  // namespace detail

// A_S: principal submatrix with rows/columns in S removed; surviving order
// preserved.
template <class C>
Matrix<C> submatrix_removed(const Matrix<C>& m, const std::vector<int>& removed) {
  auto s = detail::sorted_unique(removed);
  for (int i : s)
    if (i < 0 || i >= m.n) throw std::out_of_range("submatrix_removed: index out of range");
  std::vector<int> keep;
  std::size_t p = 0;
  for (int i = 0; i < m.n; ++i) {
    if (p < s.size() && s[p] == i) {
      ++p;
      continue;
    }
    keep.push_back(i);
  }
  Matrix<C> r(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) r.at(i, j) = m.at(keep[i], keep[j]);
  return r;
}

template <class C>
Matrix<C> submatrix_removed_mask(const Matrix<C>& m, uint32_t removed_mask) {
  std::vector<int> s;
  for (int i = 0; i < m.n; ++i)
    if (removed_mask >> i & 1u) s.push_back(i);
  return submatrix_removed(m, s);
}

// A(S): rows/columns in the multiset S kept, repeated per multiplicity, in
// nondecreasing index order (repeats adjacent).
template <class C>
Matrix<C> submatrix_kept(const Matrix<C>& m, const IndexMultiset& s) {
  for (int i : s.idx)
    if (i < 0 || i >= m.n) throw std::out_of_range("submatrix_kept: index out of range");
  Matrix<C> r(s.size());
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) r.at(i, j) = m.at(s.idx[i], s.idx[j]);
  return r;
}

template <class C>
Matrix<C> submatrix_kept_mask(const Matrix<C>& m, uint32_t kept_mask) {
  std::vector<int> s;
  for (int i = 0; i < m.n; ++i)
    if (kept_mask >> i & 1u) s.push_back(i);
  return submatrix_kept(m, IndexMultiset(s));
}

// A_X = sum_k P_{X_k} A P_{X_k}: zero out entries crossing between blocks.
template <class C>
Matrix<C> pinch(const Matrix<C>& m, const Paving& x) {
  if (x.n != m.n) throw std::invalid_argument("pinch: dimension mismatch");
  Matrix<C> r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (x.assign[i] == x.assign[j]) r.at(i, j) = m.at(i, j);
  return r;
}

template <class C>
Matrix<C> direct_sum(const Matrix<C>& x, const Matrix<C>& y) {
  Matrix<C> r(x.n + y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.n; ++i)
    for (int j = 0; j < y.n; ++j) r.at(x.n + i, x.n + j) = y.at(i, j);
  return r;
}

// B with B[perm[i]][perm[j]] = A[i][j].
template <class C>
Matrix<C> permute(const Matrix<C>& m, const std::vector<int>& perm) {
  Matrix<C> r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r.at(perm[i], perm[j]) = m.at(i, j);
  return r;
}

namespace detail {
// Pivot quality: exact scalars only need nonzero, floats want max magnitude.
inline Rat pivot_weight(const CRat& z) { return (z.re == 0 && z.im == 0) ? Rat(0) : Rat(1); }
inline double pivot_weight(const CDbl& z) { return norm1(z); }
}  // namespace detail

// Determinant by Gaussian elimination over the entry field. det of the 0x0
// matrix is 1.
template <class C>
C determinant(Matrix<C> m) {
  C det(1);
  for (int col = 0; col < m.n; ++col) {
    int piv = -1;
    auto best = detail::pivot_weight(C(0));
    for (int row = col; row < m.n; ++row) {
      auto w = detail::pivot_weight(m.at(row, col));
      if (!is_zero(m.at(row, col)) && (piv < 0 || w > best)) {
        piv = row;
        best = w;
      }
    }
    if (piv < 0) return C(0);
    if (piv != col) {
      for (int j = 0; j < m.n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = -det;
    }
    det = det * m.at(col, col);
    C inv_p = C(1) / m.at(col, col);
    for (int row = col + 1; row < m.n; ++row) {
      if (is_zero(m.at(row, col))) continue;
      C f = m.at(row, col) * inv_p;
      for (int j = col; j < m.n; ++j) m.at(row, j) -= f * m.at(col, j);
    }
  }
  return det;
}

template <class C>
Matrix<C> inverse(const Matrix<C>& m) {
  Matrix<C> aug = m, inv = Matrix<C>::identity(m.n);
  for (int col = 0; col < m.n; ++col) {
    int piv = -1;
    auto best = detail::pivot_weight(C(0));
    for (int row = col; row < m.n; ++row) {
      auto w = detail::pivot_weight(aug.at(row, col));
      if (!is_zero(aug.at(row, col)) && (piv < 0 || w > best)) {
        piv = row;
        best = w;
      }
    }
    if (piv < 0) throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < m.n; ++j) {
        std::swap(aug.at(piv, j), aug.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    C ip = C(1) / aug.at(col, col);
    for (int j = 0; j < m.n; ++j) {
      aug.at(col, j) *= ip;
      inv.at(col, j) *= ip;
    }
    for (int row = 0; row < m.n; ++row) {
      if (row == col || is_zero(aug.at(row, col))) continue;
      C f = aug.at(row, col);
      for (int j = 0; j < m.n; ++j) {
        aug.at(row, j) -= f * aug.at(col, j);
        inv.at(row, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// chi[A] = det(xI - A), exact, by Newton interpolation at x = 0..n. Complex
// coefficients in general; see char_poly() for the hermitian wrapper.
inline UniPoly<CRat> char_poly_complex(const MatQ& m) {
  std::vector<CRat> xs, ys;
  for (int k = 0; k <= m.n; ++k) {
    MatQ t = Matrix<CRat>::identity(m.n) * CRat(Rat(k)) - m;
    xs.emplace_back(Rat(k));
    ys.push_back(determinant(t));
  }
  return interpolate(xs, ys);
}

// Monic degree-n characteristic polynomial of a hermitian matrix, with the
// guaranteed-real coefficients extracted exactly.
inline UniPoly<Rat> char_poly(const MatQ& m) { return real_part_exact(char_poly_complex(m)); }

template <class C>
Cplx<typename std::decay_t<decltype(C{}.re)>> trace(const Matrix<C>& m) {
  C t(0);
  for (int i = 0; i < m.n; ++i) t += m.at(i, i);
  return t;
}

// Rank-k projection from k rows of the n-point discrete Fourier matrix:
// P_{jl} = (1/n) sum_{m<k} w^{m(l-j)}, w = exp(2 pi i / n). Every diagonal
// entry is exactly k/n and P^2 = P.
//
// Exact Gaussian-rational entries exist iff k == n (identity), k == 1, or
// n in {1, 2, 4}; harmonic_projection_exact covers those, _float the rest.
inline MatQ harmonic_projection_exact(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("harmonic_projection: need 1 <= k <= n");
  if (k == n) return Matrix<CRat>::identity(n);
  const bool representable = (k == 1) || n == 1 || n == 2 || n == 4;
  if (!representable)
    throw std::domain_error("harmonic_projection_exact: entries not Gaussian-rational");
  // w^t table for n in {1,2,4}; for k == 1 only w^0 is used.
  auto omega_pow = [n](int t) -> CRat {
    t = ((t % n) + n) % n;
    if (n == 1) return CRat(Rat(1));
    if (n == 2) return t == 0 ? CRat(Rat(1)) : CRat(Rat(-1));
    switch (t) {  // n == 4
      case 0: return CRat(Rat(1));
      case 1: return CRat(Rat(0), Rat(1));
      case 2: return CRat(Rat(-1));
      default: return CRat(Rat(0), Rat(-1));
    }
  };
  MatQ p(n);
  Rat inv_n = Rat(1) / Rat(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      CRat s(Rat(0));
      for (int m = 0; m < k; ++m) s += omega_pow(m * (l - j));
      p.at(j, l) = CRat(s.re * inv_n, s.im * inv_n);
    }
  return p;
}

inline MatD harmonic_projection_float(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("harmonic_projection: need 1 <= k <= n");
  MatD p(n);
  const double tau = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double re = 0, im = 0;
      for (int m = 0; m < k; ++m) {
        re += std::cos(tau * m * (l - j));
        im += std::sin(tau * m * (l - j));
      }
      p.at(j, l) = CDbl(re / n, im / n);
    }
  // enforce exact hermitian symmetry on the float representation
  for (int j = 0; j < n; ++j) {
    p.at(j, j).im = 0;
    for (int l = 0; l < j; ++l) p.at(j, l) = conj(p.at(l, j));
  }
  return p;
}

}  // namespace chir
