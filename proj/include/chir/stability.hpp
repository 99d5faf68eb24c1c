#pragma once

// Real-stability testing for multiaffine polynomials and the Strongly
// Rayleigh measures the r-determinant produces: mu(S) = r^{|S|} det_r[A_S]
// for PSD A, and the uniform paving measure on r copies of the ground set.

#include "chir/detr.hpp"
#include "chir/matrix.hpp"
#include "chir/multilinear.hpp"
#include "chir/rng.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chir {

struct DiscreteMeasure {
  int n = 0;
  std::map<uint32_t, Rat> weights;  // subset mask -> weight >= 0
  bool normalized = false;

  Rat total() const {
    Rat t(0);
    for (auto& [m, w] : weights) t += w;
    return t;
  }
  void normalize() {
    Rat t = total();
    if (t == 0) throw std::domain_error("DiscreteMeasure: zero total mass");
    for (auto& [m, w] : weights) w /= t;
    normalized = true;
  }
  MultilinearPoly<Rat> generating_poly() const {
    MultilinearPoly<Rat> p(n);
    for (auto& [m, w] : weights) p.add_to(m, w);
    return p;
  }
};

enum class StabilityStatus { stable, unstable, undetermined };

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::undetermined;
  std::optional<std::vector<CDbl>> witness;  // upper half-plane zero, when unstable
  bool delta_violation = false;              // pairwise surrogate went negative somewhere
};

inline const char* to_string(StabilityStatus s) {
  switch (s) {
    case StabilityStatus::stable: return "stable";
    case StabilityStatus::unstable: return "unstable";
    default: return "undetermined";
  }
}

// Semi-decision procedure for real stability of a multiaffine real
// polynomial. Unstable needs a witness: a point in the open upper
// half-polydisc where P vanishes (found by solving the degree-1 restriction
// in a pivot variable at random upper-half values of the others). Stable is
// reported when no witness appears and the pairwise surrogate
// Delta_ij = d_iP d_jP - P d_id_jP stays nonnegative at sampled real points.
inline StabilityVerdict is_real_stable_multiaffine(const MultilinearPoly<Rat>& p, int trials,
                                                   uint64_t seed) {
  const int n = p.nvars;
  StabilityVerdict verdict;
  if (p.terms.empty()) return verdict;  // zero polynomial: undetermined by convention
  MultilinearPoly<CDbl> pd(n);
  for (auto& [m, c] : p.terms) pd.set(m, CDbl(to_double(c)));
  Rng rng(seed);

  // upper half-plane zero search via linear slices
  for (int t = 0; t < trials; ++t) {
    int pivot = n == 0 ? -1 : static_cast<int>(t % n);
    if (pivot < 0) break;
    std::vector<CDbl> z(n);
    for (int i = 0; i < n; ++i)
      z[i] = CDbl(rng.uniform(-3.0, 3.0), rng.uniform(1e-3, 2.0));
    // P = a z_pivot + b along the slice
    CDbl a = pd.derivative(pivot).eval(z);
    MultilinearPoly<CDbl> without(n);
    for (auto& [m, c] : pd.terms)
      if (!(m >> pivot & 1u)) without.set(m, c);
    CDbl b = without.eval(z);
    if (norm1(a) < 1e-12) continue;
    CDbl root = (CDbl(0.0) - b) / a;
    if (root.im > 1e-9) {
      z[pivot] = root;
      if (norm1(pd.eval(z)) < 1e-10 * (1.0 + norm1(b))) {
        verdict.status = StabilityStatus::unstable;
        verdict.witness = z;
        return verdict;
      }
    }
  }

  // pairwise surrogate at random real points
  bool ok = true;
  for (int t = 0; t < trials && ok; ++t) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-4.0, 4.0);
    std::vector<CDbl> zx(n);
    for (int i = 0; i < n; ++i) zx[i] = CDbl(x[i]);
    double pval = pd.eval(zx).re;
    for (int i = 0; i < n && ok; ++i) {
      auto di = pd.derivative(i);
      for (int j = i + 1; j < n && ok; ++j) {
        auto dj = pd.derivative(j);
        double delta =
            di.eval(zx).re * dj.eval(zx).re - pval * di.derivative(j).eval(zx).re;
        if (delta < -1e-12) ok = false;
      }
    }
  }
  if (!ok) {
    verdict.delta_violation = true;
    verdict.status = StabilityStatus::undetermined;
    return verdict;
  }
  verdict.status = StabilityStatus::stable;
  return verdict;
}

// mu(S) = r^{|S|} det_r[A_S] (removed convention), normalized by its total
// mass, which equals det_r[I + A] by multilinearization. PSD input only; a
// negative weight is a hard error.
inline DiscreteMeasure sr_measure_from_matrix(const MatQ& a, int r) {
  if (a.n > 8) throw resource_limit_error("sr_measure_from_matrix: n <= 8");
  if (r < 1) throw std::invalid_argument("sr_measure_from_matrix: r >= 1");
  if (!is_hermitian(a)) throw std::invalid_argument("sr_measure_from_matrix: hermitian input");
  DiscreteMeasure mu;
  mu.n = a.n;
  const uint32_t full = a.n == 0 ? 0u : (1u << a.n) - 1;
  for (uint32_t mask = 0;; ++mask) {
    CRat v = det_r_perm(submatrix_removed_mask(a, mask), Rat(r));
    if (v.im != 0) throw std::logic_error("sr_measure_from_matrix: nonreal det_r");
    Rat w = v.re * rat_pow(Rat(r), __builtin_popcount(mask));
    if (w < 0)
      throw std::domain_error("sr_measure_from_matrix: negative weight (input not PSD?)");
    if (w != 0) mu.weights[mask] = w;
    if (mask == full) break;
  }
  // total mass must match det_r[I+A]
  CRat check = det_r_perm(Matrix<CRat>::identity(a.n) + a, Rat(r));
  if (mu.total() != check.re)
    throw std::logic_error("sr_measure_from_matrix: mass mismatch against det_r[I+A]");
  mu.normalize();
  return mu;
}

// Uniform measure behind r-pavings: ground set r copies of [n] (variable
// (i, copy k) sits at bit k*n + i), one atom per transversal, each the
// complement of one choice of copy per index, weight r^{-n}.
inline DiscreteMeasure paving_measure(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("paving_measure: n, r >= 1");
  if (n * r > 20) throw resource_limit_error("paving_measure: r*n <= 20");
  DiscreteMeasure mu;
  mu.n = n * r;
  const uint32_t full = (1u << (n * r)) - 1;
  Rat w = rat_pow(Rat(1, r), n);
  std::vector<int> choice(n, 0);
  for (;;) {
    uint32_t removed = 0;
    for (int i = 0; i < n; ++i) removed |= 1u << (choice[i] * n + i);
    mu.weights[full & ~removed] = w;
    int pos = n - 1;
    while (pos >= 0 && choice[pos] == r - 1) choice[pos--] = 0;
    if (pos < 0) break;
    ++choice[pos];
  }
  mu.normalized = true;  // r^n atoms of weight r^{-n}
  return mu;
}

// The differential-operator form of the paving measure's generating
// polynomial: r^{-n} prod_i (sum_k d_{z_i^{(k)}}) applied to the product of
// all rn variables. Used to cross-check paving_measure.
inline MultilinearPoly<Rat> paving_measure_generating_by_formula(int n, int r) {
  if (n * r > 20) throw resource_limit_error("paving_measure_generating_by_formula: r*n <= 20");
  const int nv = n * r;
  MultilinearPoly<Rat> acc(nv);
  acc.set((1u << nv) - 1, Rat(1));  // product of all variables
  for (int i = 0; i < n; ++i) {
    MultilinearPoly<Rat> next(nv);
    for (int k = 0; k < r; ++k) next = next + acc.derivative(k * n + i);
    acc = next;
  }
  return acc.scaled(rat_pow(Rat(1, r), n));
}

}  // namespace chir
