#pragma once

// Barrier potentials for det(Z-A)^r, the root-bound machinery built on them
// (optimized and closed-form), the reduced trace inequalities behind the
// degree-3 and degree-4 shift rules, and the two counterexample
// reproductions: the bivariate polynomial where the naive 1/Phi shift fails,
// and the randomized search refuting the det_2 submatrix inequality.

#include "chir/bound_report.hpp"
#include "chir/detr.hpp"
#include "chir/matrix.hpp"
#include "chir/parallel.hpp"
#include "chir/rng.hpp"
#include "chir/roots.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace chir {

// Phi_p^i at the scalar diagonal point z = b*1 for p = det[Z-A]^r:
// r * e_i^T (bI-A)^{-1} e_i. Errors unless b is above the spectrum.
inline Rat phi(const MatQ& a, int r, const Rat& b, int i) {
  return resolvent_diagonal(a, b, i) * Rat(r);
}

inline double phi(const MatD& a, int r, double b, int i) {
  return resolvent_diagonal(a, b, i) * r;
}

// delta/(b-1) + (1-delta)/b: the sharp bound on the resolvent diagonal of a
// positive contraction whose diagonal entries are at most delta.
inline double phi_diagonal_bound(double delta, double b) {
  if (delta < 0 || delta > 1) throw std::invalid_argument("phi_diagonal_bound: 0 <= delta <= 1");
  if (!(b > 1)) throw std::domain_error("phi_diagonal_bound: b > 1 required");
  return delta / (b - 1) + (1 - delta) / b;
}

// max root chi_2[A] <= inf_b (b - min_i 1/(4 e_i^T(bI-A)^{-1}e_i)), minimized
// by golden-section over b in (lambda_max, lambda_max + 10]. The objective is
// unimodal on every test family; the bracket is part of the report.
inline BoundReport root_bound_2(const MatQ& a, bool certify = true) {
  const int n = a.n;
  if (n < 1) throw std::invalid_argument("root_bound_2: empty matrix");
  RootInterval lam = max_eigenvalue_exact(a);
  RootInterval lo_eig = real_roots(char_poly(a)).front();
  if (lo_eig.approx() < -1e-9 || lam.approx() > 1 + 1e-9)
    throw std::invalid_argument("root_bound_2: input must be a positive contraction");
  const double lmax = lam.approx();
  MatD af = to_float(a);
  auto objective = [&](double b) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      worst = std::min(worst, 1.0 / (4.0 * resolvent_diagonal_unchecked(af, b, i)));
    return b - worst;
  };
  double lo = lmax + 1e-9, hi = lmax + 10.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = objective(c), fd = objective(d);
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = objective(d);
    }
  }
  BoundReport rep;
  rep.r = 2;
  double dmax = 0;
  for (int i = 0; i < n; ++i) dmax = std::max(dmax, to_double(a.at(i, i).re));
  rep.delta = dmax;
  rep.b_star = (lo + hi) / 2;
  rep.bound = objective(rep.b_star);
  if (certify && n <= 6) {
    rep.certified_max_root = max_root(chi_r(a, Rat(2)));
    if (*rep.certified_max_root > rep.bound + 1e-8)
      throw std::logic_error("root_bound_2: certified root exceeds the bound");
  }
  return rep;
}

// Closed-form paving bounds: for r in {2,3,4} and diagonal bound delta up to
// the threshold ((r-1)/r)^2,
//   (1/r^2) (sqrt((2r-1)(1-delta)) + (r-1) sqrt(delta))^2,
// clamped to the trivial value 1 past the threshold.
inline double closed_form_bound(double delta, int r) {
  if (r < 2 || r > 4) throw std::invalid_argument("closed_form_bound: r in {2,3,4}");
  if (delta < 0 || delta > 1) throw std::invalid_argument("closed_form_bound: 0 <= delta <= 1");
  double threshold = static_cast<double>((r - 1) * (r - 1)) / (r * r);
  if (delta > threshold) return 1.0;
  double s = std::sqrt((2.0 * r - 1.0) * (1.0 - delta)) + (r - 1.0) * std::sqrt(delta);
  return std::min(1.0, s * s / (r * r));
}

struct ConjecturedBounds {
  double root_shrink;   // (1/r)(sqrt(1-delta) + sqrt((r-1) delta))^2
  double paving_bound;  // (1/r^2)(sqrt((2r-1)(1-delta)) + (r-1) sqrt(delta))^2
};

// Both conjectured forms; never used as certified bounds.
inline ConjecturedBounds conjectured_bound(double delta, int r) {
  if (r < 2) throw std::invalid_argument("conjectured_bound: r >= 2");
  if (delta < 0 || delta > 1) throw std::invalid_argument("conjectured_bound: 0 <= delta <= 1");
  double s1 = std::sqrt(1.0 - delta) + std::sqrt((r - 1.0) * delta);
  double s2 = std::sqrt((2.0 * r - 1.0) * (1.0 - delta)) + (r - 1.0) * std::sqrt(delta);
  return {s1 * s1 / r, s2 * s2 / (r * r)};
}

// ---- reduced trace inequalities (degree-3 and degree-4 shift rules) ----

// The scalar inequality a rank-k determinantal slice must satisfy, written
// in trace form with X = diag(lambda), Y's diagonal = x:
//   k=3:  4 T2 <XY> + 6 T1 <X^2 Y> - 2 T1^2 <XY> - 8 <X^3 Y> >= 0
//   k=4:  (24 T1 T2 - 6 T1^3 - 18 T3)<XY> + (21 T1^2 - 27 T2)<X^2 Y>
//          - 48 T1 <X^3 Y> + 54 <X^4 Y> >= 0
// with T_m = tr X^m and <M> = tr M. Nonnegative for nonnegative inputs.
template <class R>
R trace_inequality(int k, const std::vector<R>& lambda, const std::vector<R>& x) {
  if (k != 3 && k != 4) throw std::invalid_argument("trace_inequality: k in {3,4}");
  if (static_cast<int>(lambda.size()) != k || static_cast<int>(x.size()) != k)
    throw std::invalid_argument("trace_inequality: need k values each");
  for (int i = 0; i < k; ++i)
    if (lambda[i] < R(0) || x[i] < R(0))
      throw std::invalid_argument("trace_inequality: inputs must be nonnegative");
  R t1(0), t2(0), t3(0), xy(0), x2y(0), x3y(0), x4y(0);
  for (int i = 0; i < k; ++i) {
    R l = lambda[i], l2 = l * l;
    t1 += l;
    t2 += l2;
    t3 += l2 * l;
    xy += l * x[i];
    x2y += l2 * x[i];
    x3y += l2 * l * x[i];
    x4y += l2 * l2 * x[i];
  }
  if (k == 3) return t2 * xy * R(4) + t1 * x2y * R(6) - t1 * t1 * xy * R(2) - x3y * R(8);
  return (t1 * t2 * R(24) - t1 * t1 * t1 * R(6) - t3 * R(18)) * xy +
         (t1 * t1 * R(21) - t2 * R(27)) * x2y - t1 * x3y * R(48) + x4y * R(54);
}

// The same quantities in factored form, which makes nonnegativity manifest:
//   k=3:  2 l_i x_i [(l_j - l_k)^2 + l_i(l_j + l_k)]  summed over i
//   k=4:  6 l_i x_i [ l_j(l_k-l_m)^2 + l_k(l_j-l_m)^2 + l_m(l_j-l_k)^2
//                     + l_i (l_j l_k + l_j l_m + l_k l_m) ]  summed over i
// Pinned to the trace form by an exact identity test.
template <class R>
R trace_inequality_reduced(int k, const std::vector<R>& lambda, const std::vector<R>& x) {
  if (k != 3 && k != 4) throw std::invalid_argument("trace_inequality_reduced: k in {3,4}");
  R acc(0);
  if (k == 3) {
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, m = (i + 2) % 3;
      R d = lambda[j] - lambda[m];
      acc += lambda[i] * x[i] * (d * d + lambda[i] * (lambda[j] + lambda[m])) * R(2);
    }
    return acc;
  }
  for (int i = 0; i < 4; ++i) {
    std::vector<R> o;
    for (int t = 0; t < 4; ++t)
      if (t != i) o.push_back(lambda[t]);
    R d01 = o[0] - o[1], d02 = o[0] - o[2], d12 = o[1] - o[2];
    R bracket = o[0] * d12 * d12 + o[1] * d02 * d02 + o[2] * d01 * d01 +
                lambda[i] * (o[0] * o[1] + o[0] * o[2] + o[1] * o[2]);
    acc += lambda[i] * x[i] * bracket * R(6);
  }
  return acc;
}

// ---- barrier shift verification on det(Z-A)^r ----

struct ShiftCheckReport {
  bool pass = true;
  std::string first_failure;
  int comparisons = 0;
};

// Exact verification that Phi^j_{(d/dz_i)^{r-1} q}(z - delta e_i) <= Phi^j_q(z)
// with q = d^S det(Z-A)^r, z = b*1, and delta = rule_c / Phi_q^i(z), for all
// i outside S, all j != i, over a grid of b values above the spectrum.
// rule_c is 1/2, 4/3 or 9/4 for r = 2, 3, 4.
inline ShiftCheckReport barrier_shift_check(const MatQ& a, int r, const std::vector<int>& s_set,
                                            const Rat& rule_c, const std::vector<Rat>& b_grid) {
  const int n = a.n;
  if (n > 4 || r > 4) throw resource_limit_error("barrier_shift_check: n <= 4, r <= 4");
  if (!is_hermitian(a)) throw std::invalid_argument("barrier_shift_check: hermitian input");
  ShiftCheckReport rep;
  RootInterval lam = max_eigenvalue_exact(a);
  // p = det(Z-A)^r in the full polynomial ring (degree r per variable)
  zcap::Poly<CRat> base;
  const uint32_t full = (1u << n) - 1;
  for (uint32_t mask = 0;; ++mask) {
    // det[Z + (-A)] coefficient of z^mask: det of (-A) with mask removed
    MatQ sub = submatrix_removed_mask(a, mask) * CRat(Rat(-1));
    CRat minor = determinant(sub);
    if (!(minor.re == 0 && minor.im == 0)) {
      zcap::Key k = 0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) k |= static_cast<zcap::Key>(1) << (4 * i);
      base.emplace(k, minor);
    }
    if (mask == full) break;
  }
  zcap::Poly<CRat> p{{0, CRat(Rat(1))}};
  for (int k = 0; k < r; ++k) p = zcap::mul(p, base, n, r);
  zcap::Poly<CRat> q = p;
  for (int i : s_set) {
    if (i < 0 || i >= n) throw std::out_of_range("barrier_shift_check: S index");
    q = zcap::derivative(q, i);
  }
  auto real_eval = [&](const zcap::Poly<CRat>& f, const std::vector<Rat>& z) {
    CRat v = zcap::eval(f, z, n);
    if (v.im != 0) throw std::logic_error("barrier_shift_check: nonreal value");
    return v.re;
  };
  auto in_s = [&](int i) {
    for (int v : s_set)
      if (v == i) return true;
    return false;
  };
  for (const Rat& b : b_grid) {
    if (!(b > lam.hi)) throw std::domain_error("barrier_shift_check: grid point not above roots");
    std::vector<Rat> z(n, b);
    Rat qz = real_eval(q, z);
    if (!(qz > 0)) {
      rep.pass = false;
      rep.first_failure = "q not positive at grid point";
      return rep;
    }
    for (int i = 0; i < n && rep.pass; ++i) {
      if (in_s(i)) continue;
      zcap::Poly<CRat> qi = q;
      for (int d = 0; d < r - 1; ++d) qi = zcap::derivative(qi, i);
      Rat phi_i = real_eval(zcap::derivative(q, i), z) / qz;
      if (!(phi_i > 0)) {
        rep.pass = false;
        rep.first_failure = "Phi_q^i not positive";
        break;
      }
      Rat delta = rule_c / phi_i;
      std::vector<Rat> zs = z;
      zs[i] -= delta;
      Rat qiz = real_eval(qi, zs);
      if (!(qiz > 0)) {
        rep.pass = false;
        rep.first_failure = "shifted point not above the roots of the iterated derivative";
        break;
      }
      for (int j = 0; j < n; ++j) {
        if (j == i || in_s(j)) continue;
        ++rep.comparisons;
        Rat lhs = real_eval(zcap::derivative(qi, j), zs) / qiz;
        Rat rhs = real_eval(zcap::derivative(q, j), z) / qz;
        if (!(lhs <= rhs)) {
          rep.pass = false;
          rep.first_failure = "potential increased at i=" + std::to_string(i) +
                              ", j=" + std::to_string(j) + ", b=" + format_rational(b);
          break;
        }
      }
    }
    if (!rep.pass) break;
  }
  return rep;
}

// ---- the bivariate counterexample ----

struct BivariateReport {
  Rat phi_x, phi_y;            // 3/4 and 5/16
  Rat delta;                   // 1/Phi_x = 4/3
  Rat shifted_value;           // Phi_{dp/dx}^y at (1,1) - delta e_x
  Rat value_at_printed_point;  // same potential at the often-quoted point (-4/3, 1)
  Rat printed_value{Rat(27, 73)};  // the constant quoted alongside this example; matches
                                   // neither evaluation, and both evaluations violate 5/16
  bool strict_violation = false;
  std::string point_used;
};

// p(x,y) = (7+8x+y)(8+4x+4y): the naive 1/Phi barrier shift fails for it.
// Everything is evaluated exactly from the polynomial itself.
inline BivariateReport bivariate_counterexample() {
  zcap::Poly<CRat> f1, f2;
  auto key = [](int ex, int ey) {
    return static_cast<zcap::Key>(ex) | (static_cast<zcap::Key>(ey) << 4);
  };
  f1.emplace(key(0, 0), CRat(Rat(7)));
  f1.emplace(key(1, 0), CRat(Rat(8)));
  f1.emplace(key(0, 1), CRat(Rat(1)));
  f2.emplace(key(0, 0), CRat(Rat(8)));
  f2.emplace(key(1, 0), CRat(Rat(4)));
  f2.emplace(key(0, 1), CRat(Rat(4)));
  auto p = zcap::mul(f1, f2, 2, 2);
  auto px = zcap::derivative(p, 0);
  auto py = zcap::derivative(p, 1);
  auto pxy = zcap::derivative(px, 1);
  auto ev = [&](const zcap::Poly<CRat>& f, const Rat& x, const Rat& y) {
    return zcap::eval(f, std::vector<Rat>{x, y}, 2).re;
  };
  BivariateReport rep;
  Rat one(1);
  rep.phi_x = ev(px, one, one) / ev(p, one, one);
  rep.phi_y = ev(py, one, one) / ev(p, one, one);
  rep.delta = Rat(1) / rep.phi_x;
  Rat xs = one - rep.delta;  // the honest shifted point (1 - 4/3, 1)
  rep.shifted_value = ev(pxy, xs, one) / ev(px, xs, one);
  rep.value_at_printed_point = ev(pxy, Rat(-4, 3), one) / ev(px, Rat(-4, 3), one);
  rep.strict_violation = rep.shifted_value > rep.phi_y;
  rep.point_used = "(1,1) - delta*e_x = (" + format_rational(xs) + ", 1)";
  return rep;
}

// ---- randomized counterexample search for the det_2 statement ----

struct StatementWitness {
  MatQ b;
  std::vector<int> s;  // 0-based index set
  Rat lhs, rhs;        // exact values of the two sides
  long trial = 0;
};

namespace stmtdetail {

inline Rat det2_real(const MatQ& b, const IndexMultiset& s) {
  CRat v = det_r_perm(submatrix_kept(b, s), Rat(2));
  if (v.im != 0) throw std::logic_error("statement search: nonreal det_2");
  return v.re;
}

// Exact evaluation of lhs and rhs of the statement for base set s (indices
// 0-based; the distinguished pair is {0, 1}).
inline bool evaluate_exact(const MatQ& b, const std::vector<int>& s, Rat& lhs, Rat& rhs) {
  auto with = [&](std::initializer_list<int> extra) {
    std::vector<int> v = s;
    v.insert(v.end(), extra);
    return IndexMultiset(v);
  };
  Rat ds = det2_real(b, IndexMultiset(s));
  if (ds == 0) return false;
  Rat d1 = det2_real(b, with({0}));
  Rat d2 = det2_real(b, with({1}));
  Rat d12 = det2_real(b, with({0, 1}));
  Rat d11 = det2_real(b, with({0, 0}));
  Rat d112 = det2_real(b, with({0, 0, 1}));
  lhs = (d1 * d12 + d11 * d2) / (ds * ds);
  rhs = d1 * d1 * d2 / (ds * ds * ds) + d112 / ds;
  return true;
}

inline double det2_dbl(const MatD& b, const IndexMultiset& s) {
  return det_r_perm(submatrix_kept(b, s), 2.0).re;
}

}  // namespace stmtdetail

// The S = empty case of the statement, which always holds; exposed so tests
// can sweep it.
inline bool statement_holds_empty(const MatQ& b) {
  Rat lhs, rhs;
  if (!stmtdetail::evaluate_exact(b, {}, lhs, rhs)) return true;  // degenerate, not a violation
  return lhs <= rhs;
}

// Random search for a hermitian B and singleton S in {3..n} (1-based; here
// {2..n-1}) violating the statement's inequality. Trials are float-screened
// and every candidate is confirmed in exact arithmetic before being
// returned, so any witness is verified. Chunked deterministically: the
// witness in the lowest-numbered chunk wins regardless of thread count.
inline std::optional<StatementWitness> statement_counterexample_search(int n, long budget,
                                                                       uint64_t seed,
                                                                       int threads = 1) {
  if (n < 3) throw std::invalid_argument("statement_counterexample_search: n >= 3");
  if (budget < 1) throw std::invalid_argument("statement_counterexample_search: budget >= 1");
  const long chunk_size = 1000;
  const int nchunks = static_cast<int>((budget + chunk_size - 1) / chunk_size);
  std::vector<std::optional<StatementWitness>> results(nchunks);
  run_chunks(nchunks, threads, [&](int c) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ull * static_cast<uint64_t>(c + 1)));
    const long lo = c * chunk_size;
    const long hi = std::min(budget, lo + chunk_size);
    for (long trial = lo; trial < hi; ++trial) {
      MatQ b = random_hermitian(rng, n, 16, 8);
      int sidx = (n == 3) ? 2 : rng.uniform_int(2, n - 1);
      std::vector<int> s{sidx};
      // float screen
      MatD bf = to_float(b);
      auto withf = [&](std::initializer_list<int> extra) {
        std::vector<int> v = s;
        v.insert(v.end(), extra);
        return IndexMultiset(v);
      };
      double ds = stmtdetail::det2_dbl(bf, IndexMultiset(s));
      if (std::fabs(ds) < 1e-9) continue;
      double d1 = stmtdetail::det2_dbl(bf, withf({0}));
      double d2 = stmtdetail::det2_dbl(bf, withf({1}));
      double d12 = stmtdetail::det2_dbl(bf, withf({0, 1}));
      double d11 = stmtdetail::det2_dbl(bf, withf({0, 0}));
      double d112 = stmtdetail::det2_dbl(bf, withf({0, 0, 1}));
      double lhs = (d1 * d12 + d11 * d2) / (ds * ds);
      double rhs = d1 * d1 * d2 / (ds * ds * ds) + d112 / ds;
      if (!(lhs > rhs + 1e-9 * (1 + std::fabs(rhs)))) continue;
      Rat elhs, erhs;
      if (!stmtdetail::evaluate_exact(b, s, elhs, erhs)) continue;
      if (elhs > erhs) {
        results[c] = StatementWitness{b, s, elhs, erhs, trial};
        return;
      }
    }
  });
  for (auto& r : results)
    if (r) return r;
  return std::nullopt;
}

}  // namespace chir
