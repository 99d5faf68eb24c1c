#pragma once

// Exact real-root analysis for rational-coefficient polynomials: Sturm
// sequences for counting, bisection for isolation, Yun decomposition for
// multiplicities, and the sorted-root criteria for interlacing and common
// interlacers. Real-rootedness here is a knife-edge property, so every
// decision is made in exact arithmetic; float-coefficient inputs enter
// through their exact dyadic lifts.

#include "chir/matrix.hpp"
#include "chir/scalars.hpp"
#include "chir/unipoly.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chir {

namespace rootdetail {

using IntPoly = std::vector<Int>;  // ascending, trailing zeros trimmed

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline long deg(const IntPoly& p) { return static_cast<long>(p.size()) - 1; }

// Primitive integer image of a rational polynomial (positive content removed,
// sign of the leading coefficient preserved).
inline IntPoly to_primitive(const UniPoly<Rat>& p) {
  Int lcm = 1;
  for (const auto& c : p.c) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  IntPoly q;
  q.reserve(p.c.size());
  for (const auto& c : p.c) q.push_back(numerator(c) * (lcm / denominator(c)));
  trim(q);
  Int g = 0;
  for (const auto& c : q) g = boost::multiprecision::gcd(g, c);
  if (g > 1)
    for (auto& c : q) c /= g;
  return q;
}

inline IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Int(static_cast<long>(k)));
  trim(d);
  return d;
}

// Sign of p(x) for rational x, via integer Horner on the homogenized form.
inline int sign_at(const IntPoly& p, const Rat& x) {
  if (p.empty()) return 0;
  const Int a = numerator(x), b = denominator(x);
  Int acc = p.back();
  Int bp = 1;
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    bp *= b;
    acc = acc * a + p[k] * bp;
  }
  return acc.sign();
}

// Rational-arithmetic remainder, then re-normalized to a primitive integer
// polynomial with the same sign (monic-PRS style, keeps coefficient growth
// polynomial in the degree).
inline UniPoly<Rat> to_rat(const IntPoly& p) {
  UniPoly<Rat> q;
  for (const auto& c : p) q.c.emplace_back(c);
  q.trim();
  return q;
}

inline std::pair<UniPoly<Rat>, UniPoly<Rat>> divrem(const UniPoly<Rat>& a, const UniPoly<Rat>& b) {
  if (b.zero()) throw std::domain_error("divrem: division by zero polynomial");
  UniPoly<Rat> q, r = a;
  while (!r.zero() && r.degree() >= b.degree()) {
    long sh = r.degree() - b.degree();
    Rat f = r.leading() / b.leading();
    UniPoly<Rat> t = UniPoly<Rat>::x_power(static_cast<std::size_t>(sh), f);
    q += t;
    r -= t * b;
  }
  return {q, r};
}

inline std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  chain.push_back(p);
  IntPoly d = derivative(p);
  if (d.empty()) return chain;
  chain.push_back(d);
  UniPoly<Rat> f = to_rat(p), g = to_rat(d);
  while (true) {
    auto [q, r] = divrem(f, g);
    (void)q;
    if (r.zero()) break;
    r = r * (Rat(-1) / rat_abs(r.leading()));  // negate and normalize magnitude
    chain.push_back(to_primitive(r));
    f = std::move(g);
    g = std::move(r);
  }
  return chain;
}

inline int variations_at(const std::vector<IntPoly>& chain, const Rat& x) {
  int v = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// Number of distinct real roots in (a, b]; requires p(a) != 0 and p(b) != 0.
inline int count_roots(const std::vector<IntPoly>& chain, const Rat& a, const Rat& b) {
  return variations_at(chain, a) - variations_at(chain, b);
}

// Power-of-two bound strictly exceeding every |root|.
inline Rat cauchy_bound(const IntPoly& p) {
  Rat lead = Rat(boost::multiprecision::abs(p.back()));
  Rat mx(0);
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    mx = std::max(mx, Rat(boost::multiprecision::abs(p[k])) / lead);
  Rat b(2);
  while (b < mx + 2) b *= 2;
  return b;
}

inline UniPoly<Rat> poly_gcd(UniPoly<Rat> a, UniPoly<Rat> b) {
  while (!b.zero()) {
    auto [q, r] = divrem(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.zero()) a = a * (Rat(1) / a.leading());  // monic
  return a;
}

inline UniPoly<Rat> exact_div(const UniPoly<Rat>& a, const UniPoly<Rat>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

// Yun's square-free decomposition: returns (factor, multiplicity) pairs with
// pairwise-coprime monic square-free factors whose weighted product is p up
// to a constant.
inline std::vector<std::pair<UniPoly<Rat>, int>> square_free_decomposition(const UniPoly<Rat>& p) {
  std::vector<std::pair<UniPoly<Rat>, int>> out;
  if (p.zero()) throw std::invalid_argument("square_free_decomposition: zero polynomial");
  if (p.degree() == 0) return out;
  UniPoly<Rat> dp = p.derivative();
  UniPoly<Rat> a = poly_gcd(p, dp);
  UniPoly<Rat> b = exact_div(p, a);
  UniPoly<Rat> c = exact_div(dp, a);
  UniPoly<Rat> d = c - b.derivative();
  int mult = 1;
  while (b.degree() > 0) {
    UniPoly<Rat> f = poly_gcd(b, d);
    if (f.degree() > 0) out.emplace_back(f, mult);
    b = exact_div(b, f);
    c = exact_div(d, f);
    d = c - b.derivative();
    ++mult;
  }
  return out;
}

inline UniPoly<Rat> square_free_part(const UniPoly<Rat>& p) {
  UniPoly<Rat> g = poly_gcd(p, p.derivative());
  UniPoly<Rat> h = exact_div(p, g);
  return h * (Rat(1) / h.leading());
}

struct Isolated {
  Rat lo, hi;     // point roots have lo == hi
  bool point = false;
};

// Interior split point that avoids a finite list of forbidden values.
inline Rat pick_split(const Rat& lo, const Rat& hi, const std::vector<Rat>& avoid) {
  Rat mid = (lo + hi) / 2;
  auto hits = [&](const Rat& m) {
    for (const auto& p : avoid)
      if (p == m) return true;
    return false;
  };
  while (hits(mid)) mid = (lo + mid) / 2;
  return mid;
}

// Isolating intervals for all real roots of a square-free polynomial, sorted
// by (lo, hi), endpoints never roots of the input (exact rational roots met
// at split points are recorded as point roots and divided out; the final
// pass's intervals are then refined until no recorded point touches them,
// which makes the (lo, hi) order a correct total order of the roots).
inline void isolate_square_free(UniPoly<Rat> f, std::vector<Isolated>& out) {
  std::vector<Rat> points;
  std::vector<Isolated> found;
  for (;;) {
    if (f.degree() <= 0) break;
    IntPoly fi = to_primitive(f);
    auto chain = sturm_chain(fi);
    Rat bound = cauchy_bound(fi);
    struct Task {
      Rat lo, hi;
      int count;
    };
    std::vector<Task> stack{{-bound, bound, count_roots(chain, -bound, bound)}};
    std::optional<Rat> rational_root;
    found.clear();
    while (!stack.empty()) {
      Task t = stack.back();
      stack.pop_back();
      if (t.count == 0) continue;
      if (t.count == 1) {
        found.push_back({t.lo, t.hi, false});
        continue;
      }
      Rat mid = pick_split(t.lo, t.hi, points);
      if (sign_at(fi, mid) == 0) {
        rational_root = mid;
        break;
      }
      int left = count_roots(chain, t.lo, mid);
      stack.push_back({t.lo, mid, left});
      stack.push_back({mid, t.hi, t.count - left});
    }
    if (!rational_root) {
      // shrink intervals until no divided-out point root touches them
      for (auto& iv : found) {
        int slo = sign_at(fi, iv.lo);
        for (bool moved = true; moved && !iv.point;) {
          moved = false;
          for (const auto& p : points) {
            while (!iv.point && iv.lo <= p && p <= iv.hi) {
              Rat mid = pick_split(iv.lo, iv.hi, points);
              int s = sign_at(fi, mid);
              if (s == 0) {
                iv.lo = iv.hi = mid;  // split point was the root itself
                iv.point = true;
              } else if (s == slo) {
                iv.lo = mid;
              } else {
                iv.hi = mid;
              }
              moved = true;
            }
          }
        }
      }
      break;
    }
    out.push_back({*rational_root, *rational_root, true});
    points.push_back(*rational_root);
    UniPoly<Rat> lin(std::vector<Rat>{-*rational_root, Rat(1)});
    f = exact_div(f, lin);
  }
  for (auto& r : found) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), [](const Isolated& a, const Isolated& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  });
}

inline void refine(Isolated& iv, const IntPoly& f, const Rat& width) {
  if (iv.point) return;
  int slo = sign_at(f, iv.lo);
  while (iv.hi - iv.lo > width) {
    Rat mid = (iv.lo + iv.hi) / 2;
    int sm = sign_at(f, mid);
    if (sm == 0) {
      iv.lo = iv.hi = mid;
      iv.point = true;
      return;
    }
    if (sm == slo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
}

// Does the square-free polynomial g have a root inside the isolating region
// of iv? Assumes g's roots are a subset of the roots of the polynomial that
// produced iv, so the answer is a membership bit.
inline bool contains_root_of(const Isolated& iv, const IntPoly& g,
                             const std::vector<IntPoly>& g_chain) {
  if (iv.point) return sign_at(g, iv.lo) == 0;
  return count_roots(g_chain, iv.lo, iv.hi) > 0;
}

}  // namespace rootdetail

// One real root: exact isolating interval (or exact rational point) plus its
// multiplicity in the queried polynomial.
struct RootInterval {
  Rat lo, hi;
  bool point = false;
  int multiplicity = 1;
  double approx() const { return to_double((lo + hi) / 2); }
};

inline const Rat& default_root_width() {
  static const Rat w = Rat(1) / Rat(Int(1) << 44);  // ~5.7e-14
  return w;
}

// All real roots with multiplicities, sorted ascending, each refined to the
// requested interval width.
inline std::vector<RootInterval> real_roots(const UniPoly<Rat>& p, const Rat& width = default_root_width()) {
  if (p.zero()) throw std::invalid_argument("real_roots: zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;
  auto factors = rootdetail::square_free_decomposition(p);
  UniPoly<Rat> h = rootdetail::square_free_part(p);
  rootdetail::IntPoly hi = rootdetail::to_primitive(h);
  std::vector<rootdetail::Isolated> ivs;
  rootdetail::isolate_square_free(h, ivs);
  struct FactorData {
    rootdetail::IntPoly poly;
    std::vector<rootdetail::IntPoly> chain;
    int mult;
  };
  std::vector<FactorData> fd;
  for (auto& [f, m] : factors) {
    rootdetail::IntPoly fp = rootdetail::to_primitive(f);
    fd.push_back({fp, rootdetail::sturm_chain(fp), m});
  }
  for (auto& iv : ivs) {
    int mult = 0;
    for (auto& f : fd)
      if (rootdetail::contains_root_of(iv, f.poly, f.chain)) {
        mult = f.mult;
        break;
      }
    if (mult == 0) throw std::logic_error("real_roots: root lost between factors");
    rootdetail::refine(iv, hi, width);
    out.push_back({iv.lo, iv.hi, iv.point, mult});
  }
  return out;  // isolate_square_free already emits roots in ascending order
}

// True iff the number of real roots counted with multiplicity equals the
// degree. Exact decision.
inline bool is_real_rooted(const UniPoly<Rat>& p) {
  if (p.zero()) throw std::invalid_argument("is_real_rooted: zero polynomial");
  if (p.degree() == 0) return true;
  long total = 0;
  for (auto& [f, m] : rootdetail::square_free_decomposition(p)) {
    rootdetail::IntPoly fi = rootdetail::to_primitive(f);
    auto chain = rootdetail::sturm_chain(fi);
    Rat b = rootdetail::cauchy_bound(fi);
    total += static_cast<long>(m) * rootdetail::count_roots(chain, -b, b);
  }
  return total == p.degree();
}

inline RootInterval max_root_exact(const UniPoly<Rat>& p, const Rat& width = default_root_width()) {
  auto roots = real_roots(p, width);
  if (roots.empty()) throw std::domain_error("max_root: no real roots");
  return roots.back();
}

inline double max_root(const UniPoly<Rat>& p) { return max_root_exact(p).approx(); }
inline double max_root(const UniPoly<double>& p) { return max_root(lift_poly(p)); }

namespace rootdetail {

// Shared root grid of two polynomials: positions of the distinct roots of
// p*q in ascending order, with each polynomial's multiplicity at every
// position. Equal roots are detected exactly (they are the same isolated
// root of the product's square-free part), so ties cost nothing.
struct MergedRoots {
  std::vector<int> mult_p, mult_q;  // parallel, per distinct root
};

inline MergedRoots merged_root_grid(const UniPoly<Rat>& p, const UniPoly<Rat>& q) {
  UniPoly<Rat> h = square_free_part(p * q);
  std::vector<Isolated> ivs;
  isolate_square_free(h, ivs);
  struct FD {
    IntPoly poly;
    std::vector<IntPoly> chain;
    int mult;
  };
  auto build = [](const UniPoly<Rat>& f) {
    std::vector<FD> v;
    for (auto& [g, m] : square_free_decomposition(f)) {
      IntPoly gi = to_primitive(g);
      v.push_back({gi, sturm_chain(gi), m});
    }
    return v;
  };
  std::vector<FD> fp = build(p), fq = build(q);
  MergedRoots out;
  for (auto& iv : ivs) {
    int mp = 0, mq = 0;
    for (auto& f : fp)
      if (contains_root_of(iv, f.poly, f.chain)) {
        mp = f.mult;
        break;
      }
    for (auto& f : fq)
      if (contains_root_of(iv, f.poly, f.chain)) {
        mq = f.mult;
        break;
      }
    out.mult_p.push_back(mp);
    out.mult_q.push_back(mq);
  }
  return out;
}

// Roots listed with multiplicity as indices into the distinct-root grid.
inline std::vector<int> expand(const std::vector<int>& mult) {
  std::vector<int> seq;
  for (std::size_t i = 0; i < mult.size(); ++i)
    for (int k = 0; k < mult[i]; ++k) seq.push_back(static_cast<int>(i));
  return seq;
}

// Weak interlacing of b inside a, |b| == |a| - 1: a1 <= b1 <= a2 <= ... <= am.
inline bool interlace_pattern(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t t = 0; t < b.size(); ++t)
    if (!(a[t] <= b[t] && b[t] <= a[t + 1])) return false;
  return true;
}

}  // namespace rootdetail

// Weak interlacing test (ties allowed). Preconditions from the calculus of
// interlacing families: both inputs real-rooted, deg q in {deg p, deg p - 1}.
inline bool interlaces(const UniPoly<Rat>& p, const UniPoly<Rat>& q) {
  if (p.zero() || q.zero()) throw std::invalid_argument("interlaces: zero polynomial");
  if (!is_real_rooted(p) || !is_real_rooted(q))
    throw std::invalid_argument("interlaces: inputs must be real-rooted");
  long dp = p.degree(), dq = q.degree();
  if (dq != dp && dq != dp - 1) throw std::invalid_argument("interlaces: degree mismatch");
  auto grid = rootdetail::merged_root_grid(p, q);
  auto a = rootdetail::expand(grid.mult_p), b = rootdetail::expand(grid.mult_q);
  if (dq == dp - 1) return rootdetail::interlace_pattern(a, b);
  // equal degrees: accept either orientation of the alternation
  auto shifted_ok = [](const std::vector<int>& u, const std::vector<int>& v) {
    // u1 <= v1 <= u2 <= v2 <= ... <= um <= vm
    for (std::size_t t = 0; t < u.size(); ++t) {
      if (!(u[t] <= v[t])) return false;
      if (t + 1 < u.size() && !(v[t] <= u[t + 1])) return false;
    }
    return true;
  };
  return shifted_ok(a, b) || shifted_ok(b, a);
}

// Common-interlacer decision for same-degree real-rooted polynomials with
// positive leading coefficients, via the sorted-root interleaving criterion
// (equivalent to the convex-combination characterization). Ties allowed.
inline bool has_common_interlacer(const UniPoly<Rat>& p, const UniPoly<Rat>& q) {
  if (p.zero() || q.zero()) throw std::invalid_argument("has_common_interlacer: zero polynomial");
  if (p.degree() != q.degree())
    throw std::invalid_argument("has_common_interlacer: degree mismatch");
  if (!(p.leading() > 0) || !(q.leading() > 0))
    throw std::invalid_argument("has_common_interlacer: leading coefficients must be positive");
  if (!is_real_rooted(p) || !is_real_rooted(q))
    throw std::invalid_argument("has_common_interlacer: inputs must be real-rooted");
  auto grid = rootdetail::merged_root_grid(p, q);
  auto a = rootdetail::expand(grid.mult_p), b = rootdetail::expand(grid.mult_q);
  const std::size_t m = a.size();
  for (std::size_t t = 0; t + 1 < m; ++t)
    if (!(std::max(a[t], b[t]) <= std::min(a[t + 1], b[t + 1]))) return false;
  return true;
}

// Independent oracle: every sampled convex combination alpha*p + (1-alpha)*q
// must be real-rooted. Exact on each grid point.
inline bool common_interlacer_grid_oracle(const UniPoly<Rat>& p, const UniPoly<Rat>& q,
                                          int points = 101) {
  for (int k = 0; k < points; ++k) {
    Rat alpha(k, points - 1);
    UniPoly<Rat> combo = p * alpha + q * (Rat(1) - alpha);
    if (combo.zero()) continue;
    if (!is_real_rooted(combo)) return false;
  }
  return true;
}

// ---- eigen-extremes and resolvents (hermitian matrices) ----

inline RootInterval max_eigenvalue_exact(const MatQ& a) {
  if (a.n == 0) throw std::domain_error("max_eigenvalue: empty matrix");
  return max_root_exact(char_poly(a));
}

inline double max_eigenvalue(const MatQ& a) { return max_eigenvalue_exact(a).approx(); }
inline double max_eigenvalue(const MatD& a) { return max_eigenvalue(lift(a)); }

// e_i^* (bI - A)^{-1} e_i, exact; requires b strictly above the spectrum.
inline Rat resolvent_diagonal(const MatQ& a, const Rat& b, int i) {
  if (i < 0 || i >= a.n) throw std::out_of_range("resolvent_diagonal: index");
  RootInterval lam = max_eigenvalue_exact(a);
  // decide b > lambda_max exactly
  while (!(b > lam.hi) && !(b <= lam.lo || lam.point)) {
    rootdetail::IntPoly f = rootdetail::to_primitive(char_poly(a));
    rootdetail::Isolated iv{lam.lo, lam.hi, lam.point};
    rootdetail::refine(iv, f, (lam.hi - lam.lo) / 16);
    lam.lo = iv.lo;
    lam.hi = iv.hi;
    lam.point = iv.point;
  }
  bool above = lam.point ? (b > lam.lo) : (b > lam.hi);
  if (!above) throw std::domain_error("resolvent_diagonal: not above roots");
  MatQ m = Matrix<CRat>::identity(a.n) * CRat(b) - a;
  MatQ inv = inverse(m);
  CRat v = inv.at(i, i);
  if (v.im != 0) throw std::logic_error("resolvent_diagonal: nonreal diagonal");
  return v.re;
}

inline double resolvent_diagonal(const MatD& a, double b, int i) {
  return to_double(resolvent_diagonal(lift(a), rat_from_double(b), i));
}

// Solve-only variant for inner optimization loops; the caller guarantees b
// is above the spectrum.
inline double resolvent_diagonal_unchecked(const MatD& a, double b, int i) {
  MatD m = Matrix<CDbl>::identity(a.n) * CDbl(b) - a;
  MatD inv = inverse(m);
  return inv.at(i, i).re;
}

}  // namespace chir
