#pragma once

// Paving enumeration and analysis: the paving characteristic-polynomial sum
// (which equals chi_r exactly), exhaustive and greedy searches for the
// paving minimizing the pinched top eigenvalue, the binary-tree interlacing
// family certification for 2-pavings, and expected characteristic
// polynomials for discrete measures on subsets.

#include "chir/bound_report.hpp"
#include "chir/detr.hpp"
#include "chir/matrix.hpp"
#include "chir/multilinear.hpp"
#include "chir/rng.hpp"
#include "chir/roots.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chir {

// All r^n ordered pavings in lexicographic assign order (last index varies
// fastest); the callback may return false to stop early.
template <class F>
void enumerate_pavings(int n, int r, F&& f) {
  if (n < 1 || r < 1) throw std::invalid_argument("enumerate_pavings: n, r >= 1");
  if (n * std::log2(static_cast<double>(r)) > 26.6)  // r^n <= 1e8
    throw resource_limit_error("enumerate_pavings: r^n budget exceeded");
  std::vector<int> assign(n, 0);
  for (;;) {
    if (!f(assign)) return;
    int pos = n - 1;
    while (pos >= 0 && assign[pos] == r - 1) assign[pos--] = 0;
    if (pos < 0) return;
    ++assign[pos];
  }
}

inline long paving_count(int n, int r) {
  long c = 1;
  for (int i = 0; i < n; ++i) c *= r;
  return c;
}

namespace pavdetail {

// char polys of every kept principal submatrix, indexed by mask
inline std::vector<UniPoly<Rat>> kept_charpolys(const MatQ& a) {
  const uint32_t full = a.n == 0 ? 0u : (1u << a.n) - 1;
  std::vector<UniPoly<Rat>> cp(full + 1u);
  for (uint32_t mask = 0;; ++mask) {
    cp[mask] = char_poly(submatrix_kept_mask(a, mask));
    if (mask == full) break;
  }
  return cp;
}

}  // namespace pavdetail

// sum over all r^n pavings X of chi[A_X]; equals chi_r[A] coefficientwise.
// chi[A_X] factors over the blocks, so the sum is assembled from the 2^n
// kept-submatrix characteristic polynomials.
inline UniPoly<Rat> paving_charpoly_sum(const MatQ& a, int r) {
  if (!is_hermitian(a)) throw std::invalid_argument("paving_charpoly_sum: hermitian input required");
  auto cp = pavdetail::kept_charpolys(a);
  UniPoly<Rat> total;
  enumerate_pavings(a.n, r, [&](const std::vector<int>& assign) {
    std::vector<uint32_t> block_mask(r, 0);
    for (int i = 0; i < a.n; ++i) block_mask[assign[i]] |= 1u << i;
    UniPoly<Rat> prod = UniPoly<Rat>::constant(Rat(1));
    for (int b = 0; b < r; ++b) prod = prod * cp[block_mask[b]];
    total += prod;
    return true;
  });
  return total;
}

struct PavingReport {
  Paving paving;
  double pinch_max_eig = 0.0;
  UniPoly<Rat> charpoly;  // of the pinched matrix
  std::optional<BoundReport> bound_used;
};

namespace pavdetail {

// max eigenvalue of the pinch = max over blocks of the block's top root;
// memoized per kept-mask.
struct BlockEigCache {
  const std::vector<UniPoly<Rat>>* cp;
  std::map<uint32_t, double> memo;

  double top(uint32_t mask) {
    if (mask == 0) return -std::numeric_limits<double>::infinity();
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    double v = max_root((*cp)[mask]);
    memo.emplace(mask, v);
    return v;
  }
};

inline double paving_value(BlockEigCache& cache, const std::vector<uint32_t>& block_masks) {
  double v = -std::numeric_limits<double>::infinity();
  for (uint32_t m : block_masks) v = std::max(v, cache.top(m));
  return v;
}

inline PavingReport make_report(const MatQ& a, int r, const std::vector<int>& assign,
                                double value) {
  Paving p(a.n, r, assign);
  PavingReport rep;
  rep.paving = p;
  rep.pinch_max_eig = value;
  rep.charpoly = char_poly(pinch(a, p));
  return rep;
}

}  // namespace pavdetail

// Scan all r^n pavings for the one minimizing the pinched top eigenvalue;
// ties resolve to the lexicographically first assign vector. The returned
// optimum is checked against the guarantee min <= max root chi_r[A].
inline PavingReport best_paving_exhaustive(const MatQ& a, int r) {
  if (!is_hermitian(a))
    throw std::invalid_argument("best_paving_exhaustive: hermitian input required");
  auto cp = pavdetail::kept_charpolys(a);
  pavdetail::BlockEigCache cache{&cp, {}};
  std::vector<int> best_assign;
  double best = std::numeric_limits<double>::infinity();
  enumerate_pavings(a.n, r, [&](const std::vector<int>& assign) {
    std::vector<uint32_t> masks(r, 0);
    for (int i = 0; i < a.n; ++i) masks[assign[i]] |= 1u << i;
    double v = pavdetail::paving_value(cache, masks);
    if (v < best - 1e-12) {
      best = v;
      best_assign = assign;
    }
    return true;
  });
  double guarantee = max_root(chi_r(a, Rat(r)));
  if (best > guarantee + 1e-9)
    throw std::logic_error("best_paving_exhaustive: optimum above the chi_r root guarantee");
  return pavdetail::make_report(a, r, best_assign, best);
}

// Seeded first-improvement local search over single-index block moves.
// Deterministic for a fixed seed; at most paving-suboptimal, never below the
// exhaustive optimum.
inline PavingReport best_paving_greedy(const MatQ& a, int r, uint64_t seed) {
  if (!is_hermitian(a)) throw std::invalid_argument("best_paving_greedy: hermitian input required");
  auto cp = pavdetail::kept_charpolys(a);
  pavdetail::BlockEigCache cache{&cp, {}};
  Rng rng(seed);
  const int n = a.n;
  std::vector<int> assign(n);
  for (int i = 0; i < n; ++i) assign[i] = rng.uniform_int(0, r - 1);
  std::vector<int> scan(n);
  std::iota(scan.begin(), scan.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(scan[i], scan[rng.uniform_int(0, i)]);

  auto value_of = [&](const std::vector<int>& as) {
    std::vector<uint32_t> masks(r, 0);
    for (int i = 0; i < n; ++i) masks[as[i]] |= 1u << i;
    return pavdetail::paving_value(cache, masks);
  };
  double cur = value_of(assign);
  for (bool improved = true; improved;) {
    improved = false;
    for (int i : scan) {
      const int old = assign[i];
      for (int b = 0; b < r && !improved; ++b) {
        if (b == old) continue;
        assign[i] = b;
        double v = value_of(assign);
        if (v < cur - 1e-12) {
          cur = v;
          improved = true;
        } else {
          assign[i] = old;
        }
      }
      if (improved) break;
    }
  }
  return pavdetail::make_report(a, r, assign, cur);
}

// ---- the 2-paving interlacing family ----

struct FamilyCheckReport {
  bool pass = true;
  std::string first_failure;  // empty when pass
  UniPoly<Rat> root_polynomial;
};

// Certifies the binary-tree interlacing-family structure for 2-pavings:
// every node polynomial (an independent sum over the leaves below it) equals
// the sum of its children, is real-rooted, sibling pairs share a common
// interlacer, and sampled product-distribution mixtures stay real-rooted.
inline FamilyCheckReport interlacing_family_check(const MatQ& a, int mixture_samples = 20,
                                                  uint64_t seed = 1) {
  const int n = a.n;
  if (n < 1 || n > 10) throw resource_limit_error("interlacing_family_check: 1 <= n <= 10");
  if (!is_hermitian(a))
    throw std::invalid_argument("interlacing_family_check: hermitian input required");
  FamilyCheckReport rep;
  const uint32_t full = (1u << n) - 1;
  // leaf polynomials chi[A_S] chi[A_T], S as mask, T the complement
  std::vector<UniPoly<Rat>> leaf(full + 1u);
  {
    std::vector<UniPoly<Rat>> removed_cp(full + 1u);
    for (uint32_t m = 0;; ++m) {
      removed_cp[m] = char_poly(submatrix_removed_mask(a, m));
      if (m == full) break;
    }
    for (uint32_t m = 0;; ++m) {
      leaf[m] = removed_cp[m] * removed_cp[full & ~m];
      if (m == full) break;
    }
  }
  auto fail = [&](std::string what) {
    rep.pass = false;
    rep.first_failure = std::move(what);
  };
  // node (level k, S subset of [k]): sum of leaves whose first k bits are S
  std::vector<std::vector<UniPoly<Rat>>> level(n + 1);
  for (int k = n; k >= 0 && rep.pass; --k) {
    const uint32_t kfull = k == 0 ? 0u : (1u << k) - 1;
    level[k].assign(kfull + 1u, UniPoly<Rat>{});
    for (uint32_t s = 0;; ++s) {
      UniPoly<Rat> q;
      for (uint32_t u = 0;; ++u) {  // completion over indices k..n-1
        q += leaf[s | (u << k)];
        if (u == (full >> k)) break;
      }
      level[k][s] = q;
      if (!is_real_rooted(q)) {
        fail("node (level " + std::to_string(k) + ", S=" + std::to_string(s) +
             ") not real rooted");
        break;
      }
      if (s == kfull) break;
    }
  }
  for (int k = 0; k < n && rep.pass; ++k) {
    const uint32_t kfull = k == 0 ? 0u : (1u << k) - 1;
    for (uint32_t s = 0;; ++s) {
      const UniPoly<Rat>& left = level[k + 1][s];                  // k+1 joins T
      const UniPoly<Rat>& right = level[k + 1][s | (1u << k)];     // k+1 joins S
      if (!(level[k][s] == left + right)) {
        fail("node (level " + std::to_string(k) + ", S=" + std::to_string(s) +
             ") != sum of children");
        break;
      }
      if (!has_common_interlacer(left, right)) {
        fail("children of (level " + std::to_string(k) + ", S=" + std::to_string(s) +
             ") lack a common interlacer");
        break;
      }
      if (s == kfull) break;
    }
  }
  if (rep.pass) {
    Rng rng(seed);
    for (int t = 0; t < mixture_samples && rep.pass; ++t) {
      std::vector<Rat> prob(n);
      for (auto& p : prob) p = Rat(rng.uniform_int(0, 64), 64);
      UniPoly<Rat> mix;
      for (uint32_t m = 0;; ++m) {
        Rat w(1);
        for (int i = 0; i < n; ++i) w *= (m >> i & 1u) ? prob[i] : Rat(1) - prob[i];
        if (w != 0) mix += leaf[m] * w;
        if (m == full) break;
      }
      if (mix.zero() || !is_real_rooted(mix))
        fail("sampled product-distribution mixture " + std::to_string(t) + " not real rooted");
    }
  }
  rep.root_polynomial = level.empty() ? UniPoly<Rat>{} : level[0][0];
  return rep;
}

// ---- expected characteristic polynomials ----

// E chi[A_S] = sum_S mu(S) chi[A_S] via the differential-operator form
// P_mu(d_1..d_n) det[Z-A] |_{Z=xI}. mu must be a probability distribution:
// nonnegative coefficients summing to one.
inline UniPoly<Rat> sr_expected_charpoly(const MatQ& a, const MultilinearPoly<Rat>& mu) {
  if (mu.nvars != a.n) throw std::invalid_argument("sr_expected_charpoly: variable mismatch");
  Rat total(0);
  for (auto& [m, w] : mu.terms) {
    if (w < 0) throw std::invalid_argument("sr_expected_charpoly: negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("sr_expected_charpoly: weights must sum to 1");
  return apply_diff_operator(mu, multilinear_det(a));
}

}  // namespace chir
