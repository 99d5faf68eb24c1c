#pragma once

// The cross-verification suite behind `verify`: runs every structural
// identity on seeded random matrices and reports one pass/fail line per
// identity, tagged by the theorem it certifies. Exact mode compares
// coefficientwise equality; float mode runs the same inputs through their
// dyadic lifts and compares within the configured tolerance.
//
// A named fault can be injected to self-test the harness: the corresponding
// check's computed data is perturbed, which must surface as a failure.

#include "chir/barrier.hpp"
#include "chir/detr.hpp"
#include "chir/io.hpp"
#include "chir/paving.hpp"
#include "chir/rng.hpp"
#include "chir/roots.hpp"

#include <string>
#include <vector>

namespace chir {

struct CheckResult {
  std::string tag;
  bool pass = true;
  std::string detail;
};

struct VerifyOptions {
  uint64_t seed = 1;
  bool float_mode = false;
  double tolerance = 1e-9;
  int matrices = 10;
  std::vector<int> sizes{2, 3, 4};
  std::vector<int> rs{2, 3};
  std::string fault;  // tag name whose data gets perturbed
};

namespace verifydetail {

inline bool poly_close(const UniPoly<Rat>& a, const UniPoly<Rat>& b, bool float_mode,
                       double tol) {
  if (!float_mode) return a == b;
  UniPoly<Rat> d = a - b;
  for (const auto& c : d.c)
    if (std::fabs(to_double(c)) > tol) return false;
  return true;
}

inline bool cplx_poly_small(const UniPoly<CRat>& p, bool float_mode, double tol) {
  if (!float_mode) return p.zero();
  for (const auto& c : p.c)
    if (to_double(norm1(c)) > tol) return false;
  return true;
}

inline std::string describe_instance(const MatQ& m, int r) {
  json j{{"r", r}, {"matrix", matrix_to_json(m)}};
  return j.dump();
}

}  // namespace verifydetail

inline std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt) {
  using verifydetail::cplx_poly_small;
  using verifydetail::describe_instance;
  using verifydetail::poly_close;

  std::vector<CheckResult> out;
  Rng rng(opt.seed);
  std::vector<MatQ> set;
  std::vector<int> set_r;
  for (int i = 0; i < opt.matrices; ++i) {
    int n = opt.sizes[i % opt.sizes.size()];
    set.push_back(random_hermitian(rng, n));
    set_r.push_back(opt.rs[i % opt.rs.size()]);
  }
  auto faulted = [&](const std::string& tag) { return opt.fault == tag; };

  // chiexp: sum over pavings of chi[A_X] equals chi_r[A]
  {
    CheckResult c{"chiexp", true, ""};
    for (std::size_t i = 0; i < set.size() && c.pass; ++i) {
      UniPoly<Rat> lhs = paving_charpoly_sum(set[i], set_r[i]);
      if (faulted(c.tag)) lhs.c[0] += 1;
      UniPoly<Rat> rhs = chi_r(set[i], Rat(set_r[i]));
      if (!poly_close(lhs, rhs, opt.float_mode, opt.tolerance)) {
        c.pass = false;
        c.detail = "failed on " + describe_instance(set[i], set_r[i]);
      }
    }
    if (c.pass) c.detail = std::to_string(set.size()) + " instances";
    out.push_back(std::move(c));
  }

  // thompson: r sum_i chi_r[A_i] = chi_r'[A]
  {
    CheckResult c{"thompson", true, ""};
    for (std::size_t i = 0; i < set.size() && c.pass; ++i) {
      UniPoly<CRat> res = thompson_residual(set[i], set_r[i]);
      if (faulted(c.tag)) res += UniPoly<CRat>::constant(CRat(Rat(1)));
      if (!cplx_poly_small(res, opt.float_mode, opt.tolerance)) {
        c.pass = false;
        c.detail = "failed on " + describe_instance(set[i], set_r[i]);
      }
    }
    if (c.pass) c.detail = std::to_string(set.size()) + " instances";
    out.push_back(std::move(c));
  }

  // defectk: r^k k! sum_{|S|=k} chi_r[A_S] = chi_r^{(k)}[A], k = 2
  {
    CheckResult c{"defectk", true, ""};
    for (std::size_t i = 0; i < set.size() && c.pass; ++i) {
      int k = std::min(2, set[i].n);
      UniPoly<CRat> res = defect_k_residual(set[i], set_r[i], k);
      if (faulted(c.tag)) res += UniPoly<CRat>::constant(CRat(Rat(1)));
      if (!cplx_poly_small(res, opt.float_mode, opt.tolerance)) {
        c.pass = false;
        c.detail = "failed on " + describe_instance(set[i], set_r[i]);
      }
    }
    if (c.pass) c.detail = std::to_string(set.size()) + " instances, k=2";
    out.push_back(std::move(c));
  }

  // multilinearization: det_r[Z+A] = sum_S z^S r^{|S|} det_r[A_S]
  {
    CheckResult c{"multilinearization", true, ""};
    for (std::size_t i = 0; i < set.size() && c.pass; ++i) {
      Rat res = multilinearization_residual(set[i], set_r[i]);
      if (faulted(c.tag)) res += 1;
      if (!(opt.float_mode ? to_double(res) <= opt.tolerance : res == 0)) {
        c.pass = false;
        c.detail = "failed on " + describe_instance(set[i], set_r[i]);
      }
    }
    if (c.pass) c.detail = std::to_string(set.size()) + " instances";
    out.push_back(std::move(c));
  }

  // cauchy: chi_r[A_i] interlaces chi_r[A] for every i
  {
    CheckResult c{"cauchy", true, ""};
    for (std::size_t i = 0; i < set.size() && c.pass; ++i) {
      UniPoly<Rat> top = chi_r(set[i], Rat(set_r[i]));
      if (faulted(c.tag)) top = top * UniPoly<Rat>(std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
      for (int idx = 0; idx < set[i].n && c.pass; ++idx) {
        UniPoly<Rat> sub = chi_r(submatrix_removed(set[i], std::vector<int>{idx}), Rat(set_r[i]));
        bool ok;
        try {
          ok = interlaces(top, sub);
        } catch (const std::invalid_argument&) {
          ok = false;  // not real rooted
        }
        if (!ok) {
          c.pass = false;
          c.detail = "failed on " + describe_instance(set[i], set_r[i]) +
                     " at i=" + std::to_string(idx + 1);
        }
      }
    }
    if (c.pass) c.detail = std::to_string(set.size()) + " instances, all i";
    out.push_back(std::move(c));
  }

  // pddet: d^S det[Z-A]^2 = det[Z-A]^2 det_2[(Z-A)^{-1}(S)]
  {
    CheckResult c{"pddet", true, ""};
    Rng prng(opt.seed ^ 0xDDE7ull);
    for (std::size_t i = 0; i < set.size() && c.pass; ++i) {
      const MatQ& a = set[i];
      double lam = max_eigenvalue(a);
      for (int rep = 0; rep < 3 && c.pass; ++rep) {
        std::vector<Rat> z(a.n);
        for (auto& v : z)
          v = rat_from_double(lam + 1.0) + Rat(prng.uniform_int(1, 8), 4);
        std::vector<int> s;
        for (int idx = 0; idx < a.n; ++idx) {
          int mult = prng.uniform_int(0, 2);
          for (int m = 0; m < mult; ++m) s.push_back(idx);
        }
        if (opt.float_mode) {
          std::vector<double> zf;
          for (auto& v : z) zf.push_back(to_double(v));
          double res = pd_det_residual_float(to_float(a), zf, IndexMultiset(s));
          if (faulted(c.tag)) res += 1;
          if (res > opt.tolerance) {
            c.pass = false;
            c.detail = "failed on " + describe_instance(a, 2);
          }
        } else {
          Rat res = pd_det_residual(a, z, IndexMultiset(s));
          if (faulted(c.tag)) res += 1;
          if (res != 0) {
            c.pass = false;
            c.detail = "failed on " + describe_instance(a, 2);
          }
        }
      }
    }
    if (c.pass) c.detail = std::to_string(set.size() * 3) + " evaluation points";
    out.push_back(std::move(c));
  }

  // verejones: det_2[B(S)] = 0 when some index repeats more than twice
  {
    CheckResult c{"verejones", true, ""};
    Rng vrng(opt.seed ^ 0x7E9Eull);
    for (int t = 0; t < 20 && c.pass; ++t) {
      MatQ b = random_matrix(vrng, 3);
      int idx = vrng.uniform_int(0, 2);
      std::vector<int> s{idx, idx, idx};
      if (vrng.uniform_int(0, 1)) s.push_back(vrng.uniform_int(0, 2));
      CRat v = vere_jones_vanishing(b, IndexMultiset(s));
      if (faulted(c.tag)) v += CRat(Rat(1));
      bool ok = opt.float_mode ? to_double(norm1(v)) <= opt.tolerance : is_zero(v);
      if (!ok) {
        c.pass = false;
        c.detail = "failed on trial " + std::to_string(t);
      }
    }
    if (c.pass) c.detail = "20 multiset instances";
    out.push_back(std::move(c));
  }

  // koteljanskii: det_r[A_S]det_r[A_T] >= det_r[A_{S int T}]det_r[A_{S un T}] for PSD A
  {
    CheckResult c{"koteljanskii", true, ""};
    Rng krng(opt.seed ^ 0x607Eull);
    for (int t = 0; t < 50 && c.pass; ++t) {
      MatQ g = random_gram_psd(krng, 4);
      std::vector<int> s, tt;
      for (int i = 0; i < 4; ++i) {
        if (krng.uniform_int(0, 1)) s.push_back(i);
        if (krng.uniform_int(0, 1)) tt.push_back(i);
      }
      Rat res = koteljanskii_residual(g, 2, s, tt);
      if (faulted(c.tag)) res -= 1;
      if (res < Rat(-1, 1000000000)) {
        c.pass = false;
        c.detail = "failed on trial " + std::to_string(t);
      }
    }
    if (c.pass) c.detail = "50 PSD instances, r=2";
    out.push_back(std::move(c));
  }

  return out;
}

}  // namespace chir
