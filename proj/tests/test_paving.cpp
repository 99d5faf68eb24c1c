#include "chir/paving.hpp"
#include "chir/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chir;

namespace {
MatQ swap2() {
  MatQ m(2);
  m.at(0, 1) = CRat(Rat(1));
  m.at(1, 0) = CRat(Rat(1));
  return m;
}
}  // namespace

TEST_CASE("paving enumeration order and counts") {
  std::vector<std::vector<int>> seen;
  enumerate_pavings(3, 2, [&](const std::vector<int>& a) {
    seen.push_back(a);
    return true;
  });
  REQUIRE(seen.size() == 8);
  CHECK(seen.front() == std::vector<int>{0, 0, 0});
  CHECK(seen[1] == std::vector<int>{0, 0, 1});
  CHECK(seen.back() == std::vector<int>{1, 1, 1});
  CHECK(std::is_sorted(seen.begin(), seen.end()));

  int count = 0;
  enumerate_pavings(1, 3, [&](auto&) {
    ++count;
    return true;
  });
  CHECK(count == 3);
  CHECK(paving_count(2, 2) == 4);
  CHECK_THROWS_AS(enumerate_pavings(30, 10, [](auto&) { return true; }),
                  resource_limit_error);
}

TEST_CASE("paving charpoly sum equals chi_r") {
  auto ps = paving_charpoly_sum(swap2(), 2);
  CHECK(ps.c == std::vector<Rat>{Rat(-2), Rat(0), Rat(4)});

  CHECK(paving_charpoly_sum(MatQ(3), 3) == chi_r(MatQ(3), Rat(3)));

  Rng rng(101);
  for (int t = 0; t < 6; ++t) {
    int n = 2 + static_cast<int>(rng.bounded(3));
    MatQ a = random_hermitian(rng, n);
    for (int r : {2, 3}) CHECK(paving_charpoly_sum(a, r) == chi_r(a, Rat(r)));
  }
}

TEST_CASE("best paving exhaustive") {
  auto rep = best_paving_exhaustive(swap2(), 2);
  CHECK(rep.pinch_max_eig == Catch::Approx(0.0).margin(1e-12));
  CHECK(rep.paving.assign[0] != rep.paving.assign[1]);
  CHECK(rep.charpoly.c == std::vector<Rat>{Rat(0), Rat(0), Rat(1)});

  MatQ d(3);
  d.at(0, 0) = CRat(Rat(1));
  d.at(1, 1) = CRat(Rat(5));
  d.at(2, 2) = CRat(Rat(-2));
  auto repd = best_paving_exhaustive(d, 2);
  CHECK(repd.pinch_max_eig == Catch::Approx(5.0).margin(1e-12));
  // ties broken lexicographically: the all-zeros paving is first
  CHECK(repd.paving.assign == std::vector<int>{0, 0, 0});

  auto p41 = harmonic_projection_exact(4, 1);
  auto rep41 = best_paving_exhaustive(p41, 2);
  CHECK(rep41.pinch_max_eig <= max_root(chi_r(p41, Rat(2))) + 1e-9);
}

TEST_CASE("guarantee holds on random hermitians") {
  Rng rng(103);
  for (int t = 0; t < 5; ++t) {
    MatQ a = random_hermitian(rng, 4);
    for (int r : {2, 3}) {
      auto rep = best_paving_exhaustive(a, r);
      CHECK(rep.pinch_max_eig <= max_root(chi_r(a, Rat(r))) + 1e-9);
    }
  }
}

TEST_CASE("best paving greedy") {
  auto g1 = best_paving_greedy(swap2(), 2, 7);
  auto g2 = best_paving_greedy(swap2(), 2, 7);
  CHECK(g1.paving.assign == g2.paving.assign);
  CHECK(g1.pinch_max_eig == Catch::Approx(0.0).margin(1e-12));

  MatQ d(3);
  d.at(0, 0) = CRat(Rat(1));
  d.at(1, 1) = CRat(Rat(5));
  d.at(2, 2) = CRat(Rat(-2));
  CHECK(best_paving_greedy(d, 2, 3).pinch_max_eig == Catch::Approx(5.0).margin(1e-12));

  auto p82 = lift(harmonic_projection_float(8, 2));
  auto g82 = best_paving_greedy(p82, 2, 7);
  CHECK(g82.pinch_max_eig <= 1.0 + 1e-9);

  // never better than the exhaustive optimum
  Rng rng(107);
  for (int t = 0; t < 4; ++t) {
    MatQ a = random_hermitian(rng, 4);
    auto ex = best_paving_exhaustive(a, 2);
    auto gr = best_paving_greedy(a, 2, 1000 + t);
    CHECK(gr.pinch_max_eig >= ex.pinch_max_eig - 1e-9);
  }
}

TEST_CASE("permutation equivariance of the optimum") {
  Rng rng(109);
  MatQ a = random_hermitian(rng, 4);
  std::vector<int> perm{2, 0, 3, 1};
  MatQ b = permute(a, perm);
  auto ra = best_paving_exhaustive(a, 2);
  auto rb = best_paving_exhaustive(b, 2);
  CHECK(ra.pinch_max_eig == Catch::Approx(rb.pinch_max_eig).margin(1e-10));
}

TEST_CASE("interlacing family certification") {
  auto fam = interlacing_family_check(swap2());
  CHECK(fam.pass);
  CHECK(fam.root_polynomial.c == std::vector<Rat>{Rat(-2), Rat(0), Rat(4)});

  MatQ d(3);
  d.at(0, 0) = CRat(Rat(1));
  d.at(1, 1) = CRat(Rat(2));
  d.at(2, 2) = CRat(Rat(3));
  CHECK(interlacing_family_check(d).pass);

  Rng rng(113);
  MatQ h = random_hermitian(rng, 4);
  auto rep = interlacing_family_check(h);
  CHECK(rep.pass);
  CHECK(rep.root_polynomial == chi_r(h, Rat(2)));
}

TEST_CASE("sr_expected_charpoly") {
  MatQ ab(2);
  ab.at(0, 0) = CRat(Rat(2));
  ab.at(1, 1) = CRat(Rat(6));

  auto point_mass = MultilinearPoly<Rat>::constant(2, Rat(1));
  CHECK(sr_expected_charpoly(ab, point_mass) == char_poly(ab));

  MultilinearPoly<Rat> singles(2);
  singles.set(1u, Rat(1, 2));
  singles.set(2u, Rat(1, 2));
  CHECK(sr_expected_charpoly(ab, singles) ==
        UniPoly<Rat>(std::vector<Rat>{Rat(-4), Rat(1)}));

  // restricted-invertibility measure: uniform over all n-k element subsets
  Rng rng(127);
  MatQ h = random_hermitian(rng, 3);
  MultilinearPoly<Rat> mu(3);
  for (uint32_t m : {3u, 5u, 6u}) mu.set(m, Rat(1, 3));
  UniPoly<Rat> direct;
  for (uint32_t m : {3u, 5u, 6u}) direct += char_poly(submatrix_removed_mask(h, m)) * Rat(1, 3);
  CHECK(sr_expected_charpoly(h, mu) == direct);

  MultilinearPoly<Rat> bad(2);
  bad.set(0u, Rat(1, 2));
  CHECK_THROWS_AS(sr_expected_charpoly(ab, bad), std::invalid_argument);
  bad.set(1u, Rat(-1, 2));
  bad.set(0u, Rat(3, 2));
  CHECK_THROWS_AS(sr_expected_charpoly(ab, bad), std::invalid_argument);
}
