#include "chir/paving.hpp"
#include "chir/rng.hpp"
#include "chir/stability.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chir;

TEST_CASE("stability of hand multiaffine polynomials") {
  MultilinearPoly<Rat> p1(2);
  p1.set(1u, Rat(1));
  p1.set(2u, Rat(1));
  CHECK(is_real_stable_multiaffine(p1, 400, 3).status == StabilityStatus::stable);

  MultilinearPoly<Rat> p2(2);
  p2.set(3u, Rat(1));
  p2.set(0u, Rat(1));
  auto v2 = is_real_stable_multiaffine(p2, 400, 3);
  CHECK(v2.status == StabilityStatus::unstable);
  REQUIRE(v2.witness.has_value());
  CHECK((*v2.witness)[0].im > 0);
  CHECK((*v2.witness)[1].im > 0);
  // the witness really is a zero
  MultilinearPoly<CDbl> pd(2);
  for (auto& [m, c] : p2.terms) pd.set(m, CDbl(to_double(c)));
  CHECK(norm1(pd.eval(*v2.witness)) < 1e-9);

  MultilinearPoly<Rat> p3(2);
  p3.set(3u, Rat(1));
  p3.set(0u, Rat(-1));
  CHECK(is_real_stable_multiaffine(p3, 400, 3).status == StabilityStatus::stable);
}

TEST_CASE("sr measure from a matrix") {
  // A = 0: det_2 of every proper removed submatrix vanishes, leaving the
  // point mass at the full set
  auto mu0 = sr_measure_from_matrix(MatQ(3), 2);
  REQUIRE(mu0.weights.size() == 1);
  CHECK(mu0.weights.begin()->first == 7u);
  CHECK(mu0.weights.begin()->second == Rat(1));
  CHECK(mu0.normalized);

  MatQ d(2);
  d.at(0, 0) = CRat(Rat(1, 2));
  d.at(1, 1) = CRat(Rat(1, 3));
  auto mud = sr_measure_from_matrix(d, 2);
  CHECK(is_real_stable_multiaffine(mud.generating_poly(), 500, 5).status ==
        StabilityStatus::stable);

  Rng rng(149);
  for (int t = 0; t < 3; ++t) {
    MatQ g = random_gram_psd(rng, 3);
    auto mu = sr_measure_from_matrix(g, 2);
    for (auto& [m, w] : mu.weights) CHECK(w >= 0);
    CHECK(mu.total() == Rat(1));
    CHECK(is_real_stable_multiaffine(mu.generating_poly(), 800, 7).status ==
          StabilityStatus::stable);
  }

  MatQ notpsd(2);
  notpsd.at(0, 0) = CRat(Rat(1));
  notpsd.at(1, 1) = CRat(Rat(-1));
  CHECK_THROWS_AS(sr_measure_from_matrix(notpsd, 2), std::domain_error);
}

TEST_CASE("paving measure") {
  auto m12 = paving_measure(1, 2);
  CHECK(m12.weights.size() == 2);
  auto m22 = paving_measure(2, 2);
  CHECK(m22.weights.size() == 4);
  for (auto& [m, w] : m22.weights) CHECK(w == Rat(1, 4));

  // generating polynomial vs the differential-operator formula
  for (auto [n, r] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
    auto direct = paving_measure(n, r).generating_poly();
    auto formula = paving_measure_generating_by_formula(n, r);
    CHECK((direct - formula).terms.empty());
  }
  CHECK_THROWS_AS(paving_measure(8, 3), resource_limit_error);
}

TEST_CASE("paving measure reproduces chi_r through the SR expectation") {
  Rng rng(151);
  for (int t = 0; t < 3; ++t) {
    int n = 2 + static_cast<int>(rng.bounded(2));
    MatQ a = random_hermitian(rng, n);
    MatQ big = a;
    for (int k = 1; k < 2; ++k) big = direct_sum(big, a);
    auto mu = paving_measure(n, 2);
    UniPoly<Rat> expected = sr_expected_charpoly(big, mu.generating_poly());
    UniPoly<Rat> reference = chi_r(a, Rat(2)) * rat_pow(Rat(1, 2), n);
    CHECK(expected == reference);
  }
}

TEST_CASE("sampled SR expectations are real rooted") {
  Rng rng(157);
  for (int t = 0; t < 4; ++t) {
    MatQ h = random_hermitian(rng, 4);
    MatQ g = random_gram_psd(rng, 4);
    auto mu = sr_measure_from_matrix(g, 2);
    CHECK(is_real_rooted(sr_expected_charpoly(h, mu.generating_poly())));
  }
}
