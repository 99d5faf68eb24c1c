#include "chir/barrier.hpp"
#include "chir/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace chir;

TEST_CASE("barrier potential phi") {
  MatQ x(2);
  x.at(0, 1) = CRat(Rat(1));
  x.at(1, 0) = CRat(Rat(1));
  CHECK(phi(x, 2, Rat(2), 0) == Rat(4, 3));
  CHECK(phi(MatQ(2), 2, Rat(1), 0) == Rat(2));
  MatQ half(1);
  half.at(0, 0) = CRat(Rat(1, 2));
  CHECK(phi(half, 3, Rat(1), 0) == Rat(6));
  CHECK_THROWS_AS(phi(x, 2, Rat(1, 2), 0), std::domain_error);
}

TEST_CASE("phi_diagonal_bound values and domination") {
  CHECK(phi_diagonal_bound(0.5, 2) == Catch::Approx(0.75).margin(1e-15));
  CHECK(phi_diagonal_bound(0.0, 2) == Catch::Approx(0.5).margin(1e-15));
  CHECK(phi_diagonal_bound(1.0, 2) == Catch::Approx(1.0).margin(1e-15));
  CHECK_THROWS_AS(phi_diagonal_bound(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(phi_diagonal_bound(1.5, 2.0), std::invalid_argument);

  // dominates the true resolvent diagonal for harmonic projections
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 1}, {8, 2}, {6, 3}, {8, 1}}) {
    MatD p = harmonic_projection_float(n, k);
    double delta = static_cast<double>(k) / n;
    for (double b = 1.01; b <= 3.0; b += 0.25) {
      double cap = phi_diagonal_bound(delta, b);
      for (int i = 0; i < n; ++i)
        CHECK(resolvent_diagonal_unchecked(p, b, i) <= cap + 1e-9);
    }
  }
}

TEST_CASE("root_bound_2") {
  auto p41 = harmonic_projection_exact(4, 1);
  auto rb = root_bound_2(p41);
  CHECK(rb.bound <= 1.0 + 1e-9);
  REQUIRE(rb.certified_max_root.has_value());
  CHECK(*rb.certified_max_root <= rb.bound + 1e-8);
  CHECK(rb.delta == Catch::Approx(0.25).margin(1e-12));

  auto rb0 = root_bound_2(MatQ(4));
  CHECK(rb0.bound <= 1e-6);

  MatQ d(3);
  for (int i = 0; i < 3; ++i) d.at(i, i) = CRat(Rat(2, 5));
  CHECK(root_bound_2(d).bound >= 0.4 - 1e-9);

  // optimized bound never beats the closed form on constant-diagonal inputs
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 1}, {8, 1}}) {
    MatQ p = (n == 4) ? harmonic_projection_exact(4, 1) : lift(harmonic_projection_float(8, 1));
    auto r = root_bound_2(p, false);
    CHECK(r.bound <= closed_form_bound(static_cast<double>(k) / n, 2) + 1e-8);
  }
}

TEST_CASE("closed_form_bound") {
  CHECK(closed_form_bound(0.5, 4) ==
        Catch::Approx((3 + std::sqrt(7.0)) * (3 + std::sqrt(7.0)) / 32).margin(1e-15));
  CHECK(closed_form_bound(0.0, 2) == Catch::Approx(0.75).margin(1e-12));
  CHECK(closed_form_bound(0.25, 2) == Catch::Approx(1.0).margin(1e-12));
  CHECK(closed_form_bound(0.3, 2) == 1.0);   // past the threshold: trivial bound
  CHECK(closed_form_bound(0.6, 4) == 1.0);
  CHECK(closed_form_bound(0.0, 3) == Catch::Approx(5.0 / 9).margin(1e-12));
  CHECK_THROWS_AS(closed_form_bound(0.5, 5), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_bound(-0.1, 2), std::invalid_argument);
}

TEST_CASE("conjectured_bound") {
  auto c = conjectured_bound(0.5, 2);
  CHECK(c.root_shrink == Catch::Approx(1.0).margin(1e-12));
  CHECK(conjectured_bound(0.0, 5).root_shrink == Catch::Approx(0.2).margin(1e-12));
  CHECK(conjectured_bound(0.25, 2).paving_bound == Catch::Approx(1.0).margin(1e-12));
  CHECK_THROWS_AS(conjectured_bound(0.5, 1), std::invalid_argument);
}

TEST_CASE("trace inequalities") {
  std::vector<double> ones{1, 1, 1};
  CHECK(trace_inequality(3, ones, ones) == Catch::Approx(12.0).margin(1e-12));
  CHECK(trace_inequality(3, ones, std::vector<double>{0, 0, 0}) == 0.0);
  CHECK(trace_inequality(4, std::vector<double>{1, 2, 3, 4}, std::vector<double>{0, 0, 0, 0}) ==
        0.0);
  CHECK_THROWS_AS(trace_inequality(3, std::vector<double>{-1, 1, 1}, ones),
                  std::invalid_argument);
  CHECK_THROWS_AS(trace_inequality(5, ones, ones), std::invalid_argument);

  // trace form equals the factored reduction, exactly, and stays nonnegative
  Rng rng(131);
  for (int t = 0; t < 500; ++t) {
    int k = (t % 2) ? 3 : 4;
    std::vector<Rat> lam, x;
    for (int i = 0; i < k; ++i) {
      lam.emplace_back(rng.uniform_int(0, 24), 4);
      x.emplace_back(rng.uniform_int(0, 24), 4);
    }
    Rat a = trace_inequality(k, lam, x);
    CHECK(a == trace_inequality_reduced(k, lam, x));
    CHECK(a >= 0);
  }
}

TEST_CASE("barrier shift check at the degree rules") {
  auto p21 = harmonic_projection_exact(2, 1);
  auto r2 = barrier_shift_check(p21, 2, {}, Rat(1, 2), {Rat(2), Rat(3, 2), Rat(3)});
  CHECK(r2.pass);
  CHECK(r2.comparisons > 0);

  MatQ c2(2);
  c2.at(0, 0) = CRat(Rat(1, 2));
  c2.at(1, 1) = CRat(Rat(1, 3));
  c2.at(0, 1) = CRat(Rat(1, 4), Rat(1, 8));
  c2.at(1, 0) = conj(c2.at(0, 1));
  CHECK(barrier_shift_check(c2, 3, {}, Rat(4, 3), {Rat(2), Rat(5, 4)}).pass);
  CHECK(barrier_shift_check(c2, 4, {}, Rat(9, 4), {Rat(2)}).pass);

  CHECK(barrier_shift_check(MatQ(2), 2, {}, Rat(1, 2), {Rat(1)}).pass);

  auto p41 = harmonic_projection_exact(4, 1);
  CHECK(barrier_shift_check(p41, 2, {0}, Rat(1, 2), {Rat(2)}).pass);
  CHECK(barrier_shift_check(p41, 2, {0, 2}, Rat(1, 2), {Rat(3, 2)}).pass);

  CHECK_THROWS_AS(barrier_shift_check(p41, 2, {}, Rat(1, 2), {Rat(1, 2)}), std::domain_error);
  CHECK_THROWS_AS(barrier_shift_check(MatQ(5), 2, {}, Rat(1, 2), {Rat(2)}),
                  resource_limit_error);
}

TEST_CASE("bivariate counterexample, exact values") {
  auto rep = bivariate_counterexample();
  CHECK(rep.phi_x == Rat(3, 4));
  CHECK(rep.phi_y == Rat(5, 16));
  CHECK(rep.delta == Rat(4, 3));
  CHECK(rep.shifted_value == Rat(27, 80));
  CHECK(rep.value_at_printed_point == Rat(27, 32));
  CHECK(rep.printed_value == Rat(27, 73));
  CHECK(rep.strict_violation);
  CHECK(rep.shifted_value > rep.phi_y);
  CHECK(rep.value_at_printed_point > rep.phi_y);

  // independent oracle: Phi_{dp/dx}^y = 36/(92 + 64x + 36y)
  auto oracle = [](Rat x, Rat y) { return Rat(36) / (Rat(92) + Rat(64) * x + Rat(36) * y); };
  CHECK(rep.shifted_value == oracle(Rat(-1, 3), Rat(1)));
  CHECK(rep.value_at_printed_point == oracle(Rat(-4, 3), Rat(1)));
}

TEST_CASE("statement search") {
  // the S = empty case of the statement always holds
  Rng rng(137);
  for (int t = 0; t < 300; ++t) CHECK(statement_holds_empty(random_hermitian(rng, 3)));

  // diagonal matrices never violate
  Rng drng(139);
  for (int t = 0; t < 50; ++t) {
    MatQ b(4);
    for (int i = 0; i < 4; ++i) b.at(i, i) = CRat(drng.rat(16, 8));
    Rat lhs, rhs;
    if (stmtdetail::evaluate_exact(b, {2}, lhs, rhs)) CHECK(lhs <= rhs);
  }

  // a witness exists and is exact
  auto w = statement_counterexample_search(4, 20000, 1, 2);
  REQUIRE(w.has_value());
  CHECK(w->lhs > w->rhs);
  Rat lhs, rhs;
  REQUIRE(stmtdetail::evaluate_exact(w->b, w->s, lhs, rhs));
  CHECK(lhs == w->lhs);
  CHECK(rhs == w->rhs);

  // chunked search is independent of the thread count
  auto w1 = statement_counterexample_search(4, 5000, 42, 1);
  auto w4 = statement_counterexample_search(4, 5000, 42, 4);
  REQUIRE(w1.has_value());
  REQUIRE(w4.has_value());
  CHECK(w1->trial == w4->trial);
  CHECK(w1->b == w4->b);
  CHECK(w1->lhs == w4->lhs);

  CHECK_THROWS_AS(statement_counterexample_search(2, 10, 1), std::invalid_argument);
}
