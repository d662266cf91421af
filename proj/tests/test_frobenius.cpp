#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scarce/builder.hpp"
#include "scarce/frobenius.hpp"
#include "frobenius_oracle.hpp"
#include "support.hpp"

using namespace scarce;

namespace {

using scarce::testing::operator_image;
using scarce::testing::u2_image;
using scarce::testing::vanishes_through;

Poly random_h(std::mt19937_64& rng, const CNum& h0) {
  std::vector<CNum> c{h0};
  for (int j = 1; j <= 3; ++j) c.push_back(scarce::testing::random_gauss(rng));
  return Poly(c);
}

}  // namespace

TEST_SUITE("power series") {
  TEST_CASE("exp and log are inverse") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      PowerSeries r(10);
      for (int i = 1; i <= 10; ++i) r[i] = scarce::testing::random_gauss(rng);
      PowerSeries one_plus = r;
      one_plus[0] = CNum(1);
      PowerSeries back = exp(log(one_plus));
      for (int i = 0; i <= 10; ++i) CHECK(back[i].same_as(one_plus[i]));
      PowerSeries again = log(exp(r));
      for (int i = 0; i <= 10; ++i) CHECK(again[i].same_as(r[i]));
    }
  }

  TEST_CASE("exp of x matches the factorial series") {
    PowerSeries x(8);
    x[1] = CNum(1);
    PowerSeries e = exp(x);
    Integer f = 1;
    for (int i = 0; i <= 8; ++i) {
      if (i > 0) f *= i;
      CHECK(e[i].same_as(CNum(Rational(1) / Rational(f))));
    }
    CHECK_THROWS_AS(exp(e), std::invalid_argument);
    CHECK_THROWS_AS(log(x), std::invalid_argument);
  }

  TEST_CASE("product truncates to the smaller order and derivative drops one") {
    PowerSeries a(std::vector<CNum>{CNum(1), CNum(2), CNum(3)}, 5);
    PowerSeries b(std::vector<CNum>{CNum(1), CNum(1)}, 3);
    PowerSeries p = a * b;
    CHECK(p.order() == 3);
    CHECK(p[1].same_as(CNum(3)));
    CHECK(p[3].same_as(CNum(3)));
    CHECK(a.derivative().order() == 4);
    CHECK(a.derivative()[1].same_as(CNum(6)));
  }
}

TEST_SUITE("lommel and indicial") {
  TEST_CASE("transformed coefficient") {
    auto m = lommel_map(EqSpec{2, 1, CNum(5), CNum(3)});
    CHECK(m.h == Poly(std::vector<CNum>{CNum(Rational(-11, 4)), CNum(-5), CNum(-1)}));
    CHECK(m.alpha == 1);
    CHECK(m.d1.same_as(CNum(1)));
    for (int b3 = -3; b3 <= 3; ++b3)
      CHECK(lommel_map(EqSpec{4, 3, CNum(1), CNum(b3)}).h.coeff(0).same_as(CNum(Rational(1, 4) - b3)));
  }

  TEST_CASE("indicial roots") {
    auto r = indicial(CNum(Rational(-3, 4)));
    CHECK(r.rho1.same_as(CNum(Rational(3, 2))));
    CHECK(r.rho2.same_as(CNum(Rational(-1, 2))));
    auto e = indicial(CNum(Rational(1, 4)));
    CHECK(e.rho1.same_as(CNum(Rational(1, 2))));
    CHECK(e.rho2.same_as(CNum(Rational(1, 2))));
    std::mt19937_64 rng(37);
    for (int i = 0; i < 100; ++i) {
      CNum h0 = scarce::testing::random_gauss(rng);
      auto q = indicial(h0);
      CHECK((q.rho1 + q.rho2).same_as(CNum(1), 1e-28));
      CHECK((q.rho1 * q.rho2).same_as(h0, 1e-28));
      CHECK(q.rho1.to_float().re >= q.rho2.to_float().re);
    }
  }
}

TEST_SUITE("frobenius") {
  TEST_CASE("b2 = 1, b3 = 1: integer difference without logarithm") {
    auto h = lommel_map(EqSpec{2, 1, CNum(1), CNum(1)}).h;
    auto fp = frobenius_solve(h, 16);
    CHECK(fp.kind == FrobeniusCase::integer_difference);
    CHECK(fp.n0 == 2);
    CHECK(fp.d == 0);
    CHECK(fp.obstruction.is_exact_zero());
    CHECK(vanishes_through(operator_image(h, fp.rho1, fp.u1), 16));
    CHECK(vanishes_through(u2_image(h, fp), 16));
    CHECK_FALSE(fp.u2[0].is_zero());
  }

  TEST_CASE("equal roots force the logarithm") {
    Poly h(std::vector<CNum>{CNum(Rational(1, 4)), CNum(1)});
    auto fp = frobenius_solve(h, 12);
    CHECK(fp.kind == FrobeniusCase::equal);
    CHECK(fp.d == 1);
    CHECK(vanishes_through(operator_image(h, fp.rho1, fp.u1), 12));
    CHECK(vanishes_through(u2_image(h, fp), 12));
  }

  TEST_CASE("integer difference with a nonzero obstruction") {
    // rho = 3/2, -1/2 and h_1 chosen so the obstruction survives.
    Poly h(std::vector<CNum>{CNum(Rational(-3, 4)), CNum(1)});
    auto fp = frobenius_solve(h, 10);
    CHECK(fp.kind == FrobeniusCase::integer_difference);
    CHECK(fp.d == 1);
    CHECK(fp.u2[fp.n0].is_exact_zero());
    CHECK(vanishes_through(operator_image(h, fp.rho1, fp.u1), 10));
    CHECK(vanishes_through(u2_image(h, fp), 10));
    CHECK_THROWS_AS(frobenius_solve(h, 1), std::invalid_argument);
  }

  TEST_CASE("random regular-singular problems satisfy the equation") {
    std::mt19937_64 rng(41);
    const int N = 14;
    for (int trial = 0; trial < 60; ++trial) {
      // h0 = rho (1 - rho) with rational rho keeps everything exact.
      CNum rho = trial % 3 == 0 ? CNum(Rational(trial % 5, 2)) : scarce::testing::random_gauss(rng);
      Poly h = random_h(rng, rho * (CNum(1) - rho));
      auto fp = frobenius_solve(h, N);
      CHECK(vanishes_through(operator_image(h, fp.rho1, fp.u1), N - 2));
      CHECK(vanishes_through(u2_image(h, fp), N - 2));
    }
  }

  TEST_CASE("irrational exponents in the float backend") {
    Poly h = lommel_map(EqSpec{4, 1, CNum(1), CNum(2)}).h;
    auto fp = frobenius_solve(h, 12);
    CHECK(fp.kind == FrobeniusCase::non_integer);
    CHECK(vanishes_through(operator_image(h, fp.rho1, fp.u1), 10, 1e-25));
    CHECK(vanishes_through(u2_image(h, fp), 10, 1e-25));
  }
}

TEST_SUITE("series matching") {
  TEST_CASE("pair (1, 0, 1) matches exactly") {
    auto p = build_pair_cor45(1, 0, 1);
    auto fp = frobenius_solve(lommel_map(p.spec).h, 12);
    auto m = series_match(p.f1, p.f2, fp, 12);
    CHECK(m.exact_zero);
    CHECK(m.rho_consistent);
    CHECK(m.D2.same_as(m.D4));
    CHECK_FALSE(m.D2.is_zero());
    CHECK(m.w_order == 2);
  }

  TEST_CASE("every small pair matches") {
    for (int k1 = 1; k1 <= 4; ++k1)
      for (int k2 = 0; k2 < k1; ++k2)
        for (int c0 : {1, -1}) {
          auto p = build_pair_cor45(k1, k2, c0);
          auto fp = frobenius_solve(lommel_map(p.spec).h, 14);
          CHECK(fp.d == 0);
          auto m = series_match(p.f1, p.f2, fp, 14);
          CHECK(m.exact_zero);
          CHECK(m.w_order == k1 + k2 + 1);
        }
  }

  TEST_CASE("dependent inputs are reported") {
    auto p = build_pair_cor45(1, 0, 1);
    auto fp = frobenius_solve(lommel_map(p.spec).h, 12);
    CHECK_THROWS_AS(series_match(p.f1, p.f1, fp, 12), SeriesMatchError);
  }

  TEST_CASE("general solution evaluation") {
    auto p = build_pair_cor45(1, 0, 1);
    auto fp = frobenius_solve(lommel_map(p.spec).h, 24);
    auto m = series_match(p.f1, p.f2, fp, 24);
    FloatC z0(std::complex<double>(-3.0, 0.4));
    CHECK(abs(general_solution_eval(fp, CNum(0), CNum(0), z0)) == 0);

    CNum E1(Rational(2, 3)), E2(Rational(-1), Rational(1));
    FloatC lin = general_solution_eval(fp, E1, E2, z0);
    FloatC parts = E1.to_float() * general_solution_eval(fp, CNum(1), CNum(0), z0) +
                   E2.to_float() * general_solution_eval(fp, CNum(0), CNum(1), z0);
    CHECK(abs(lin - parts) < Real(1e-25));

    for (double y : {-2.0, -1.0, 0.0, 1.0, 2.5}) {
      FloatC z(std::complex<double>(-3.0, y));
      FloatC via_series = general_solution_eval(fp, m.fit2_E1, m.fit2_E2, z);
      FloatC direct = p.f2.value(z);
      CHECK(abs(via_series - direct) <= Real(1e-10) * abs(direct));
      FloatC via1 = general_solution_eval(fp, m.fit1_E1, m.fit1_E2, z);
      CHECK(abs(via1 - p.f1.value(z)) <= Real(1e-10) * abs(p.f1.value(z)));
    }
    CHECK_THROWS_AS(general_solution_eval(fp, CNum(1), CNum(0), FloatC(std::complex<double>(6.0, 0.0))),
                    std::domain_error);
  }
}
