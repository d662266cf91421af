#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "scarce/builder.hpp"
#include "scarce/verify.hpp"
#include "support.hpp"

using namespace scarce;

namespace {

ExpPoly ez(int j, const CNum& a = CNum(1)) { return ExpPoly::monomial(j, a); }

// a = lambda b for some nonzero scalar lambda.
bool proportional(const ExpPoly& a, const ExpPoly& b) {
  if (a.is_zero() || b.is_zero() || a.den() != b.den()) return false;
  const int j = b.max_exponent();
  CNum lambda = a.coeff(j) / b.coeff(j);
  return (a - lambda * b).is_negligible(1e-25);
}

const SolutionForm* find(const std::vector<SolutionForm>& sols, int k, int c0, const CNum& c) {
  for (const auto& s : sols)
    if (s.k == k && s.c0.same_as(CNum(c0)) && s.c.same_as(c)) return &s;
  return nullptr;
}

bool exact_zero_residual(const SolutionForm& s) {
  ExpPoly r = residual(s.spec, s);
  return r.is_exact() && r.is_zero();
}

std::vector<std::string> builder_set(const ClosureSystem& sys) { return normalized_equation_set(sys.equations); }

}  // namespace

TEST_SUITE("l = 2") {
  TEST_CASE("b2 = 1, b3 = 1 has both solution branches") {
    auto sols = build_l2(CNum(1), CNum(1));
    const auto* f1 = find(sols, 1, 1, CNum(-1));
    const auto* f0 = find(sols, 0, -1, CNum(-1));
    REQUIRE(f1);
    REQUIRE(f0);
    CHECK(proportional(f1->kappa, ExpPoly(1) - ez(1, CNum(2))));
    CHECK(f1->kappa.coeff(1).same_as(CNum(1)));
    CHECK(f0->kappa == ExpPoly(1));
    for (const auto& s : sols) CHECK(exact_zero_residual(s));
  }

  TEST_CASE("b2 = 3, b3 = 0 gives (1 + 2e^z) e^{e^z}") {
    auto sols = build_l2(CNum(3), CNum(0));
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].k == 1);
    CHECK(sols[0].c.same_as(CNum(0)));
    CHECK(proportional(sols[0].kappa, ExpPoly(1) + ez(1, CNum(2))));
    CHECK(sols[0].g == ez(1));
  }

  TEST_CASE("no integer k means no solution") { CHECK(build_l2(CNum(Rational(1, 2)), CNum(1)).empty()); }

  TEST_CASE("float branch for irrational sqrt(b3)") {
    auto sols = build_l2(CNum(3), CNum(2));
    CHECK(sols.empty());
  }

  TEST_CASE("constraint system") {
    auto sys = l2_constraints(2, -1);
    CHECK(builder_set(sys) == std::vector<std::string>{"b2 + t + 5"});
  }
}

TEST_SUITE("l = 4") {
  TEST_CASE("s = 1, k = 1") {
    auto plus = build_l4_s1(1, 1);
    CHECK(plus.closure.closure == Poly(std::vector<CNum>{CNum(-6), CNum(0), CNum(1)}));
    REQUIRE(plus.solutions.size() == 2);
    for (const auto& s : plus.solutions) {
      CHECK(s.spec.b3.same_as(CNum(4)));
      CHECK(s.c.same_as(CNum(-2)));
      CHECK((s.spec.b2 * s.spec.b2 - CNum(6)).is_zero());
      CHECK(s.kappa == ExpPoly(1) - ez(1, s.spec.b2 / CNum(3)));
      CHECK(s.verified);
    }
    auto minus = build_l4_s1(1, -1);
    CHECK(minus.closure.closure == Poly(std::vector<CNum>{CNum(6), CNum(0), CNum(1)}));
    for (const auto& s : minus.solutions) CHECK((s.spec.b2 * s.spec.b2 + CNum(6)).is_zero());
  }

  TEST_CASE("s = 1, k = 2 roots are rational and residual-exact") {
    auto r = build_l4_s1(2, 1);
    CHECK(r.closure.closure.degree() == 3);
    REQUIRE(r.solutions.size() == 2);
    for (const auto& s : r.solutions) CHECK(exact_zero_residual(s));
  }

  TEST_CASE("s = 1 closure degree and b2 -> -b2 symmetry") {
    for (int k = 1; k <= 5; ++k) {
      for (int c0 : {1, -1}) {
        auto r = build_l4_s1(k, c0);
        const Poly& P = r.closure.closure;
        CHECK(P.degree() == k + 1);
        // P(-b2) = +-P(b2)
        Poly reflected = P.compose(-Poly::x());
        CHECK((reflected == P || reflected == -P));
        for (const auto& s : r.solutions) CHECK(s.verified);
      }
    }
  }

  TEST_CASE("s = 1 rejects k = 0") { CHECK_THROWS_AS(build_l4_s1(0, 1), std::invalid_argument); }

  TEST_CASE("s = 3, k = 1 closure (t + 2)(t + 5)") {
    auto r = build_l4_s3(1);
    CHECK(r.closure.closure == Poly(std::vector<CNum>{CNum(10), CNum(7), CNum(1)}));
    REQUIRE(r.closure.roots.size() == 2);
    CHECK(r.closure.roots[0].same_as(CNum(-5)));
    CHECK(r.closure.roots[1].same_as(CNum(-2)));

    int seen_t5 = 0, seen_t2 = 0;
    for (const auto& s : r.solutions) {
      CHECK(s.verified);
      REQUIRE(s.c1.has_value());
      if (s.c.same_as(CNum(Rational(-5, 2))) && s.c0.same_as(CNum(1))) {
        ++seen_t5;
        CHECK((*s.c1 * *s.c1).same_as(CNum(1)));
        CHECK(s.spec.b2.modulus() == 2);
        CHECK(s.spec.b3.same_as(CNum(Rational(25, 4))));
      }
      if (s.c.same_as(CNum(-1)) && s.c0.same_as(CNum(-1))) {
        ++seen_t2;
        CHECK((*s.c1 * *s.c1 - CNum(2)).is_zero());
        CHECK((s.spec.b2 * s.spec.b2 - CNum(8)).is_zero());
        CHECK(s.spec.b3.same_as(CNum(1)));
      }
    }
    CHECK(seen_t5 == 2);
    CHECK(seen_t2 == 2);
  }

  TEST_CASE("s = 3 solutions verify for k up to 4") {
    for (int k = 0; k <= 4; ++k) {
      auto r = build_l4_s3(k);
      CHECK(r.closure.closure.degree() >= 1);
      for (const auto& s : r.solutions) CHECK(s.verified);
    }
  }

  TEST_CASE("concrete solvers recover the family members") {
    auto fam = build_l4_s1(2, 1);
    for (const auto& s : fam.solutions) {
      auto again = solve_l4_s1(s.spec.b2, s.spec.b3);
      REQUIRE(!again.empty());
      CHECK(std::any_of(again.begin(), again.end(), [&](const auto& x) { return proportional(x.kappa, s.kappa); }));
    }
    auto sols = solve_l4_s3(CNum(2), CNum(Rational(25, 4)));
    REQUIRE(!sols.empty());
    for (const auto& s : sols) CHECK(exact_zero_residual(s));
  }
}

TEST_SUITE("pairs") {
  TEST_CASE("k1 = 1, k2 = 0, c0 = 1") {
    auto p = build_pair_cor45(1, 0, 1);
    CHECK(p.spec.b2.same_as(CNum(1)));
    CHECK(p.spec.b3.same_as(CNum(1)));
    CHECK(proportional(p.f1.kappa, ExpPoly(1) - ez(1, CNum(2))));
    CHECK(p.f1.g == ez(1) - ExpPoly(1));
    CHECK(p.f2.kappa == ExpPoly(1));
    CHECK(p.f2.g == -ez(1) - ExpPoly(1));
    CHECK(exact_zero_residual(p.f1));
    CHECK(exact_zero_residual(p.f2));
    CHECK_FALSE(p.wronskian.is_zero());
  }

  TEST_CASE("k1 = 2, k2 = 1, c0 = -1") {
    auto p = build_pair_cor45(2, 1, -1);
    CHECK(p.spec.b2.same_as(CNum(-1)));
    CHECK(p.spec.b3.same_as(CNum(4)));
    CHECK(p.f1.c.same_as(CNum(-2)));
  }

  TEST_CASE("equal degrees are rejected") { CHECK_THROWS_AS(build_pair_cor45(1, 1, 1), std::invalid_argument); }

  TEST_CASE("round trip through build_l2 and swap symmetry") {
    for (int k1 = 0; k1 <= 5; ++k1)
      for (int k2 = 0; k2 <= 5; ++k2) {
        if (k1 == k2) continue;
        for (int c0 : {1, -1}) {
          auto p = build_pair_cor45(k1, k2, c0);
          CHECK_FALSE(p.f1.kappa.coeff(0).is_zero());
          CHECK_FALSE(p.f2.kappa.coeff(0).is_zero());
          auto sols = build_l2(p.spec.b2, p.spec.b3);
          for (const auto* f : {&p.f1, &p.f2}) {
            CHECK(std::any_of(sols.begin(), sols.end(), [&](const SolutionForm& s) {
              return s.k == f->k && s.c0.same_as(f->c0) && proportional(s.kappa, f->kappa);
            }));
          }
          auto q = build_pair_cor45(k2, k1, -c0);
          CHECK(q.spec.b2.same_as(p.spec.b2));
          CHECK(q.spec.b3.same_as(p.spec.b3));
          CHECK(proportional(q.f1.kappa, p.f2.kappa));
          CHECK(proportional(q.f2.kappa, p.f1.kappa));
        }
      }
  }
}

TEST_SUITE("probe") {
  TEST_CASE("specializes to the dedicated builders") {
    for (const auto& br : general_probe(2, 1, 3)) {
      CHECK(br.mode == "free-t");
      CHECK(normalized_equation_set(br.system.equations) == builder_set(l2_constraints(br.k, br.c0)));
    }
    for (const auto& br : general_probe(4, 1, 3)) {
      if (br.k == 0) continue;
      CHECK(normalized_equation_set(br.system.equations) == builder_set(build_l4_s1(br.k, br.c0).closure));
      CHECK(br.verified.size() == build_l4_s1(br.k, br.c0).solutions.size());
    }
    for (const auto& br : general_probe(4, 3, 3)) {
      CHECK(br.mode == "t");
      CHECK(normalized_equation_set(br.system.equations) == builder_set(build_l4_s3(br.k).closure));
    }
  }

  TEST_CASE("every l = 6 candidate is gated by the verifier") {
    for (int s : {1, 5}) {
      for (const auto& br : general_probe(6, s, 3)) {
        CHECK(br.candidates == static_cast<int>(br.verified.size()) + br.rejected);
        for (const auto& sol : br.verified) CHECK(verify_solution(sol).is_solution);
      }
    }
  }

  TEST_CASE("shape preconditions") {
    CHECK_THROWS_AS(general_probe(3, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(general_probe(6, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(general_probe(4, 1, -1), std::invalid_argument);
  }

  TEST_CASE("generic solver agrees with the dedicated ones") {
    auto fam = build_l4_s1(1, 1);
    for (const auto& s : fam.solutions) CHECK_FALSE(solve_generic(s.spec).empty());
    CHECK(find_solutions(EqSpec{3, 1, CNum(1), CNum(0)}).empty());
    CHECK(solve_generic(EqSpec{2, 1, CNum(1), CNum(1)}).size() == build_l2(CNum(1), CNum(1)).size());
  }
}

TEST_SUITE("coefficient relations") {
  TEST_CASE("multinomial coefficients match brute-force expansion") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 2 + trial % 3;
      std::vector<CNum> c;
      for (int j = 0; j <= 3; ++j) c.push_back(scarce::testing::random_gauss(rng));
      Poly base(c);
      Poly power(1);
      for (int i = 0; i < n; ++i) power *= base;
      for (int k0 = 0; k0 <= 3 * n; ++k0) CHECK(multinomial_coefficient(n, k0, c).same_as(power.coeff(k0)));
    }
  }

  TEST_CASE("n = 2, m = 2 forces c2 = -c1^2 / (2 c0)") {
    auto seq = cj_sequence(2, 2);
    CHECK(seq.ratio[2] == Rational(-1, 2));
    CHECK(seq.t[2] == 1);
    for (int c0 : {1, -1}) {
      CNum c1(Rational(3, 7));
      auto v = seq.values(CNum(c0), c1);
      CHECK(v[2].same_as(-(c1 * c1) / CNum(2 * c0)));
      CHECK(multinomial_coefficient(2, 2, v).is_exact_zero());
    }
  }

  TEST_CASE("n = 3, m = 1 constraints") {
    auto seq = cj_sequence(3, 1);
    CHECK(seq.constraints == std::vector<std::string>{"c0^3 = 1", "3*c0^2*c1 = 1"});
  }

  TEST_CASE("higher C equations vanish") {
    auto seq = cj_sequence(3, 5);
    auto v = seq.values(CNum(1), CNum(Rational(1, 3)));
    for (int k0 = 2; k0 <= 5; ++k0) CHECK(multinomial_coefficient(3, k0, v).is_exact_zero());
  }

  TEST_CASE("admissible alpha") {
    CHECK(alpha_admissible(Rational(1, 2)).m == 0);
    CHECK(alpha_admissible(Rational(1, 2)).admissible);
    CHECK(alpha_admissible(Rational(3, 4)).m == 1);
    CHECK(alpha_admissible(Rational(3, 4)).admissible);
    CHECK(alpha_admissible(Rational(5, 6)).m == 2);
    CHECK(alpha_admissible(Rational(7, 10)).m == 1);
    CHECK_FALSE(alpha_admissible(Rational(7, 10)).admissible);
    CHECK_THROWS_AS(alpha_admissible(Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(alpha_admissible(Rational(0)), std::invalid_argument);
  }

  TEST_CASE("subnormal exponent condition") {
    CHECK(subnormal_exponent_check(CNum(0), CNum(-1), CNum(-1)));
    CHECK(subnormal_exponent_check(CNum(0), CNum(0), CNum(0)));
    CHECK_FALSE(subnormal_exponent_check(CNum(0), CNum(1), CNum(1)));
  }
}
