#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "scarce/builder.hpp"
#include "scarce/oscillation.hpp"
#include "support.hpp"

using namespace scarce;

namespace {

constexpr double kPi = std::numbers::pi;

ExpPoly ez(int j, const CNum& a = CNum(1)) { return ExpPoly::monomial(j, a); }

SolutionForm bare_form(const ExpPoly& kappa, const ExpPoly& g = ExpPoly()) {
  SolutionForm s;
  s.kappa = kappa;
  s.g = g;
  return s;
}

// Brute-force n(r) by listing lattice points in double precision.
long enumerate_count(const ZeroLattice& lat, double r) {
  long n = 0;
  const double P = lat.period.convert_to<double>();
  const long M = static_cast<long>(r / P) + 2;
  for (const auto& e : lat.entries) {
    const std::complex<double> b = e.base.to_complex();
    for (long m = -M - static_cast<long>(std::abs(b.imag()) / P); m <= M + static_cast<long>(std::abs(b.imag()) / P);
         ++m)
      if (std::abs(b + std::complex<double>(0, P * m)) < r) n += e.multiplicity;
  }
  return n;
}

std::vector<double> geometric(double lo, double hi, int n) {
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return r;
}

std::vector<SolutionForm> regression_solutions() {
  std::vector<SolutionForm> out;
  for (int k1 = 1; k1 <= 3; ++k1)
    for (int k2 = 0; k2 < k1; ++k2)
      for (int c0 : {1, -1}) {
        auto p = build_pair_cor45(k1, k2, c0);
        out.push_back(p.f1);
        out.push_back(p.f2);
      }
  for (const auto& s : build_l4_s1(1, 1).solutions) out.push_back(s);
  for (const auto& s : build_l4_s3(1).solutions) out.push_back(s);
  return out;
}

double relative_error(std::complex<double> num, std::complex<double> exact) {
  return std::abs(num - exact) / std::abs(exact);
}

}  // namespace

TEST_SUITE("zero lattice") {
  TEST_CASE("single root") {
    auto lat = zeros_of(ExpPoly(1) - ez(1, CNum(2)));
    REQUIRE(lat.entries.size() == 1);
    CHECK(lat.entries[0].multiplicity == 1);
    CHECK(std::abs(lat.entries[0].base.to_complex() - std::complex<double>(-std::log(2.0), 0)) < 1e-15);
    CHECK(std::abs(lat.period.convert_to<double>() - 2 * kPi) < 1e-15);
  }

  TEST_CASE("constant kappa has no zeros and the zero function is rejected") {
    CHECK(zeros_of(ExpPoly(CNum(Rational(3, 2)))).empty());
    CHECK_THROWS_AS(zeros_of(ExpPoly()), std::domain_error);
  }

  TEST_CASE("double root") {
    ExpPoly k = ExpPoly(1) - ez(1);
    auto lat = zeros_of(k * k);
    REQUIRE(lat.entries.size() == 1);
    CHECK(lat.entries[0].multiplicity == 2);
    CHECK(abs(lat.entries[0].base) < Real(1e-30));
  }

  TEST_CASE("strip count equals the exponent span of kappa") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
      ExpPoly k = scarce::testing::random_exppoly(rng, -2, 3, 4, 1 + trial % 2);
      if (k.is_zero()) continue;
      CHECK(zeros_of(k).strip_count() == k.max_exponent() - k.min_exponent());
    }
  }

  TEST_CASE("lattice points are zeros of kappa") {
    auto p = build_pair_cor45(3, 1, -1);
    auto lat = zeros_of(p.f1);
    for (const auto& e : lat.entries)
      for (int m = -2; m <= 2; ++m) {
        FloatC z(e.base.re, e.base.im + lat.period * m);
        CHECK(abs(evaluate(p.f1.kappa, z)) < Real(1e-25));
      }
  }
}

TEST_SUITE("zero counting") {
  TEST_CASE("documented counts") {
    auto lat = zeros_of(ExpPoly(1) - ez(1, CNum(2)));
    CHECK(count_zeros(lat, Real(100)) == 31);
    CHECK(count_zeros(lat, Real(1)) == 1);
    CHECK(count_zeros(ZeroLattice{}, Real(50)) == 0);
  }

  TEST_CASE("agrees with direct enumeration") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> radius(0.5, 300.0);
    for (int trial = 0; trial < 40; ++trial) {
      ExpPoly k = scarce::testing::random_exppoly(rng, -2, 3, 4, 1 + trial % 2);
      if (k.is_zero() || k.is_constant()) continue;
      auto lat = zeros_of(k);
      for (int i = 0; i < 5; ++i) {
        double r = radius(rng);
        CHECK(count_zeros(lat, Real(r)) == enumerate_count(lat, r));
      }
    }
  }

  TEST_CASE("nondecreasing with jumps of the multiplicity") {
    ExpPoly k = (ExpPoly(1) - ez(1, CNum(2))) * (ExpPoly(1) - ez(1, CNum(2))) * (ez(1) + ExpPoly(CNum(5)));
    auto lat = zeros_of(k);
    long prev = 0;
    for (double r = 0.25; r < 60; r += 0.25) {
      long n = count_zeros(lat, Real(r));
      CHECK(n >= prev);
      prev = n;
    }
    // Crossing |z| = ln 2 picks up the double zero.
    CHECK(count_zeros(lat, Real(std::log(2.0) + 1e-6)) - count_zeros(lat, Real(std::log(2.0) - 1e-6)) == 2);
  }

  TEST_CASE("a point on the circle is not inside it") {
    auto lat = zeros_of(ExpPoly(1) - ez(1));
    CHECK(count_zeros(lat, lat.period) == 1);
    CHECK(count_zeros(lat, lat.period + Real(1e-6)) == 3);
  }
}

TEST_SUITE("lambda") {
  const auto radii = geometric(10, 1e4, 24);

  TEST_CASE("single and double root lattices have exponent one") {
    double one = lambda_estimate(zeros_of(ExpPoly(1) - ez(1, CNum(2))), radii);
    CHECK(one == doctest::Approx(1.0).epsilon(0.05));
    double two = lambda_estimate(zeros_of((ExpPoly(1) - ez(1, CNum(2))) * (ExpPoly(1) + ez(1, CNum(3)))), radii);
    CHECK(two == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("zero-free lattice") { CHECK(lambda_estimate(zeros_of(ExpPoly(CNum(7))), radii) == 0.0); }

  TEST_CASE("builder outputs") {
    for (const auto& s : regression_solutions()) {
      double lam = lambda_estimate(zeros_of(s), radii);
      if (s.kappa.is_constant())
        CHECK(lam == 0.0);
      else
        CHECK((lam >= 0.9 && lam <= 1.1));
    }
  }

  TEST_CASE("input checks") {
    CHECK_THROWS_AS(lambda_estimate(ZeroLattice{}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(lambda_estimate(ZeroLattice{}, {4, 3, 2, 1}), std::invalid_argument);
  }
}

TEST_SUITE("argument principle") {
  TEST_CASE("matches the lattice for a simple kappa") {
    auto s = bare_form(ExpPoly(1) - ez(1, CNum(2)), ez(1) + ExpPoly(CNum(Rational(-1, 2))));
    auto lat = zeros_of(s);
    for (double r : {5.0, 10.0, 20.0}) CHECK(argument_count(s, r).count == count_zeros(lat, Real(r)));
  }

  TEST_CASE("constant kappa counts nothing") {
    CHECK(argument_count(bare_form(ExpPoly(CNum(2)), ez(1, CNum(-1))), 10).count == 0);
  }

  TEST_CASE("zero on the contour is an error") {
    auto s = bare_form(ExpPoly(1) - ez(1));
    CHECK_THROWS_AS(argument_count(s, 2 * kPi), ArgumentCountError);
  }

  TEST_CASE("regression solutions") {
    for (const auto& s : regression_solutions()) {
      auto lat = zeros_of(s);
      for (double r : {5.0, 10.0, 20.0}) {
        auto ac = argument_count(s, r);
        CHECK(ac.count == count_zeros(lat, Real(r)));
        CHECK(std::abs(ac.value - static_cast<double>(ac.count)) < 1e-6);
      }
    }
  }
}

TEST_SUITE("sectors") {
  TEST_CASE("p = z") {
    auto d = delta_sectors(1, 0, 1);
    REQUIRE(d.theta.size() == 2);
    CHECK(d.theta[0] == doctest::Approx(-kPi / 2));
    CHECK(d.theta[1] == doctest::Approx(kPi / 2));
    CHECK(d.sign == std::vector<int>{1, -1});
    CHECK(d.delta(0.3) == doctest::Approx(std::cos(0.3)));
  }

  TEST_CASE("p = i z^2") {
    auto d = delta_sectors(0, 1, 2);
    for (double t : {-1.0, 0.2, 0.7, 2.5}) CHECK(d.delta(t) == doctest::Approx(-std::sin(2 * t)));
  }

  TEST_CASE("boundaries are zeros and signs alternate") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
      const double a = u(rng), b = u(rng);
      const int k = 1 + trial % 5;
      auto d = delta_sectors(a, b, k);
      REQUIRE(d.theta.size() == static_cast<std::size_t>(2 * k));
      for (std::size_t j = 0; j < d.theta.size(); ++j) {
        CHECK(std::abs(d.delta(d.theta[j])) < 1e-12 * std::hypot(a, b));
        if (j > 0) CHECK(d.sign[j] == -d.sign[j - 1]);
      }
      CHECK(d.sign.front() == 1);
      // A supplied boundary shifts the labelling.
      auto shifted = delta_sectors(a, b, k, d.theta[1]);
      CHECK(shifted.sign.front() == -1);
    }
    CHECK_THROWS_AS(delta_sectors(1, 0, 1, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(delta_sectors(0, 0, 1), std::invalid_argument);
  }
}

TEST_SUITE("rays") {
  TEST_CASE("constant coefficient reproduces the exponential") {
    for (double theta : {0.0, 0.4, kPi / 2, 2.0, kPi}) {
      auto res = ray_integrate(ExpPoly(1), theta, 5, FloatC(Real(1)), FloatC(Real(1)));
      CHECK(res.method == RayMethod::dopri5);
      for (const auto& s : res.samples) {
        const std::complex<double> exact = std::exp(std::polar(s.r, theta));
        CHECK(relative_error(s.f, exact) < 1e-10);
        CHECK(relative_error(s.fp, exact) < 1e-10);
      }
    }
  }

  TEST_CASE("left ray of (1 + 2e^z) e^{e^z}") {
    EqSpec spec{2, 1, CNum(3), CNum(0)};
    SolutionForm f = bare_form(ExpPoly(1) + ez(1, CNum(2)), ez(1));
    f.spec = spec;
    const FloatC z0;
    RayOptions opts;
    opts.samples = 300;
    auto res = ray_integrate(spec, kPi, 30, f.value(z0), f.derivative(z0), opts);
    const double f_origin = std::abs(f.value(z0).to_complex());
    for (const auto& s : res.samples) {
      const std::complex<double> exact = f.value(FloatC(std::complex<double>(-s.r, 0))).to_complex();
      if (s.r <= 10) CHECK(relative_error(s.f, exact) < 1e-8);
      CHECK(std::abs(s.f) / (1 + s.r) <= f_origin);
    }
  }

  TEST_CASE("subdominant solution along the positive axis") {
    auto p = build_pair_cor45(1, 0, 1);
    // f2 = e^{-e^z - z} decays like exp(-e^r) while the other solution grows.
    const SolutionForm& f2 = p.f2;
    CHECK(f2.kappa.is_constant());
    const FloatC z0;
    auto res = ray_integrate(p.spec, 0.0, 3, f2.value(z0), f2.derivative(z0));
    CHECK(res.method == RayMethod::taylor);
    CHECK(res.bits > working_precision());
    for (const auto& s : res.samples) {
      const std::complex<double> exact = f2.value(FloatC(std::complex<double>(s.r, 0))).to_complex();
      CHECK(relative_error(s.f, exact) < 1e-6);
    }
  }

  TEST_CASE("builder outputs along several rays") {
    for (const auto& sol : regression_solutions()) {
      const FloatC z0;
      for (double theta : {kPi / 2, 2 * kPi / 3, kPi, 0.3}) {
        const double r_max = std::cos(theta) > 0 ? 2.0 : 5.0;
        auto res = ray_integrate(sol.spec, theta, r_max, sol.value(z0), sol.derivative(z0));
        for (const auto& s : res.samples) {
          const std::complex<double> exact = sol.value(FloatC(std::polar(s.r, theta))).to_complex();
          const double mag = std::abs(exact);
          if (mag < 1e-8 || mag > 1e8) continue;
          CHECK(relative_error(s.f, exact) < 1e-6);
        }
      }
    }
  }

  TEST_CASE("explicit taylor agrees with dopri5 on a benign ray") {
    EqSpec spec{2, 1, CNum(1), CNum(1)};
    RayOptions t;
    t.method = RayMethod::taylor;
    auto a = ray_integrate(spec, 2.5, 4, FloatC(Real(1)), FloatC(Real(0)), t);
    auto b = ray_integrate(spec, 2.5, 4, FloatC(Real(1)), FloatC(Real(0)));
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(relative_error(b.samples[i].f, a.samples[i].f) < 1e-8);
  }

  TEST_CASE("runaway growth is reported") {
    RayOptions opts;
    opts.method = RayMethod::dopri5;
    CHECK_THROWS_AS(ray_integrate(ez(2), 0.0, 8, FloatC(Real(1)), FloatC(Real(0)), opts), StepUnderflow);
    CHECK_THROWS_AS(ray_integrate(ez(2), 0.0, -1, FloatC(Real(1)), FloatC(Real(0))), std::invalid_argument);
  }
}
