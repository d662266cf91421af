#ifndef SCARCE_TESTS_SUPPORT_HPP
#define SCARCE_TESTS_SUPPORT_HPP

#include <complex>
#include <random>

#include "scarce/exppoly.hpp"

namespace scarce::testing {

inline Rational random_rational(std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  return Rational(num(rng), den(rng));
}

inline CNum random_gauss(std::mt19937_64& rng, bool complex_part = true) {
  return complex_part ? CNum(random_rational(rng), random_rational(rng)) : CNum(random_rational(rng));
}

// Up to `terms` random exponents in [lo, hi] over the given denominator.
inline ExpPoly random_exppoly(std::mt19937_64& rng, int lo = -3, int hi = 4, int terms = 4, int den = 1) {
  std::uniform_int_distribution<int> ex(lo, hi);
  ExpPoly::Terms t;
  for (int i = 0; i < terms; ++i) t[ex(rng)] = random_gauss(rng);
  return ExpPoly(den, std::move(t));
}

inline std::complex<double> to_cd(const FloatC& z) { return z.to_complex(); }

}  // namespace scarce::testing

#endif
