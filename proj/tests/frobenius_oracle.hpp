#ifndef SCARCE_TESTS_FROBENIUS_ORACLE_HPP
#define SCARCE_TESTS_FROBENIUS_ORACLE_HPP

#include "scarce/frobenius.hpp"

namespace scarce::testing {

// Coefficients of x^{-rho} (x^2 u'' + h u) for u = x^rho sum c_i x^i, formed
// with a series product instead of the solver's recurrence.
inline PowerSeries operator_image(const Poly& h, const CNum& rho, const PowerSeries& c) {
  PowerSeries euler(c.order());
  for (int i = 0; i <= c.order(); ++i) {
    const CNum r = rho + CNum(i);
    euler[i] = r * (r - CNum(1)) * c[i];
  }
  return euler + PowerSeries::from_poly(h, c.order()) * c;
}

// Residual of u2 = d u1 log x + x^{rho2} sum b_i x^i through the order of the series:
// the log x part is d * L[u1]; the rest adds d x^{rho1} (2 x u1' - u1) terms.
inline PowerSeries u2_image(const Poly& h, const FrobeniusPair& fp) {
  PowerSeries out = operator_image(h, fp.rho2, fp.u2);
  if (fp.d == 0) return out;
  for (int i = fp.n0; i <= out.order(); ++i) {
    const CNum r = fp.rho1 + CNum(i - fp.n0);
    out[i] += (CNum(2) * r - CNum(1)) * fp.u1[i - fp.n0];
  }
  return out;
}

inline bool vanishes_through(const PowerSeries& s, int n, double tol = 0) {
  for (int i = 0; i <= n; ++i) {
    if (tol == 0 ? !s[i].is_exact_zero() : !s[i].is_zero(tol)) return false;
  }
  return true;
}

}  // namespace scarce::testing

#endif  // SCARCE_TESTS_FROBENIUS_ORACLE_HPP
